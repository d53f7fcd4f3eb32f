from fractions import Fraction
from functools import lru_cache

from hypothesis import HealthCheck, settings
from hypothesis import strategies as st

settings.register_profile("default", max_examples=40, deadline=None,
                          suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")

small_rationals = st.fractions(min_value=-5, max_value=5, max_denominator=6)
small_ints = st.integers(min_value=-6, max_value=6)


def F(x, y=1):
    return Fraction(x, y)


@lru_cache(maxsize=None)
def _fingerprint(entry, items):
    from acslie import catalog
    from acslie.equivalence import fingerprint
    return fingerprint(*catalog.instantiate(entry, dict(items)))


def cached_fingerprint(entry, params=None):
    """Fingerprints are shared across test modules; each instantiation is computed once per session."""
    return _fingerprint(entry, tuple(sorted((params or {}).items())))


def pytest_terminal_summary(terminalreporter):
    mod = __import__("sys").modules.get("test_acceptance") or __import__("sys").modules.get("tests.test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for line in mod.summary_lines():
        terminalreporter.write_line(line)
