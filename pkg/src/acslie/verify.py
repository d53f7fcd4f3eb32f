"""Per-instance catalog checks shared by the command line and the test suite."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Mapping, Optional

from acslie import catalog
from acslie.cstruct import center_is_j_stable, check_structure, one_zero_subalgebra
from acslie.equivalence import fingerprint
from acslie.lie import derived_series, jacobi_violations


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class InstanceReport:
    entry: str
    params: dict
    anchor: str
    checks: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def failures(self) -> list:
        return [c for c in self.checks if not c.ok]


def _fmt_params(params: Mapping) -> str:
    return ", ".join(f"{k}={v}" for k, v in params.items())


def check_instance(entry_id: str, params: Optional[Mapping] = None, with_fingerprint: bool = True) -> InstanceReport:
    e = catalog.get(entry_id)
    params = dict(params or {})
    L, J = catalog.instantiate(e.id, params)
    rep = InstanceReport(e.id, params, e.anchor)
    add = rep.checks.append

    bad = jacobi_violations(L)
    add(Check("jacobi", not bad, f"violations at {bad[:3]}" if bad else ""))
    sr = check_structure(L, J)
    add(Check("integrable", sr.integrable, str(sr.witnesses.get("integrable", ""))))
    if e.structure_class == catalog.BI_INVARIANT:
        add(Check("bi-invariant", sr.bi_invariant, str(sr.witnesses.get("bi_invariant", ""))))
    else:
        add(Check("abelian", sr.abelian, str(sr.witnesses.get("abelian", ""))))
    oz = one_zero_subalgebra(L, J)
    add(Check("abelian flag agrees with g^{1,0}", oz.is_abelian_subalgebra == sr.abelian,
              f"real identity {sr.abelian}, g^(1,0) {oz.is_abelian_subalgebra}"))
    ds = derived_series(L)
    two_step = len(ds) < 3 or ds[2].dim == 0
    add(Check("[g', g'] = 0", two_step, f"derived dims {[s.dim for s in ds]}"))
    add(Check("centre J-stable", center_is_j_stable(L, J)))
    if with_fingerprint:
        fp = fingerprint(L, J).as_dict()
        diffs = [f"{k}: expected {v}, got {fp[k]}" for k, v in e.expected_at(params).items() if fp[k] != v]
        add(Check("fingerprint", not diffs, "; ".join(diffs)))
    return rep


def check_entry(entry_id: str, grid: int = 100, with_fingerprint: bool = True) -> list:
    return [check_instance(entry_id, p, with_fingerprint) for p in catalog.parameter_grid(entry_id, grid)]


def describe(rep: InstanceReport) -> str:
    head = rep.entry + (f" [{_fmt_params(rep.params)}]" if rep.params else "")
    status = "ok" if rep.ok else "FAIL " + "; ".join(f"{c.name} ({c.detail})" for c in rep.failures())
    return f"{head}: {status}"
