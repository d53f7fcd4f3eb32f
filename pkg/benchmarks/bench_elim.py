"""Compare the compiled and pure-Python elimination kernels.

Workload: the derivation equation systems of catalog algebras, scaled to
integer rows. Both kernels must return identical results.

    python benchmarks/bench_elim.py [--repeat N]
"""
import argparse
import sys
import timeit
from fractions import Fraction
from math import lcm

from acslie import _elim, catalog
from acslie.lie import derivation_equations

WORKLOAD = ("n4-J1", "n7-canonical", "s-ab", "thm45-2", "h5xR3", "h7xR5", "h9xR5")


def integer_rows(rows):
    out = []
    for r in rows:
        d = lcm(*(Fraction(x).denominator for x in r)) if r else 1
        out.append([int(Fraction(x) * d) for x in r])
    return out


def systems():
    for entry_id in WORKLOAD:
        L, _ = catalog.instantiate(entry_id, catalog.parameter_grid(entry_id, 2)[-1])
        yield entry_id, L.dim, integer_rows(derivation_equations(L)), L.dim * L.dim


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args(argv)
    try:
        from acslie import _elim_c
    except ImportError:
        print("compiled kernel not built; nothing to compare")
        return 1
    print(f"{'algebra':<14}{'dim':>4}{'rows':>7}{'python ms':>12}{'cython ms':>12}{'speedup':>9}")
    total_py = total_c = 0.0
    for name, dim, rows, ncols in systems():
        if _elim.int_rref(rows, ncols) != _elim_c.int_rref(rows, ncols):
            print(f"{name}: kernels disagree")
            return 1
        t_py = min(timeit.repeat(lambda: _elim.int_rref(rows, ncols), number=1, repeat=args.repeat))
        t_c = min(timeit.repeat(lambda: _elim_c.int_rref(rows, ncols), number=1, repeat=args.repeat))
        total_py += t_py
        total_c += t_c
        print(f"{name:<14}{dim:>4}{len(rows):>7}{t_py * 1e3:>12.2f}{t_c * 1e3:>12.2f}{t_py / t_c:>8.1f}x")
    print(f"{'total':<25}{total_py * 1e3:>12.2f}{total_c * 1e3:>12.2f}{total_py / total_c:>8.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
