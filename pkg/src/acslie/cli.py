"""Command-line interface: ``acslie <command> ...`` or ``python -m acslie``.

Exit codes: 0 when every check passes, 1 when a mathematical check fails,
2 for unreadable input or bad usage.
"""
from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Optional

from acslie import catalog, verify
from acslie.affalg import aff_of, check_assoc, has_unit, invariants, square_subspace
from acslie.cstruct import (check_structure, gJ_prime, one_zero_subalgebra, optional_signature,
                            pair_derivation_space)
from acslie.equivalence import (CERTIFICATE_FIELDS, ORBIT_ENTRIES, canonicalize, fingerprint,
                                orbit_invariant)
from acslie.files import (FileFormatError, algebra_to_json, read_algebra, read_assoc, read_structure,
                          structure_to_json, write_json)
from acslie.lie import (center, derivation_space, derived_series, is_nilpotent, is_solvable,
                        is_unimodular, jacobi_violations, lower_central_series, nilpotency_class)
from acslie.linalg import Mat, format_rational, kernel_basis, parse_rational

OK, FAILED, USAGE = 0, 1, 2


class UsageError(Exception):
    pass


class Outcome:
    """Collected report: ``data`` for --format json, ``lines`` for text."""

    def __init__(self, command: str):
        self.data = {"command": command}
        self.lines = []
        self.code = OK

    def say(self, line: str = "") -> None:
        self.lines.append(line)

    def fail(self) -> None:
        self.code = FAILED


def _jsonable(x):
    if isinstance(x, Fraction):
        return format_rational(x)
    if isinstance(x, (tuple, set, frozenset)):
        return list(x)
    raise TypeError(f"cannot serialize {type(x).__name__}")


def _vec(v) -> str:
    return "(" + ", ".join(format_rational(x) for x in v) + ")"


def _load_pair(alg_path, acs_path):
    L = read_algebra(alg_path, check=False)
    J = read_structure(acs_path) if acs_path else None
    if J is not None and J.J.rows != L.dim:
        raise UsageError(f"structure has dimension {J.J.rows}, algebra has dimension {L.dim}")
    return L, J


def _report_jacobi(out: Outcome, L) -> bool:
    bad = jacobi_violations(L)
    out.data["jacobi"] = not bad
    if bad:
        out.data["jacobi_violations"] = [{"triple": list(t[:3]), "residual": list(t[3])} for t in bad]
        out.say(f"jacobi: FAILED at {len(bad)} triple(s)")
        for i, j, k, res in bad:
            out.say(f"  ({i}, {j}, {k}) residual {_vec(res)}")
        out.fail()
    else:
        out.say("jacobi: ok")
    return not bad


# ---------------------------------------------------------------- verify-catalog

def cmd_verify_catalog(entry_id: Optional[str], grid: int) -> Outcome:
    out = Outcome("verify-catalog")
    try:
        selected = catalog.select(entry_id)
    except catalog.UnknownEntry:
        raise UsageError(f"unknown catalog id {entry_id!r}; known ids: {', '.join(catalog.ids())}") from None
    if grid < 1:
        raise UsageError("--grid must be positive")
    entries = []
    for e in sorted(selected, key=lambda e: e.id):
        reports = verify.check_entry(e.id, grid)
        ok = all(r.ok for r in reports)
        if not ok:
            out.fail()
        entries.append({
            "id": e.id, "anchor": e.anchor, "class": e.structure_class, "ok": ok,
            "instances": [{"params": r.params, "ok": r.ok,
                           "checks": [{"name": c.name, "ok": c.ok, "detail": c.detail} for c in r.checks]}
                          for r in reports],
        })
        names = ", ".join(c.name for c in reports[0].checks)
        out.say(f"{e.id}: {'ok' if ok else 'FAILED'} ({len(reports)} instance(s); {names})")
        out.say(f"  anchor: {e.anchor}")
        for r in reports:
            if not r.ok:
                out.say("  " + verify.describe(r))
    passed = sum(x["ok"] for x in entries)
    out.data["entries"] = entries
    out.data["summary"] = {"entries": len(entries), "passed": passed}
    out.say(f"{passed}/{len(entries)} entries passed")
    return out


# ---------------------------------------------------------------- check

def _series_block(out: Outcome, L) -> None:
    ds = [s.dim for s in derived_series(L)]
    lcs = [s.dim for s in lower_central_series(L)]
    out.data.update({"derived_series": ds, "lower_central_series": lcs, "center": center(L).dim,
                     "nilpotent": is_nilpotent(L), "solvable": is_solvable(L),
                     "nilpotency_class": nilpotency_class(L), "unimodular": is_unimodular(L)})
    out.say(f"derived series dims: {ds}")
    out.say(f"lower central series dims: {lcs}")
    out.say(f"nilpotent: {str(is_nilpotent(L)).lower()}"
            + (f" (class {nilpotency_class(L)})" if is_nilpotent(L) else ""))
    out.say(f"solvable: {str(is_solvable(L)).lower()}")
    out.say(f"center dim: {center(L).dim}")
    out.say(f"unimodular: {str(is_unimodular(L)).lower()}")


def cmd_check(alg_path, acs_path=None) -> Outcome:
    out = Outcome("check")
    L, J = _load_pair(alg_path, acs_path)
    out.data["dim"] = L.dim
    out.say(f"dim: {L.dim}")
    if not _report_jacobi(out, L):
        return out
    _series_block(out, L)
    if J is None:
        return out
    sr = check_structure(L, J)
    gJ, proper = gJ_prime(L, J)
    try:
        sig = optional_signature(L, J)
    except ValueError:
        sig = None
    oz = one_zero_subalgebra(L, J)
    out.data["structure"] = {
        "integrable": sr.integrable, "abelian": sr.abelian, "bi_invariant": sr.bi_invariant,
        "witnesses": {k: [list(w) for w in v] for k, v in sr.witnesses.items()},
        "one_zero_abelian": oz.is_abelian_subalgebra,
        "gJ_prime_dim": gJ.dim, "proper": proper,
        "b_signature": None if sig is None else list(sig),
    }
    for name, flag in (("integrable", sr.integrable), ("abelian", sr.abelian), ("bi-invariant", sr.bi_invariant)):
        out.say(f"{name}: {str(flag).lower()}")
    for name, wit in sr.witnesses.items():
        out.say(f"  {name} fails on pairs {', '.join(str(w) for w in wit[:6])}")
    out.say(f"g^(1,0) abelian subalgebra: {str(oz.is_abelian_subalgebra).lower()}")
    out.say(f"g'_J dim: {gJ.dim}")
    out.say(f"proper: {str(proper).lower()}")
    if sig is not None:
        out.say(f"B signature: {sig}")
    return out


# ---------------------------------------------------------------- classify

@lru_cache(maxsize=None)
def reference_certificates(entry_id: str, points: int = 3) -> tuple:
    """Certificate-grade fingerprints of the entry at its first grid points."""
    found = []
    for p in catalog.parameter_grid(entry_id, points):
        cert = fingerprint(*catalog.instantiate(entry_id, p)).certificate()
        if cert not in found:
            found.append(cert)
    return tuple(found)


def matching_entries(fp) -> list:
    cert = fp.certificate()
    return [e.id for e in catalog.entries()
            if e.structure_class == catalog.ABELIAN and e.dim == fp.dim and cert in reference_certificates(e.id)]


def recognize_raw_form(L, J) -> list:
    """Orbit families whose printed (s, t)-form is literally (L, J), with the orbit data."""
    found = []
    for entry_id in ORBIT_ENTRIES:
        e = catalog.get(entry_id)
        if L.dim != e.dim:
            continue
        s, t = J.J[4, 4], J.J[5, 4]
        params = {"s": s, "t": t}
        try:
            e.check_domain(params)
        except catalog.DomainError:
            continue
        L0, J0 = e.build(params)
        if L0.brackets == L.brackets and J0.J == J.J:
            found.append({"entry": entry_id, "params": params,
                          "invariant": orbit_invariant(entry_id, params).value,
                          "canonical": canonicalize(entry_id, params)})
    return found


def cmd_classify(alg_path, acs_path) -> Outcome:
    out = Outcome("classify")
    L, J = _load_pair(alg_path, acs_path)
    if not _report_jacobi(out, L):
        return out
    sr = check_structure(L, J)
    out.data["abelian"] = sr.abelian
    if not sr.abelian:
        out.say("J is not abelian: " + ", ".join(str(w) for w in sr.witnesses["abelian"][:6]))
        out.fail()
        return out
    fp = fingerprint(L, J)
    out.data["fingerprint"] = fp.as_dict()
    out.say("fingerprint: " + ", ".join(f"{k}={v}" for k, v in fp.as_dict().items()))
    hits = matching_entries(fp)
    named = [h for h in hits if h not in catalog.PROOF_FAMILIES]
    families = [h for h in hits if h in catalog.PROOF_FAMILIES]
    out.data["matches"] = named
    out.data["family_matches"] = families
    out.say(f"matches ({', '.join(CERTIFICATE_FIELDS)} agree): {', '.join(named) if named else 'none'}")
    if families:
        out.say(f"also realised by families: {', '.join(families)}")
    if len(named) > 1:
        out.say("note: a fingerprint match is necessary for isomorphism, not sufficient")
    raw = recognize_raw_form(L, J)
    out.data["orbit"] = raw
    for r in raw:
        inv = ", ".join(format_rational(v) if isinstance(v, Fraction) else str(v) for v in r["invariant"])
        canon = ", ".join(f"{k}={format_rational(v) if isinstance(v, Fraction) else v}" for k, v in r["canonical"].items())
        params = ", ".join(f"{k}={format_rational(v)}" for k, v in r["params"].items())
        out.say(f"orbit: {r['entry']} at {params}; invariant ({inv}); canonical {canon}")
        if r["entry"] in ("n4-raw-1", "n4-raw-2", "n7-raw"):
            out.say(f"  |c| = {format_rational(abs(r['invariant'][-1]))}")
    return out


# ---------------------------------------------------------------- derivations, series

def _commuting_with(derivs, J: Mat) -> int:
    if not derivs:
        return 0
    n = J.rows
    cols = [[(D @ J - J @ D)[a, b] for a in range(n) for b in range(n)] for D in derivs]
    return kernel_basis(Mat.from_columns(cols, n * n)).dim


def cmd_derivations(alg_path, acs_path=None, show_basis=False) -> Outcome:
    out = Outcome("derivations")
    L, J = _load_pair(alg_path, acs_path)
    if not _report_jacobi(out, L):
        return out
    D = derivation_space(L)
    out.data["der"] = len(D)
    out.say(f"dim Der: {len(D)}")
    if show_basis:
        out.data["basis"] = [[[format_rational(x) for x in row] for row in M.tolists()] for M in D]
        for k, M in enumerate(D, 1):
            out.say(f"  D{k}: " + "; ".join(" ".join(format_rational(x) for x in row) for row in M.tolists()))
    if J is not None:
        pair = len(pair_derivation_space(L, J))
        comm = _commuting_with(D, J.J)
        out.data.update({"pair_der": pair, "j_commuting_der": comm})
        out.say(f"dim {{D : D, DJ derivations}}: {pair}")
        out.say(f"dim {{D in Der : DJ = JD}}: {comm}")
    return out


def cmd_series(alg_path) -> Outcome:
    out = Outcome("series")
    L, _ = _load_pair(alg_path, None)
    if not _report_jacobi(out, L):
        return out
    _series_block(out, L)
    return out


# ---------------------------------------------------------------- affalg

def cmd_affalg(assoc_path, out_dir=None) -> Outcome:
    out = Outcome("affalg")
    A = read_assoc(assoc_path)
    bad = check_assoc(A)
    out.data["associative"] = not bad
    if bad:
        out.say(f"associativity: FAILED at {len(bad)} triple(s), first {tuple(i + 1 for i in bad[0])}")
        out.fail()
        return out
    out.say("associativity: ok")
    L, J = aff_of(A)
    jac = not jacobi_violations(L)
    sr = check_structure(L, J)
    gJ, proper = gJ_prime(L, J)
    inv = invariants(A)
    square_is_all = square_subspace(A).dim == A.dim
    out.data.update({"aff_dim": L.dim, "jacobi": jac, "abelian": sr.abelian, "proper": proper,
                     "square_is_all": square_is_all, "unital": has_unit(A),
                     "invariants": dict(zip(("nilradical", "annihilator", "square", "nilradical_square",
                                             "trace_inertia"), inv.as_tuple()))})
    out.say(f"aff(A): dim {L.dim}, jacobi {'ok' if jac else 'FAILED'}")
    out.say(f"J abelian: {str(sr.abelian).lower()}")
    out.say(f"proper: {str(proper).lower()} (A^2 = A: {str(square_is_all).lower()})")
    out.say(f"unital: {str(has_unit(A)).lower()}")
    out.say(f"invariants (nilradical, annihilator, A^2, N^2, trace inertia): {inv.as_tuple()}")
    if not (jac and sr.abelian and proper == (not square_is_all)):
        out.fail()
    if out_dir is not None:
        d = Path(out_dir)
        d.mkdir(parents=True, exist_ok=True)
        write_json(d / "aff_algebra.json", algebra_to_json(L))
        write_json(d / "aff_j.json", structure_to_json(J))
        out.say(f"wrote {d / 'aff_algebra.json'} and {d / 'aff_j.json'}")
    return out


# ---------------------------------------------------------------- export

def _parse_params(text: Optional[str]) -> dict:
    params = {}
    if not text:
        return params
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep:
            raise UsageError(f"parameter {item!r} is not of the form name=value")
        try:
            params[key.strip()] = parse_rational(value.strip())
        except (ValueError, ZeroDivisionError):
            raise UsageError(f"cannot parse {value!r} as a rational") from None
    return params


def export_entry(entry_id: str, params: dict, out_dir) -> tuple:
    """Write <id>.alg.json and <id>.acs.json; returns the two paths."""
    L, J = catalog.instantiate(entry_id, params)
    d = Path(out_dir)
    d.mkdir(parents=True, exist_ok=True)
    alg, acs = d / f"{entry_id}.alg.json", d / f"{entry_id}.acs.json"
    write_json(alg, algebra_to_json(L))
    write_json(acs, structure_to_json(J))
    return alg, acs


def cmd_export(entry_id, params_text, out_dir) -> Outcome:
    out = Outcome("export")
    try:
        e = catalog.get(entry_id)
    except catalog.UnknownEntry:
        raise UsageError(f"unknown catalog id {entry_id!r}") from None
    params = _parse_params(params_text)
    if not params and e.params:
        params = catalog.parameter_grid(e.id, 1)[0]
    try:
        alg, acs = export_entry(e.id, params, out_dir)
    except catalog.DomainError as exc:
        raise UsageError(str(exc)) from None
    out.data.update({"id": e.id, "params": params, "algebra": str(alg), "structure": str(acs)})
    out.say(f"wrote {alg} and {acs}")
    return out


# ---------------------------------------------------------------- entry point

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(USAGE)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="acslie", description=__doc__.splitlines()[0])
    p.add_argument("--format", choices=("text", "json"), default="text")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    v = sub.add_parser("verify-catalog", help="run the invariant checks on catalog entries")
    v.add_argument("--id", dest="entry_id")
    v.add_argument("--grid", type=int, default=10, help="parameter points per family (default 10)")

    c = sub.add_parser("check", help="Jacobi, series and structure report")
    c.add_argument("algebra")
    c.add_argument("--j", dest="acs")

    k = sub.add_parser("classify", help="compare the fingerprint with the catalog")
    k.add_argument("algebra")
    k.add_argument("--j", dest="acs", required=True)

    d = sub.add_parser("derivations", help="dimension of Der and of J-compatible derivations")
    d.add_argument("algebra")
    d.add_argument("--with-j", dest="acs")
    d.add_argument("--basis", action="store_true", help="print a basis of Der")

    s = sub.add_parser("series", help="derived and lower central series")
    s.add_argument("algebra")

    a = sub.add_parser("affalg", help="build aff(A) from a commutative associative algebra and check it")
    a.add_argument("assoc")
    a.add_argument("--out", help="directory for the aff(A) algebra and structure files")

    x = sub.add_parser("export", help="write a catalog entry as algebra and structure files")
    x.add_argument("entry_id")
    x.add_argument("--params", help="comma separated name=value, e.g. s=0,t=1/2")
    x.add_argument("--out", required=True)
    return p


def run(args) -> Outcome:
    if args.command == "verify-catalog":
        return cmd_verify_catalog(args.entry_id, args.grid)
    if args.command == "check":
        return cmd_check(args.algebra, args.acs)
    if args.command == "classify":
        return cmd_classify(args.algebra, args.acs)
    if args.command == "derivations":
        return cmd_derivations(args.algebra, args.acs, args.basis)
    if args.command == "series":
        return cmd_series(args.algebra)
    if args.command == "affalg":
        return cmd_affalg(args.assoc, args.out)
    return cmd_export(args.entry_id, args.params, args.out)


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
    except SystemExit as exc:
        return USAGE if exc.code not in (0, None) else OK
    try:
        out = run(args)
    except (FileFormatError, UsageError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE
    if args.format == "json":
        out.data["exit_code"] = out.code
        print(json.dumps(out.data, default=_jsonable, indent=1))
    else:
        print("\n".join(out.lines))
    return out.code
