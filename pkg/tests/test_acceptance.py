"""End-to-end acceptance checks, one function per criterion.

Each criterion returns ``(ok, detail)``. Under pytest every criterion is a test
and the terminal summary prints one PASS/FAIL line per criterion. Running this
file directly prints the same lines.
"""
from __future__ import annotations

import random
import sys
import time
from fractions import Fraction
from functools import lru_cache

import pytest

from acslie import affalg, catalog, verify
from acslie.cstruct import (
    check_structure,
    commutator_derivation_relation,
    bform_signature,
    gJ_prime,
    gJ_series,
    pair_derivation_space,
    restrict_structure,
    restricted_bracket_vanishes,
)
from acslie.equivalence import (
    CERTIFICATE_FIELDS,
    act,
    c_value,
    circle_equation_holds,
    fingerprint,
    group_element,
    nonproper_to_j2,
    orbit_invariant,
    orbit_membership_check,
    recognize_affc_j1,
    sample_elements,
    separating_fields,
)
from acslie.equivalence import _element, _family
from acslie.lie import is_nilpotent, is_solvable, is_unimodular, jacobi_violations, restrict, transport

F = Fraction
GRID = 100
AGREEMENT = "abelian flag agrees with g^{1,0}"

# Filled as criteria run; read by the terminal summary hook in conftest.
RESULTS: dict = {}


def _first_failures(items, k=3):
    return "; ".join(str(x) for x in items[:k])


@lru_cache(maxsize=None)
def _catalog_sweep():
    """Every entry at every grid point, without fingerprints (shared by the soundness and oracle criteria)."""
    reports = []
    for e in catalog.entries():
        reports.extend(verify.check_entry(e.id, GRID, with_fingerprint=False))
    return reports


def catalog_soundness():
    reports = _catalog_sweep()
    bad = [verify.describe(r) for r in reports
           if any(not c.ok for c in r.checks if c.name != AGREEMENT)]
    return not bad, f"{len(reports)} instantiations, {len(bad)} failures {_first_failures(bad)}".rstrip()


def heisenberg_signatures():
    bad, n_checked = [], 0
    for n in range(1, 5):
        for k in range(3):
            entry = f"h{2 * n + 1}xR{2 * k + 1}"
            for r in range(n // 2 + 1):
                sig = bform_signature(*catalog.instantiate(entry, {"r": r}))
                n_checked += 1
                if sig != (2 * r, 2 * (n - r)):
                    bad.append((entry, r, sig))
    return not bad, f"{n_checked} signatures, mismatches {bad}" if bad else f"{n_checked} signatures"


def _ab_pairs(count):
    out = []
    for p in catalog.parameter_grid("affC-plus", 4 * count):
        if p["a"] ** 2 + p["b"] ** 2 == 0:
            continue
        out.append(p)
        if len(out) == count:
            break
    return out


def affc_intertwiners():
    _, J1 = catalog.instantiate("affC-J1")
    J1 = J1.J
    bad = []
    pairs = _ab_pairs(20)
    for p in pairs:
        a, b = p["a"], p["b"]
        phi = group_element("affC-plus", "phi", p)
        psi = group_element("affC-minus", "psi", p)
        if phi @ catalog.j_plus(a, b) != J1 @ phi:
            bad.append(("phi", a, b))
        if psi @ catalog.j_minus(a, b) != J1 @ psi:
            bad.append(("psi", a, b))
    quads = catalog.parameter_grid("affC-nonproper", 20)
    for q in quads:
        rep = nonproper_to_j2(q["a"], q["b"], q["p"], q["q"])
        if not (rep.ok and rep.bracket_matches):
            bad.append(("pipeline", tuple(q.values())))
    return (not bad and len(pairs) == 20 and len(quads) == 20,
            f"{len(pairs)} (a,b) pairs, {len(quads)} pipeline points, failures {bad[:3]}")


def sphere_structures():
    pts = catalog.parameter_grid("affC-sphere", 10)
    bad = []
    for p in pts:
        L, J = catalog.instantiate("affC-sphere", p)
        if not check_structure(L, J).abelian:
            bad.append(tuple(p.values()))
    J1 = catalog.instantiate("affC-J1")[1].J
    J2 = catalog.instantiate("affC-J2")[1].J
    anti = J1 @ J2 == -(J2 @ J1)
    return not bad and anti and len(pts) == 10, f"{len(pts)} points, non-abelian {bad}, J1J2 = -J2J1: {anti}"


def _random_cdxy(rng, count):
    out = []
    while len(out) < count:
        c, d, x, y = (F(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4))
        if c * c + d * d:
            out.append((c, d, x, y))
    return out


def affc_recognition():
    pts = _random_cdxy(random.Random(20240607), 20)
    bad = [p for p in pts if not recognize_affc_j1(*p).ok]
    return not bad, f"{len(pts)} random (c,d,x,y), failures {bad[:3]}"


def nilpotent_descent():
    checked, bad = 0, []
    for e in catalog.entries():
        for p in catalog.parameter_grid(e.id, GRID):
            L, J = catalog.instantiate(e.id, p)
            if not is_nilpotent(L):
                continue
            dims, strict = gJ_series(L, J)
            checked += 1
            if not strict:
                bad.append((e.id, p, dims))
    return not bad and checked > 0, f"{checked} nilpotent instantiations, failures {bad[:3]}"


def nilpotent_gj_abelian():
    applied, bad = 0, []
    for e in catalog.entries():
        if e.dim != 6:
            continue
        for p in catalog.parameter_grid(e.id, 10):
            L, J = catalog.instantiate(e.id, p)
            if not is_solvable(L):
                continue
            gJ, _ = gJ_prime(L, J)
            if not is_nilpotent(restrict(L, gJ)):
                continue
            applied += 1
            if not restricted_bracket_vanishes(L, gJ):
                bad.append((e.id, p))
    return not bad and applied > 0, f"{applied} instantiations with nilpotent g'_J, failures {bad[:3]}"


def _orbit_samples(entry, points, count):
    bad, images = [], 0
    samples = sample_elements(entry, count)
    fam = _family(entry)
    for p in points:
        inv = orbit_invariant(entry, p)
        c = c_value(p)
        for tag, gp in samples:
            img = act(entry, _element(fam, tag, gp), p)
            if img is None:
                continue
            images += 1
            c_img = c_value(img)
            same_c = c_img == c if entry == "n7-raw" else abs(c_img) == abs(c)
            if not (same_c and orbit_invariant(entry, img) == inv and circle_equation_holds(c_img, img)):
                bad.append((entry, p, tag, gp))
    return bad, images


def orbit_invariants():
    bad = []
    target = {"s": F(0), "t": F(1)}
    n5_points = catalog.parameter_grid("n5-raw", 20)
    for p in n5_points:
        g = group_element("n5-raw", "phi", p)
        if act("n5-raw", g, p) != target:
            bad.append(("n5", p))
    images = 0
    for entry in ("n7-raw", "n4-raw-1", "n4-raw-2"):
        b, k = _orbit_samples(entry, catalog.parameter_grid(entry, 10), 40)
        bad.extend(b)
        images += k
    plus, minus = {"s": 0, "t": 1}, {"s": 0, "t": -1}
    fixed_ok = not orbit_membership_check("n7-raw", plus, minus).connected
    fam = _family("n7-raw")
    for tag, gp in sample_elements("n7-raw", 200):
        g = _element(fam, tag, gp)
        for src, dst in ((plus, minus), (minus, plus)):
            if act("n7-raw", g, src) == {k: F(v) for k, v in dst.items()}:
                fixed_ok = False
    ok = not bad and fixed_ok and images > 0 and len(n5_points) == 20
    return ok, f"{len(n5_points)} n5 points, {images} sampled images, (0,+-1) separated: {fixed_ok}, failures {bad[:3]}"


def pair_derivations():
    dims = {}
    for entry, want in (("thm42-1", 6), ("thm42-3", 4), ("thm42-4", 4)):
        L, J = catalog.instantiate(entry)
        gJ, _ = gJ_prime(L, J)
        dims[entry] = (len(pair_derivation_space(*restrict_structure(L, J, gJ))), want)
    for entry in ("affC-J1", "affC-J2"):
        dims[entry] = (len(pair_derivation_space(*catalog.instantiate(entry))), 4)
    wrong = {k: v for k, v in dims.items() if v[0] != v[1]}
    applied, bad = 0, []
    for e in catalog.entries():
        if e.dim != 6 or e.structure_class != catalog.ABELIAN:
            continue
        for p in catalog.parameter_grid(e.id, 10):
            L, J = catalog.instantiate(e.id, p)
            if gJ_prime(L, J)[0].dim != L.dim - 2:
                continue
            applied += 1
            if not commutator_derivation_relation(L, J)[0]:
                bad.append((e.id, p))
    got = ", ".join(f"{k}={v[0]}" for k, v in dims.items())
    return not wrong and not bad and applied > 0, f"{got}; relation on {applied} instantiations, failures {bad[:3]}"


def aff_tables():
    bad = []
    for name in sorted(affalg.ASSOC_TABLES):
        A = affalg.assoc_algebra(name)
        L, J = affalg.aff_of(A)
        target, Jt = catalog.instantiate(affalg.CATALOG_IDS[name])
        P = affalg.relabeling_matrix(name)
        if transport(L, P) != target or P @ J.J != Jt.J @ P:
            bad.append((name, "table"))
        if affalg.square_subspace(A).dim != A.dim:
            bad.append((name, "A^2"))
        if jacobi_violations(L):
            bad.append((name, "jacobi"))
        if not check_structure(L, J).abelian:
            bad.append((name, "abelian"))
    return not bad, f"A1..A5, failures {bad}"


UNIMODULAR_TAGS = frozenset({"n1", "n2", "n3", "n4", "n5", "n6", "n7", "s(-1,0)", "R6"})


def unimodular_exactly():
    bad, checked = [], 0
    for e in catalog.entries():
        if e.dim != 6:
            continue
        for p in catalog.parameter_grid(e.id, 10):
            L, _ = catalog.instantiate(e.id, p)
            if not is_solvable(L):
                continue
            checked += 1
            tag = e.algebra_tag(p)
            if is_unimodular(L) != (tag in UNIMODULAR_TAGS):
                bad.append((e.id, tag))
    return not bad, f"{checked} instantiations, mismatches {bad[:3]}"


def oracle_agreement():
    reports = _catalog_sweep()
    bad = [verify.describe(r) for r in reports for c in r.checks if c.name == AGREEMENT and not c.ok]
    return not bad, f"{len(reports)} instantiations, {len(bad)} disagreements {_first_failures(bad)}".rstrip()


def _pairwise_separated(ids):
    fps = {i: fingerprint(*catalog.instantiate(i)) for i in ids}
    bad = []
    for i, a in enumerate(ids):
        for b in ids[i + 1:]:
            fields = separating_fields(fps[a], fps[b])
            if not fields or not set(fields) <= set(CERTIFICATE_FIELDS):
                bad.append((a, b))
    return bad


def distinguishing_power():
    four = ["g1", "g2", "g3", "g4", "g5", "affC-J1", "affC-J2"]
    extra = ["affC-J1", "affC-J2", "n2-plus", "n2-minus"]
    bad = _pairwise_separated(four) + _pairwise_separated(extra)
    return not bad, f"{len(four)} + {len(extra)} structures, unseparated {bad}"


CRITERIA = [
    ("AC1", "catalog soundness", catalog_soundness),
    ("AC2", "Heisenberg B-signatures", heisenberg_signatures),
    ("AC3", "aff(C) intertwiners and non-proper pipeline", affc_intertwiners),
    ("AC4", "sphere of structures on aff(C)", sphere_structures),
    ("AC5", "recognition of (aff(C), J1)", affc_recognition),
    ("AC6", "strict descent of g^i_J", nilpotent_descent),
    ("AC7", "nilpotent g'_J is abelian", nilpotent_gj_abelian),
    ("AC8", "orbit invariants and canonical forms", orbit_invariants),
    ("AC9", "pair derivation spaces and commutator relation", pair_derivations),
    ("AC10", "aff(A) for the five algebras", aff_tables),
    ("AC11", "unimodular six-dimensional algebras", unimodular_exactly),
    ("AC12", "abelian flag agrees with g^{1,0}", oracle_agreement),
    ("AC13", "fingerprints separate the small lists", distinguishing_power),
]


def run_criterion(key, title, fn):
    start = time.perf_counter()
    try:
        ok, detail = fn()
    except Exception as exc:  # a crash is a failure of the criterion, reported like one
        ok, detail = False, f"error: {exc!r}"
    RESULTS[key] = (ok, title, detail, time.perf_counter() - start)
    return ok, detail


def summary_lines():
    lines = []
    for key, _, _ in CRITERIA:
        if key in RESULTS:
            ok, title, detail, secs = RESULTS[key]
            lines.append(f"{key:<5} {'PASS' if ok else 'FAIL'}  {title} ({secs:.1f}s): {detail}")
    return lines


@pytest.mark.parametrize("key,title,fn", CRITERIA, ids=[c[0] for c in CRITERIA])
def test_criterion(key, title, fn):
    ok, detail = run_criterion(key, title, fn)
    assert ok, detail


if __name__ == "__main__":
    for crit in CRITERIA:
        run_criterion(*crit)
        print(summary_lines()[-1], flush=True)
    sys.exit(0 if all(v[0] for v in RESULTS.values()) else 1)
