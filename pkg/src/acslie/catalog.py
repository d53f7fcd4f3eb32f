"""Parameterized (Lie algebra, complex structure) families with expected invariants.

Every entry builds a pair from exact rational parameters. ``expected`` holds
fingerprint values; a value may be a callable of the parameter dict when it
legitimately varies across the family, and fields named in ``param_dependent``
are not compared at all.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import count
from math import gcd
from typing import Callable, Mapping, Optional

from acslie.cstruct import AlmostComplexStructure
from acslie.lie import LieAlgebra
from acslie.linalg import Mat

F = Fraction

ABELIAN = "abelian"
BI_INVARIANT = "bi-invariant"

NILPOTENT_UNIMODULAR = frozenset({"n1", "n2", "n3", "n4", "n5", "n6", "n7"})

# Parameterized forms that appear inside classification arguments rather than as final list items.
PROOF_FAMILIES = frozenset({
    "affC-plus", "affC-minus", "affC-Jab", "affC-nonproper", "affC-recog", "affC-sphere",
    "n3-raw", "n4-raw-1", "n4-raw-2", "n5-raw", "n7-raw", "s1-raw",
})


class DomainError(ValueError):
    pass


class UnknownEntry(KeyError):
    pass


@dataclass(frozen=True)
class CatalogEntry:
    id: str
    dim: int
    anchor: str
    structure_class: str
    params: tuple
    build: Callable = field(repr=False)
    domain: Optional[Callable] = field(default=None, repr=False)
    expected: Mapping = field(default_factory=dict, repr=False)
    param_dependent: frozenset = frozenset()
    algebra: object = None  # isomorphism-class tag, or callable of params
    salamon_tuple: Optional[str] = None
    labels: Optional[tuple] = None
    grid_kind: str = "default"

    def algebra_tag(self, params: Mapping) -> str:
        return self.algebra(params) if callable(self.algebra) else self.algebra

    def check_domain(self, params: Mapping) -> None:
        missing = [p for p in self.params if p not in params]
        if missing:
            raise DomainError(f"{self.id}: missing parameter(s) {', '.join(missing)}")
        extra = [p for p in params if p not in self.params]
        if extra:
            raise DomainError(f"{self.id}: unexpected parameter(s) {', '.join(extra)}")
        if self.domain is not None:
            why = self.domain({k: F(v) for k, v in params.items()})
            if why:
                raise DomainError(f"{self.id}: {why}")

    def expected_at(self, params: Mapping) -> dict:
        out = {}
        for k, v in self.expected.items():
            if k in self.param_dependent:
                continue
            out[k] = v(params) if callable(v) else v
        return out


# ---------------------------------------------------------------- builders

def _alg(dim, table, labels=None, name=None):
    """``table`` entries are (i, j, {k: c}) with 1-based indices."""
    return LieAlgebra.from_table(dim, table, labels=labels, name=name)


def _j(dim, images):
    """J from 1-based images ``{c: {k: coeff}}``; the rest follows from J^2 = -I."""
    imgs = {}
    for c, res in images.items():
        v = [F(0)] * dim
        for k, x in res.items():
            v[k - 1] += F(x)
        imgs[c - 1] = v
    return AlmostComplexStructure.from_images(dim, imgs)


def _std_j(dim, minus=()):
    """J e_{2i-1} = +-e_{2i}; ``minus`` lists the 1-based pair numbers taking the minus sign."""
    return _j(dim, {2 * p - 1: {2 * p: -1 if p in minus else 1} for p in range(1, dim // 2 + 1)})


def _shift(table, offset):
    return [(i + offset, j + offset, {k + offset: c for k, c in r.items()}) for i, j, r in table]


AFF_R = [(1, 2, {2: 1})]
H3 = [(1, 2, {3: 1})]
AFF_C = [(1, 3, {3: 1}), (1, 4, {4: 1}), (2, 3, {4: 1}), (2, 4, {3: -1})]
G5 = [(1, 2, {2: 1}), (1, 4, {4: 1}), (2, 3, {4: 1})]

J1_AFFC = {1: {2: -1}, 3: {4: 1}}
J2_AFFC = {1: {3: 1}, 2: {4: 1}}

N_TABLES = {
    "n1": [(1, 2, {6: 1})],
    "n2": [(1, 2, {6: 1}), (3, 4, {6: 1})],
    "n3": [(1, 2, {5: 1}), (3, 4, {6: 1})],
    "n4": [(1, 3, {5: 1}), (2, 4, {5: -1}), (1, 4, {6: 1}), (2, 3, {6: 1})],
    "n5": [(1, 2, {5: 1}), (1, 4, {6: 1}), (2, 3, {6: 1})],
    "n6": [(1, 2, {5: 1}), (1, 4, {6: 1}), (2, 5, {6: 1})],
    "n7": [(1, 2, {4: 1}), (1, 3, {5: 1}), (2, 4, {5: -1}), (1, 4, {6: 1}), (2, 3, {6: 1})],
}

SALAMON = {
    "n1": "(0,0,0,0,0,12)",
    "n2": "(0,0,0,0,0,12+34)",
    "n3": "(0,0,0,0,12,34)",
    "n4": "(0,0,0,0,13+42,14+23)",
    "n5": "(0,0,0,0,12,14+23)",
    "n6": "(0,0,0,0,12,14+25)",
    "n7": "(0,0,0,12,13+42,14+23)",
}

S_LABELS = ("f1", "f2", "e1", "e2", "e3", "e4")
EF_LABELS = ("e1", "e2", "e3", "f1", "f2", "f3")

# [f1,e1]=[f2,e2]=e1, [f1,e2]=-[f2,e1]=e2 in the basis f1,f2,e1,e2,e3,e4
S_BASE = [(1, 3, {3: 1}), (2, 4, {3: 1}), (1, 4, {4: 1}), (2, 3, {4: -1})]
J_S1 = {1: {2: -1}, 3: {4: -1, 5: 1}, 4: {3: 1, 6: 1}, 5: {6: 1}}
J_S_STD = {1: {2: 1}, 3: {4: 1}, 5: {6: 1}}


def _raw_st_j(first_pairs):
    """J on a 6-dim algebra with the given images on e1..e4 and J e5 = s e5 + t e6."""
    def build_j(p):
        images = dict(first_pairs)
        images[5] = {5: p["s"], 6: p["t"]}
        return _j(6, images)
    return build_j


# dim Der(h_{2n+1} x R^{2k+1})
HEISENBERG_DER = {
    (1, 0): 10, (1, 1): 24, (1, 2): 46, (2, 0): 21, (2, 1): 39, (2, 2): 65,
    (3, 0): 36, (3, 1): 58, (3, 2): 88, (4, 0): 55, (4, 1): 81, (4, 2): 115,
}


def _heisenberg(n, k):
    dim = 2 * n + 2 * k + 2
    z0 = 2 * n + 1
    table = [(2 * i - 1, 2 * i, {z0: 1}) for i in range(1, n + 1)]
    labels = tuple(f"e{i}" for i in range(1, 2 * n + 1)) + tuple(f"z{j}" for j in range(2 * k + 2))

    def build(p):
        r = int(p["r"])
        L = _alg(dim, table, labels=labels, name=f"h{2 * n + 1}xR{2 * k + 1}")
        return L, _std_j(dim, minus=range(1, r + 1))
    return build, dim


def _s_ab_table(a, b):
    return S_BASE + [
        (1, 5, {5: a, 6: b}), (2, 6, {5: a, 6: b}),
        (1, 6, {5: -b, 6: a}), (2, 5, {5: b, 6: -a}),
    ]


S2_TABLE = S_BASE + [
    (1, 5, {3: 1, 5: 1}), (2, 6, {3: 1, 5: 1}),
    (1, 6, {4: 1, 6: 1}), (2, 5, {4: -1, 6: -1}),
]


def _mat_affc_j1():
    return _j(4, J1_AFFC).J


def _mat_affc_j2():
    return _j(4, J2_AFFC).J


def j_plus(a, b) -> Mat:
    return Mat([[0, 1, 0, 0], [-1, 0, 0, 0], [a, -b, 0, -1], [b, a, 1, 0]])


def j_minus(a, b) -> Mat:
    return Mat([[0, -1, 0, 0], [1, 0, 0, 0], [a, -b, 0, 1], [b, a, -1, 0]])


def j_ab_block(a, b) -> Mat:
    """[[0, B], [-B^-1, 0]] with B = [[-a, b], [-b, -a]]."""
    a, b = F(a), F(b)
    B = Mat([[-a, b], [-b, -a]])
    Bi = B.inverse()
    return Mat([
        [0, 0, B[0, 0], B[0, 1]],
        [0, 0, B[1, 0], B[1, 1]],
        [-Bi[0, 0], -Bi[0, 1], 0, 0],
        [-Bi[1, 0], -Bi[1, 1], 0, 0],
    ])


def nonproper_affc_j(a, b, p, q) -> Mat:
    """The J with J e3 = a e1 + b e2 + p e3 + q e4 and J e4 = -b e1 + a e2 - q e3 + p e4."""
    return _j(4, {3: {1: a, 2: b, 3: p, 4: q}, 4: {1: -b, 2: a, 3: -q, 4: p}}).J


def sphere_j(x1, x2, x3) -> Mat:
    J1, J2 = _mat_affc_j1(), _mat_affc_j2()
    return J1.scale(x1) + J2.scale(x2) + (J1 @ J2).scale(x3)


def recognition_table(c, d, x, y):
    return [
        (1, 3, {3: c, 4: d}), (2, 4, {3: c, 4: d}),
        (1, 4, {3: -d, 4: c}), (2, 3, {3: d, 4: -c}),
        (1, 2, {3: x, 4: y}),
    ]


# ---------------------------------------------------------------- domains

def _nonzero_t(p):
    return None if p["t"] != 0 else "t must be non-zero"


def _nonzero_ab(p):
    return None if p["a"] ** 2 + p["b"] ** 2 != 0 else "a^2 + b^2 must be non-zero"


def _nonzero_cd(p):
    return None if p["c"] ** 2 + p["d"] ** 2 != 0 else "c^2 + d^2 must be non-zero"


def _unit_interval_t(p):
    return None if 0 < p["t"] <= 1 else "t must lie in (0, 1]"


def _signed_unit_t(p):
    return None if 0 < abs(p["t"]) <= 1 else "t must satisfy 0 < |t| <= 1"


def _on_sphere(p):
    return None if p["x1"] ** 2 + p["x2"] ** 2 + p["x3"] ** 2 == 1 else "x is not on the unit sphere"


def in_region_r(a, b) -> bool:
    """{0 < a^2 + b^2 < 1} union {a^2 + b^2 = 1, b >= 0}."""
    n = F(a) ** 2 + F(b) ** 2
    return 0 < n < 1 or (n == 1 and b >= 0)


def _region_r(p):
    return None if in_region_r(p["a"], p["b"]) else "(a, b) is outside the region R"


def _rank_r(n):
    def check(p):
        r = p["r"]
        if r.denominator != 1 or not 0 <= r <= n:
            return f"r must be an integer in [0, {n}]"
        return None
    return check


# ---------------------------------------------------------------- entries

def _fp(dim, derived, lcs, center, unimodular, gj, proper, der, bsig=None, pair=None, kernel="n/a"):
    return {
        "dim": dim, "derived": tuple(derived), "lcs": None if lcs is None else tuple(lcs),
        "center": center, "unimodular": unimodular, "der": der, "gJ": gj, "proper": proper,
        "bsig": bsig, "pair_der": pair, "kernel_sample": kernel,
    }


def _fixed(L_factory, J_factory):
    def build(p):
        return L_factory(), J_factory()
    return build


def _entries():
    E = []

    def add(**kw):
        kw.setdefault("params", ())
        kw.setdefault("structure_class", ABELIAN)
        E.append(CatalogEntry(**kw))

    # dimension 2
    add(id="R2", dim=2, anchor="two-dimensional algebras: R^2", algebra="R2",
        build=_fixed(lambda: LieAlgebra.abelian(2, name="R2"), lambda: _std_j(2)),
        expected=_fp(2, (2, 0), (2, 0), 2, True, 0, True, 4))
    add(id="affR", dim=2, anchor="two-dimensional algebras: aff(R)", algebra="affR",
        build=_fixed(lambda: _alg(2, AFF_R, name="aff(R)"), lambda: _std_j(2)),
        expected=_fp(2, (2, 1, 0), None, 0, False, 2, False, 2))

    # dimension 4
    dim4 = [
        ("g1", "R4", [], {1: {2: 1}, 3: {4: 1}}, _fp(4, (4, 0), (4, 0), 4, True, 0, True, 16)),
        ("g2", "g2", H3, {1: {2: 1}, 3: {4: 1}},
         _fp(4, (4, 1, 0), (4, 1, 0), 2, True, 2, True, 10, bsig=(0, 2), pair=4)),
        ("g3", "g3", AFF_R, {1: {2: 1}, 3: {4: 1}}, _fp(4, (4, 1, 0), None, 2, False, 2, True, 8, pair=2)),
        ("g4", "g4", AFF_R + _shift(AFF_R, 2), {1: {2: 1}, 3: {4: 1}},
         _fp(4, (4, 2, 0), None, 0, False, 4, False, 4)),
        ("g5", "g5", G5, {1: {2: 1}, 3: {4: -1}}, _fp(4, (4, 2, 0), None, 0, False, 4, False, 5)),
    ]
    names = {"g1": "R^4", "g2": "h3 x R", "g3": "aff(R) x R^2", "g4": "aff(R) x aff(R)", "g5": "aff(R) semidirect R^2"}
    for gid, tag, table, jimg, fp in dim4:
        add(id=gid, dim=4, anchor=f"four-dimensional list: {names[gid]}", algebra=tag,
            build=_fixed(lambda t=table, g=gid: _alg(4, t, name=g), lambda j=jimg: _j(4, j)), expected=fp)

    def affc():
        return _alg(4, AFF_C, name="aff(C)")

    affc_proper = _fp(4, (4, 2, 0), None, 0, False, 2, True, 4, pair=4)
    affc_full = _fp(4, (4, 2, 0), None, 0, False, 4, False, 4)
    add(id="affC-J1", dim=4, anchor="four-dimensional list: (aff(C), J1)", algebra="affC",
        build=_fixed(affc, lambda: _j(4, J1_AFFC)), expected=affc_proper)
    add(id="affC-J2", dim=4, anchor="four-dimensional list: (aff(C), J2)", algebra="affC",
        build=_fixed(affc, lambda: _j(4, J2_AFFC)), expected=affc_full)
    add(id="affC-plus", dim=4, anchor="aff(C), stable commutator: J+_(a,b)", algebra="affC", params=("a", "b"),
        build=lambda p: (affc(), AlmostComplexStructure(j_plus(p["a"], p["b"]))), expected=affc_proper)
    add(id="affC-minus", dim=4, anchor="aff(C), stable commutator: J-_(a,b)", algebra="affC", params=("a", "b"),
        build=lambda p: (affc(), AlmostComplexStructure(j_minus(p["a"], p["b"]))), expected=affc_proper)
    add(id="affC-Jab", dim=4, anchor="aff(C), non-proper case: block form J_(a,b)", algebra="affC",
        params=("a", "b"), domain=_nonzero_ab,
        build=lambda p: (affc(), AlmostComplexStructure(j_ab_block(p["a"], p["b"]))), expected=affc_full)
    add(id="affC-nonproper", dim=4, anchor="aff(C), non-proper case: J e3 = f1, J e4 = f2", algebra="affC",
        params=("a", "b", "p", "q"), domain=_nonzero_ab,
        build=lambda p: (affc(), AlmostComplexStructure(nonproper_affc_j(p["a"], p["b"], p["p"], p["q"]))),
        expected=affc_full)
    add(id="affC-recog", dim=4, anchor="recognition of (aff(C), J1)", algebra="affC",
        params=("c", "d", "x", "y"), domain=_nonzero_cd, labels=("f1", "f2", "f3", "f4"),
        build=lambda p: (_alg(4, recognition_table(p["c"], p["d"], p["x"], p["y"]), labels=("f1", "f2", "f3", "f4")),
                         _j(4, {1: {2: 1}, 3: {4: 1}})),
        expected=affc_proper)

    def sphere_proper(p):
        return p["x2"] == 0 and p["x3"] == 0

    add(id="affC-sphere", dim=4, anchor="two-sphere J_x of abelian structures on aff(C)", algebra="affC",
        params=("x1", "x2", "x3"), domain=_on_sphere, grid_kind="sphere",
        build=lambda p: (affc(), AlmostComplexStructure(sphere_j(p["x1"], p["x2"], p["x3"]))),
        expected=dict(affc_full, gJ=lambda p: 2 if sphere_proper(p) else 4, proper=sphere_proper,
                      pair_der=lambda p: 4 if sphere_proper(p) else None))
    add(id="affC-biinv", dim=4, anchor="bi-invariant structure on aff(C)", algebra="affC",
        structure_class=BI_INVARIANT,
        build=_fixed(affc, lambda: _j(4, {1: {2: 1}, 3: {4: 1}})), expected=affc_proper)

    # Heisenberg products
    for n in range(1, 5):
        for k in range(3):
            build, dim = _heisenberg(n, k)
            tag = {(1, 0): "g2", (1, 1): "n1", (2, 0): "n2"}.get((n, k), f"h{2 * n + 1}xR{2 * k + 1}")
            add(id=f"h{2 * n + 1}xR{2 * k + 1}", dim=dim, params=("r",), domain=_rank_r(n), grid_kind="rank",
                anchor="one-dimensional commutator: Heisenberg family J_r", algebra=tag, build=build,
                expected=_fp(dim, (dim, 1, 0), (dim, 1, 0), 2 * k + 2, True, 2, True, HEISENBERG_DER[n, k],
                             bsig=lambda p, n=n: tuple(sorted((2 * int(p["r"]), 2 * (n - int(p["r"]))))), pair=4))

    # six-dimensional nilpotent
    def n_alg(key):
        return lambda: _alg(6, N_TABLES[key], name=key)

    two_step = dict(derived=(6, 2, 0), lcs=(6, 2, 0), center=2, unimodular=True, gJ=2, proper=True,
                    bsig=None, pair_der=4)
    add(id="n1", dim=6, anchor="six-dim nilpotent list: (n1, J)", algebra="n1", salamon_tuple=SALAMON["n1"],
        build=_fixed(n_alg("n1"), lambda: _j(6, J_S_STD)),
        expected=_fp(6, (6, 1, 0), (6, 1, 0), 4, True, 2, True, 24, bsig=(0, 2), pair=4))
    for sign, sid in ((1, "n2-plus"), (-1, "n2-minus")):
        add(id=sid, dim=6, anchor=f"six-dim nilpotent list: (n2, J{'+' if sign > 0 else '-'})", algebra="n2",
            salamon_tuple=SALAMON["n2"],
            build=_fixed(n_alg("n2"), lambda s=sign: _j(6, {1: {2: 1}, 3: {4: s}, 5: {6: 1}})),
            expected=_fp(6, (6, 1, 0), (6, 1, 0), 2, True, 2, True, 21,
                         bsig=(0, 4) if sign > 0 else (2, 2), pair=4))

    def fp2(der, kernel):
        return dict(two_step, dim=6, der=der, kernel_sample=kernel)

    add(id="n3-canonical", dim=6, anchor="six-dim nilpotent list: (n3, J_s)", algebra="n3", params=("s",),
        salamon_tuple=SALAMON["n3"],
        build=lambda p: (n_alg("n3")(), _raw_st_j({1: {2: 1}, 3: {4: 1}})({"s": p["s"], "t": F(1)})),
        expected=fp2(16, "unstable"))
    add(id="n4-J1", dim=6, anchor="six-dim nilpotent list: (n4, J1_t)", algebra="n4", params=("t",),
        domain=_unit_interval_t, salamon_tuple=SALAMON["n4"],
        build=lambda p: (n_alg("n4")(), _raw_st_j({1: {3: 1}, 2: {4: 1}})({"s": F(0), "t": p["t"]})),
        expected=fp2(16, "unstable"))
    add(id="n4-J2", dim=6, anchor="six-dim nilpotent list: (n4, J2_t)", algebra="n4", params=("t",),
        domain=_unit_interval_t, salamon_tuple=SALAMON["n4"],
        build=lambda p: (n_alg("n4")(), _raw_st_j({1: {2: 1}, 3: {4: -1}})({"s": F(0), "t": p["t"]})),
        expected=fp2(16, "unstable"))
    add(id="n4-J0", dim=6, anchor="bi-invariant structure J0 on n4", algebra="n4", structure_class=BI_INVARIANT,
        salamon_tuple=SALAMON["n4"], build=_fixed(n_alg("n4"), lambda: _j(6, J_S_STD)),
        expected=fp2(16, "stable"))
    add(id="n5", dim=6, anchor="six-dim nilpotent list: (n5, J)", algebra="n5", salamon_tuple=SALAMON["n5"],
        build=_fixed(n_alg("n5"), lambda: _j(6, {1: {2: 1}, 3: {4: -1}, 5: {6: 1}})),
        expected=fp2(17, "unstable"))
    add(id="n6", dim=6, anchor="six-dim nilpotent list: (n6, J)", algebra="n6", salamon_tuple=SALAMON["n6"],
        build=_fixed(n_alg("n6"), lambda: _j(6, {1: {2: 1}, 3: {6: -1}, 4: {5: 1}})),
        expected=_fp(6, (6, 2, 0), (6, 2, 1, 0), 2, True, 4, True, 15, pair=16))
    n7_fp = _fp(6, (6, 3, 0), (6, 3, 2, 0), 2, True, 4, True, 12, pair=16)
    add(id="n7-canonical", dim=6, anchor="six-dim nilpotent list: (n7, J_t)", algebra="n7", params=("t",),
        domain=_signed_unit_t, salamon_tuple=SALAMON["n7"],
        build=lambda p: (n_alg("n7")(), _raw_st_j({1: {2: 1}, 3: {4: -1}})({"s": F(0), "t": p["t"]})),
        expected=n7_fp)

    raw = [
        ("n3-raw", "n3", {1: {2: 1}, 3: {4: 1}}, fp2(16, "unstable"), "J_{s,t} on n3"),
        ("n4-raw-1", "n4", {1: {3: 1}, 2: {4: 1}}, fp2(16, "unstable"), "J1_{s,t} on n4"),
        ("n4-raw-2", "n4", {1: {2: 1}, 3: {4: -1}}, fp2(16, "unstable"), "J2_{s,t} on n4"),
        ("n5-raw", "n5", {1: {2: 1}, 3: {4: -1}}, fp2(17, "unstable"), "J_{s,t} on n5"),
        ("n7-raw", "n7", {1: {2: 1}, 3: {4: -1}}, n7_fp, "J_{s,t} on n7"),
    ]
    for rid, key, first, fp, what in raw:
        add(id=rid, dim=6, anchor=f"nilpotent classification, raw family {what}", algebra=key, params=("s", "t"),
            domain=_nonzero_t, salamon_tuple=SALAMON[key],
            build=lambda p, key=key, first=first: (n_alg(key)(), _raw_st_j(first)(p)), expected=fp)

    # dim g'_J = 2, non-nilpotent
    add(id="affRxR4", dim=6, anchor="dim g'_J = 2: aff(R) x R^4", algebra="affRxR4",
        build=_fixed(lambda: _alg(6, AFF_R, name="aff(R)xR4"), lambda: _std_j(6)),
        expected=_fp(6, (6, 1, 0), None, 4, False, 2, True, 22, pair=2))
    add(id="affCxR2", dim=6, anchor="dim g'_J = 2: aff(C) x R^2 with J1 x J", algebra="affCxR2",
        build=_fixed(lambda: _alg(6, AFF_C, name="aff(C)xR2"), lambda: _j(6, {1: {2: -1}, 3: {4: 1}, 5: {6: 1}})),
        expected=_fp(6, (6, 2, 0), None, 2, False, 2, True, 12, pair=4))

    # dim g'_J = 4, non-abelian g'_J
    d4 = [
        ("thm42-1", "aff(R) x (h3 x R)", AFF_R + _shift(H3, 2), J_S_STD, "affRxh3xR",
         _fp(6, (6, 2, 0), None, 2, False, 4, True, 14, pair=6)),
        ("thm42-2", "aff(R) x (aff(C), J1)", AFF_R + _shift(AFF_C, 2), {1: {2: 1}, 3: {4: -1}, 5: {6: 1}},
         "affRxaffC", _fp(6, (6, 3, 0), None, 0, False, 4, True, 6, pair=6)),
        ("thm42-3", "aff(R) x aff(R) x R^2", AFF_R + _shift(AFF_R, 2), J_S_STD, "affRxaffRxR2",
         _fp(6, (6, 2, 0), None, 2, False, 4, True, 12, pair=4)),
        ("thm42-4", "(aff(R) semidirect R^2) x R^2", G5, {1: {2: 1}, 3: {4: -1}, 5: {6: 1}}, "g5xR2",
         _fp(6, (6, 2, 0), None, 2, False, 4, True, 13, pair=4)),
        ("thm42-5", "(aff(C), J2) x R^2", AFF_C, {1: {3: 1}, 2: {4: 1}, 5: {6: 1}}, "affCxR2",
         _fp(6, (6, 2, 0), None, 2, False, 4, True, 12, pair=4)),
    ]
    for eid, what, table, jimg, tag, fp in d4:
        add(id=eid, dim=6, anchor=f"dim g'_J = 4, non-abelian g'_J: {what}", algebra=tag,
            build=_fixed(lambda t=table, e=eid: _alg(6, t, name=e), lambda j=jimg: _j(6, j)), expected=fp)

    # dim g'_J = 4, abelian g'_J; basis f1, f2, e1, e2, e3, e4
    def s_alg(table, name):
        return _alg(6, table, labels=S_LABELS, name=name)

    s1_table = S_BASE + [(1, 2, {5: 1})]
    add(id="thm44-1", dim=6, anchor="dim g'_J = 4, abelian g'_J: aff(C) x R^2 with a J not preserving aff(C)",
        algebra="affCxR2", labels=S_LABELS,
        build=_fixed(lambda: s_alg(S_BASE, "aff(C)xR2"), lambda: _j(6, J_S1)),
        expected=_fp(6, (6, 2, 0), None, 2, False, 4, True, 12, pair=16))
    add(id="s1-J1", dim=6, anchor="dim g'_J = 4, abelian g'_J: (s1, J1)", algebra="s1", labels=S_LABELS,
        build=_fixed(lambda: s_alg(s1_table, "s1"), lambda: _j(6, J_S1)),
        expected=_fp(6, (6, 3, 0), None, 2, False, 4, True, 10, pair=16))
    add(id="s1-J2", dim=6, anchor="dim g'_J = 4, abelian g'_J: (s1, J2)", algebra="s1", labels=S_LABELS,
        build=_fixed(lambda: s_alg(s1_table, "s1"), lambda: _j(6, J_S_STD)),
        expected=_fp(6, (6, 3, 0), None, 2, False, 4, True, 10, pair=16))
    add(id="s1-raw", dim=6, anchor="dim g'_J = 4, abelian g'_J: s with [f1,f2] = a e3 + b e4", algebra="s1",
        labels=S_LABELS, params=("a", "b"), domain=_nonzero_ab,
        build=lambda p: (s_alg(S_BASE + [(1, 2, {5: p["a"], 6: p["b"]})], "s1"), _j(6, J_S1)),
        expected=_fp(6, (6, 3, 0), None, 2, False, 4, True, 10, pair=16))
    s2_fp = _fp(6, (6, 4, 0), None, 0, False, 4, True, 8, pair=16)
    add(id="s2", dim=6, anchor="dim g'_J = 4, abelian g'_J: (s2, J)", algebra="s2", labels=S_LABELS,
        build=_fixed(lambda: s_alg(S2_TABLE, "s2"), lambda: _j(6, J_S_STD)), expected=s2_fp)
    add(id="s2-biinv", dim=6, anchor="bi-invariant structure on s2", algebra="s2", labels=S_LABELS,
        structure_class=BI_INVARIANT,
        build=_fixed(lambda: s_alg(S2_TABLE, "s2"), lambda: _j(6, {1: {2: -1}, 3: {4: 1}, 5: {6: 1}})),
        expected=s2_fp)

    def s_tag(p):
        return f"s({p['a']},{p['b']})"

    s_ab_fp = _fp(6, (6, 4, 0), None, 0, lambda p: (p["a"], p["b"]) == (-1, 0), 4, True, None, pair=16)
    add(id="s-ab", dim=6, anchor="dim g'_J = 4, abelian g'_J: (s_(a,b), J), (a,b) in R", algebra=s_tag,
        labels=S_LABELS, params=("a", "b"), domain=_region_r, grid_kind="region",
        build=lambda p: (s_alg(_s_ab_table(p["a"], p["b"]), "s_(a,b)"), _j(6, J_S_STD)),
        expected=s_ab_fp, param_dependent=frozenset({"der"}))
    add(id="s-ab-biinv", dim=6, anchor="bi-invariant structure on s_(a,b)", algebra=s_tag, labels=S_LABELS,
        params=("a", "b"), domain=_region_r, grid_kind="region", structure_class=BI_INVARIANT,
        build=lambda p: (s_alg(_s_ab_table(p["a"], p["b"]), "s_(a,b)"), _j(6, {1: {2: -1}, 3: {4: 1}, 5: {6: 1}})),
        expected=s_ab_fp, param_dependent=frozenset({"der"}))

    # non-proper: aff(A) for the five algebras with A^2 = A
    np = [
        ("thm45-1", "aff(R) x aff(R) x aff(R)", AFF_R + _shift(AFF_R, 2) + _shift(AFF_R, 4), J_S_STD,
         "affR3", None, 6),
        ("thm45-2", "aff(R) x (aff(C), J2)", AFF_R + _shift(AFF_C, 2), {1: {2: 1}, 3: {5: 1}, 4: {6: 1}},
         "affRxaffC", None, 6),
        ("thm45-3", "aff(R) x (aff(R) semidirect R^2)", AFF_R + _shift(G5, 2), {1: {2: 1}, 3: {4: 1}, 5: {6: -1}},
         "affRxg5", None, 7),
        ("s3", "(s3, J)", [(1, 4, {4: 1}), (1, 5, {5: 1}), (1, 6, {6: 1}), (2, 4, {5: 1}), (2, 5, {6: 1}),
                           (3, 4, {6: 1})], {1: {4: 1}, 2: {5: 1}, 3: {6: 1}}, "s3", EF_LABELS, 8),
        ("s4", "(s4, J)", [(1, 4, {4: 1}), (1, 5, {5: 1}), (1, 6, {6: 1}), (2, 4, {5: 1}), (3, 4, {6: 1})],
         {1: {4: 1}, 2: {5: 1}, 3: {6: 1}}, "s4", EF_LABELS, 10),
    ]
    for eid, what, table, jimg, tag, labels, der in np:
        add(id=eid, dim=6, anchor=f"non-proper list: {what}", algebra=tag, labels=labels,
            build=_fixed(lambda t=table, e=eid, lb=labels: _alg(6, t, labels=lb, name=e), lambda j=jimg: _j(6, j)),
            expected=_fp(6, (6, 3, 0), None, 0, False, 6, False, der))

    add(id="R6", dim=6, anchor="abelian R^6", algebra="R6",
        build=_fixed(lambda: LieAlgebra.abelian(6, name="R6"), lambda: _std_j(6)),
        expected=_fp(6, (6, 0), (6, 0), 6, True, 0, True, 36))
    return E


@lru_cache(maxsize=1)
def _registry():
    es = _entries()
    reg = {e.id: e for e in es}
    if len(reg) != len(es):
        raise RuntimeError("duplicate catalog ids")
    return es, reg


ALIASES = {"g6": "affC-J1", "n3": "n3-canonical", "n4": "n4-J1", "n7": "n7-canonical"}


def entries() -> list:
    return list(_registry()[0])


def ids() -> list:
    return [e.id for e in entries()]


def get(entry_id: str) -> CatalogEntry:
    reg = _registry()[1]
    key = ALIASES.get(entry_id, entry_id)
    if key not in reg:
        raise UnknownEntry(entry_id)
    return reg[key]


def select(filter_id: Optional[str]) -> list:
    """Entries whose id or algebra tag equals ``filter_id`` (all when None)."""
    if filter_id is None:
        return entries()
    hits = [e for e in entries() if e.id == filter_id or (not callable(e.algebra) and e.algebra == filter_id)]
    if not hits:
        try:
            hits = [get(filter_id)]
        except UnknownEntry:
            raise UnknownEntry(filter_id) from None
    return hits


def instantiate(entry_id: str, params: Optional[Mapping] = None):
    """(LieAlgebra, AlmostComplexStructure) for the entry at ``params``."""
    e = get(entry_id)
    params = {k: F(v) for k, v in (params or {}).items()}
    e.check_domain(params)
    return e.build(params)


def expected_fingerprint(entry_id: str, params: Optional[Mapping] = None) -> dict:
    e = get(entry_id)
    return e.expected_at({k: F(v) for k, v in (params or {}).items()})


# ---------------------------------------------------------------- grids

def rational_pool():
    """0, 1, -1, 2, -2, 1/2, -1/2, ... ordered by height max(|p|, q)."""
    yield F(0)
    for h in count(1):
        for p in range(1, h + 1):
            for q in range(1, h + 1):
                if max(p, q) == h and gcd(p, q) == 1:
                    yield F(p, q)
                    yield F(-p, q)


def _take(gen, n, keep):
    out = []
    for v in gen:
        if keep(v):
            out.append(v)
            if len(out) == n:
                break
    return out


def _pairs():
    """Deterministic enumeration of rational pairs along anti-diagonals of the pool."""
    pool = _take(rational_pool(), 60, lambda v: True)
    for s in range(2 * len(pool)):
        for i in range(max(0, s - len(pool) + 1), min(s + 1, len(pool))):
            yield pool[i], pool[s - i]


def sphere_points(n: int) -> list:
    """Rational points of S^2: the six axis points, then inverse stereographic images."""
    pts = [(F(1), F(0), F(0)), (F(-1), F(0), F(0)), (F(0), F(1), F(0)),
           (F(0), F(-1), F(0)), (F(0), F(0), F(1)), (F(0), F(0), F(-1))]
    seen = set(pts)
    for u, v in _pairs():
        d = u * u + v * v + 1
        x = (2 * u / d, 2 * v / d, (u * u + v * v - 1) / d)
        if x not in seen:
            seen.add(x)
            pts.append(x)
        if len(pts) >= n:
            break
    return pts[:n]


def region_points(n: int) -> list:
    """Points of R: (1,0), (-1,0), then alternating upper unit-circle points and interior pairs."""
    pts = [(F(1), F(0)), (F(-1), F(0))]
    seen = set(pts)
    circle = (((1 - m * m) / (1 + m * m), 2 * m / (1 + m * m)) for m in rational_pool() if m > 0)
    interior = ((a, b) for a, b in _pairs() if 0 < a * a + b * b < 1)
    sources = (circle, interior, interior)
    i = 0
    while len(pts) < n:
        pt = next(sources[i % 3])
        i += 1
        if pt not in seen and in_region_r(*pt):
            seen.add(pt)
            pts.append(pt)
    return pts


def parameter_grid(entry_id: str, n: int = 100, seed: int = 20240101) -> list:
    """Up to ``n`` deterministic in-domain parameter assignments for the entry."""
    e = get(entry_id)
    if not e.params:
        return [{}]

    def ok(p):
        try:
            e.check_domain(p)
        except DomainError:
            return False
        return True

    if e.grid_kind == "rank":
        nmax = next(v for v in range(20) if not ok({"r": F(v + 1)}))
        return [{"r": F(r)} for r in range(nmax + 1)][:n]
    if e.grid_kind == "sphere":
        return [dict(zip(("x1", "x2", "x3"), x)) for x in sphere_points(n)]
    if e.grid_kind == "region":
        return [{"a": a, "b": b} for a, b in region_points(n)]
    if len(e.params) == 1:
        name = e.params[0]
        return _take(({name: v} for v in rational_pool()), n, ok)
    if len(e.params) == 2:
        return _take((dict(zip(e.params, pq)) for pq in _pairs()), n, ok)
    rng = random.Random(f"{seed}:{entry_id}")
    pool = _take(rational_pool(), 41, lambda v: True)
    out, seen = [], set()
    while len(out) < n:
        p = {name: rng.choice(pool) for name in e.params}
        key = tuple(p[k] for k in e.params)
        if key not in seen and ok(p):
            seen.add(key)
            out.append(p)
    return out
