"""Holomorphic equivalence: intertwiners, automorphism families, orbit invariants, fingerprints.

A group element g acts on structures by conjugation, ``g . J = g J g^-1``, so
``g`` is a holomorphic isomorphism from (L, J) to (L, g . J).
"""
from __future__ import annotations

from dataclasses import asdict, dataclass
from fractions import Fraction
from itertools import islice, product
from typing import Mapping, Optional

from acslie import catalog
from acslie.cstruct import (
    _as_mat,
    conjugate_structure,
    gJ_prime,
    j_stable_complement,
    kernel_of_ad_on,
    optional_signature,
    pair_derivation_space,
    restrict_structure,
)
from acslie.lie import (
    LieAlgebra,
    center,
    commutator_subspace,
    derivation_space,
    derived_series,
    is_isomorphism,
    is_unimodular,
    lower_central_series,
    transport,
)
from acslie.linalg import Mat, combine, inertia, unit_vectors

F = Fraction

KERNEL_STABLE = "stable"
KERNEL_UNSTABLE = "unstable"
KERNEL_NA = "n/a"
KERNEL_SAMPLE_SIZE = 50


@dataclass(frozen=True)
class Fingerprint:
    dim: int
    derived: tuple
    lcs: Optional[tuple]
    center: int
    unimodular: bool
    der: int
    killing: tuple
    pencil: Optional[str]
    gJ: int
    proper: bool
    bsig: Optional[tuple]
    pair_der: Optional[int]
    kernel_sample: str = KERNEL_NA

    def as_dict(self) -> dict:
        return asdict(self)

    def certificate(self) -> tuple:
        return tuple(getattr(self, f) for f in CERTIFICATE_FIELDS)


CERTIFICATE_FIELDS = ("dim", "derived", "lcs", "center", "unimodular", "der", "killing", "pencil",
                      "gJ", "proper", "bsig", "pair_der")


def killing_inertia(L: LieAlgebra) -> tuple:
    """(n_plus, n_minus, n_zero) of the Killing form tr(ad_x ad_y)."""
    ads = [L.ad_basis(i) for i in range(L.dim)]
    K = Mat([[(x @ y).trace() for y in ads] for x in ads], L.dim)
    return inertia(K)


def _pfaffian4(w) -> Fraction:
    return w[0][1] * w[2][3] - w[0][2] * w[1][3] + w[0][3] * w[1][2]


def pencil_type(L: LieAlgebra) -> Optional[str]:
    """Type of the Pfaffian pencil when g' is central, 2-dimensional and of codimension 4.

    The two coordinate 2-forms of the bracket on g/g' span a pencil whose
    Pfaffian is a binary quadratic form; its real root pattern ("split",
    "definite", "square" or "zero") is an isomorphism invariant. None when
    the shape does not apply.
    """
    gp = commutator_subspace(L)
    if gp.dim != 2 or L.dim - gp.dim != 4:
        return None
    if any(any(L.bracket(e, z)) for e in unit_vectors(L.dim) for z in gp.basis):
        return None
    comp = gp.complement_basis()
    forms = [[[gp.coordinates(L.bracket(x, y))[k] for y in comp] for x in comp] for k in range(2)]
    a = _pfaffian4(forms[0])
    c = _pfaffian4(forms[1])
    b = _pfaffian4([[u + v for u, v in zip(r0, r1)] for r0, r1 in zip(*forms)]) - a - c
    if a == b == c == 0:
        return "zero"
    disc = b * b - 4 * a * c
    return "split" if disc > 0 else "definite" if disc < 0 else "square"


def _coefficient_vectors(k: int, count: int) -> list:
    pool = list(islice(catalog.rational_pool(), 7))
    out = []
    for c in product(pool, repeat=k):
        if any(c):
            out.append(c)
            if len(out) == count:
                break
    return out


def kernel_sample(L: LieAlgebra, J) -> str:
    """Whether ker(ad_x restricted to v) is J-stable for sampled x in a J-stable complement v of the centre.

    Only meaningful for 2-step nilpotent algebras with dim g' = 2; a single
    unstable kernel is a certificate, "stable" is sampled evidence.
    """
    J = _as_mat(J)
    lcs = lower_central_series(L)
    if lcs[-1].dim != 0 or len(lcs) != 3 or lcs[1].dim != 2:
        return KERNEL_NA
    v = j_stable_complement(center(L), J)
    for coeffs in _coefficient_vectors(v.dim, KERNEL_SAMPLE_SIZE):
        x = combine(coeffs, v.basis, L.dim)
        if not kernel_of_ad_on(L, x, v).is_stable(J):
            return KERNEL_UNSTABLE
    return KERNEL_STABLE


def fingerprint(L: LieAlgebra, J) -> Fingerprint:
    J = _as_mat(J)
    lcs = lower_central_series(L)
    gJ, proper = gJ_prime(L, J)
    pair = None
    if proper and gJ.dim:
        sub, Jr = restrict_structure(L, J, gJ)
        pair = len(pair_derivation_space(sub, Jr))
    try:
        sig = optional_signature(L, J)
    except ValueError:
        sig = None
    return Fingerprint(
        dim=L.dim,
        derived=tuple(s.dim for s in derived_series(L)),
        lcs=tuple(s.dim for s in lcs) if lcs[-1].dim == 0 else None,
        center=center(L).dim,
        unimodular=is_unimodular(L),
        der=len(derivation_space(L)),
        killing=killing_inertia(L),
        pencil=pencil_type(L),
        gJ=gJ.dim,
        proper=proper,
        bsig=None if sig is None else tuple(sorted(sig)),
        pair_der=pair,
        kernel_sample=kernel_sample(L, J),
    )


def separating_fields(f1: Fingerprint, f2: Fingerprint) -> list:
    """Certificate-grade fields on which the two fingerprints differ."""
    return [f for f in CERTIFICATE_FIELDS if getattr(f1, f) != getattr(f2, f)]


def distinguished(f1: Fingerprint, f2: Fingerprint) -> str:
    if separating_fields(f1, f2):
        return "distinguished"
    if KERNEL_UNSTABLE in {f1.kernel_sample, f2.kernel_sample} and f1.kernel_sample != f2.kernel_sample:
        return "distinguished (sampled kernel test)"
    return "not distinguished"


def intertwiner_check(L1: LieAlgebra, J1, L2: LieAlgebra, J2, P: Mat) -> bool:
    """P is a Lie isomorphism L1 -> L2 with P J1 = J2 P."""
    if L1.dim != L2.dim:
        raise ValueError("dimension mismatch")
    return is_isomorphism(L1, L2, P) and P @ _as_mat(J1) == _as_mat(J2) @ P


# ---------------------------------------------------------------- group elements

class DegenerateElement(ValueError):
    pass


def _rot(a, b):
    return Mat([[a, -b], [b, a]])


def _params(params: Mapping, *names, default=None):
    out = []
    for n in names:
        v = params.get(n, default)
        if v is None:
            raise DegenerateElement(f"missing group parameter {n}")
        out.append(F(v))
    return out


def _nonzero(*pairs):
    for a, b in pairs:
        if a * a + b * b == 0:
            raise DegenerateElement("degenerate parameters: a^2 + b^2 = 0")


def _eps(params):
    e = int(params.get("eps", 1))
    if e not in (1, -1):
        raise DegenerateElement("eps must be +1 or -1")
    return e


def _affc_aut(p):
    a, b, c, d = _params(p, "a", "b", "c", "d", default=0)
    e = _eps(p)
    _nonzero((a, b))
    return Mat([[1, 0, 0, 0], [0, e, 0, 0], [c, -e * d, a, -e * b], [d, e * c, b, e * a]])


SIGMA = Mat([[1, 0, 0, 0], [0, -1, 0, 0], [0, 0, 1, 0], [0, 0, 0, -1]])


def _affc_phi_printed(p):
    a, b = _params(p, "a", "b", default=0)
    h = F(1, 2)
    return Mat([[1, 0, 0, 0], [0, -1, 0, 0], [h * b, h * a, 1, 0], [h * a, -h * b, 0, -1]])


def _affc_psi_printed(p):
    a, b = _params(p, "a", "b", default=0)
    h = F(1, 2)
    return Mat([[1, 0, 0, 0], [0, 1, 0, 0], [-h * b, -h * a, 1, 0], [h * a, -h * b, 0, 1]])


def _affc_phi(p):
    """Automorphism taking J+_(a,b) to J1 (the displayed one composed with diag(1,-1,1,-1))."""
    return SIGMA @ _affc_phi_printed(p)


def _affc_psi(p):
    """Automorphism taking J-_(a,b) to J1."""
    return SIGMA @ _affc_psi_printed(p)


def _affc_phi_ab(p):
    a, b = _params(p, "a", "b")
    _nonzero((a, b))
    return Mat.block_diag(Mat.identity(2), Mat([[-a, b], [-b, -a]]))


def _n3_g_plus(p):
    a, b, c, d = _params(p, "a", "b", "c", "d", default=0)
    _nonzero((a, b), (c, d))
    return Mat.block_diag(_rot(a, b), _rot(c, d), Mat([[a * a + b * b, 0], [0, c * c + d * d]]))


N3_SWAP = Mat.from_columns([unit_vectors(6)[i] for i in (2, 3, 0, 1, 5, 4)])


def _n3_g_minus(p):
    return N3_SWAP @ _n3_g_plus(p)


def _n5_phi(p):
    s, t = _params(p, "s", "t")
    if t == 0:
        raise DegenerateElement("t must be non-zero")
    k = (1 + s * s) / t
    h = s / 2
    return Mat([
        [0, -1, 0, 0, 0, 0],
        [1, 0, 0, 0, 0, 0],
        [0, -h, 0, k, 0, 0],
        [-h, 0, -k, 0, 0, 0],
        [0, 0, 0, 0, 1, 0],
        [0, 0, 0, 0, -s, k],
    ])


def _n7_cx(p):
    a, b = _params(p, "a", "b")
    _nonzero((a, b))
    d = a * a + b * b
    return Mat.block_diag(_rot(a, b), Mat([[d, 0], [0, d]]), _rot(a * d, b * d))


def _n4_g1_plus(p):
    a, b = _params(p, "a", "b")
    e = _eps(p)
    _nonzero((a, b))
    A = Mat([[a, -e * b], [b, e * a]])
    C = Mat([[a * a - b * b, -2 * e * a * b], [2 * a * b, e * (a * a - b * b)]])
    return Mat.block_diag(A, A, C)


N4_G1_SWAP = Mat([
    [0, 0, -1, 0, 0, 0], [0, 0, 0, -1, 0, 0],
    [1, 0, 0, 0, 0, 0], [0, 1, 0, 0, 0, 0],
    [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1],
])


def _n4_g1_minus(p):
    return N4_G1_SWAP @ _n4_g1_plus(p)


def _n4_g2_plus(p):
    a, b, c, d = _params(p, "a", "b", "c", "d")
    _nonzero((a, b), (c, d))
    return Mat.block_diag(_rot(a, b), _rot(c, d), _rot(a * c - b * d, a * d + b * c))


_U = Mat([[1, 0], [0, -1]])
N4_G2_SWAP = Mat([
    [0, 0, 1, 0, 0, 0], [0, 0, 0, -1, 0, 0],
    [1, 0, 0, 0, 0, 0], [0, -1, 0, 0, 0, 0],
    [0, 0, 0, 0, -1, 0], [0, 0, 0, 0, 0, 1],
])


def _n4_g2_minus(p):
    return _n4_g2_plus(p) @ N4_G2_SWAP


# C-linear on (z, w) = (x1 + i x2, x3 + i x4): [[1, -i/2], [-i, 1/2]] in SL(2, C), identity on the centre
N4_J2_TO_J1 = Mat([
    [1, 0, 0, F(1, 2), 0, 0], [0, 1, F(-1, 2), 0, 0, 0],
    [0, 1, F(1, 2), 0, 0, 0], [-1, 0, 0, F(1, 2), 0, 0],
    [0, 0, 0, 0, 1, 0], [0, 0, 0, 0, 0, 1],
])


def _n4_cross(p):
    """Automorphism with g J2_{s,t} = J1_{s,t} g for every (s, t)."""
    return N4_J2_TO_J1


def _s1_phi(p):
    a, b = _params(p, "a", "b")
    _nonzero((a, b))
    return Mat.block_diag(Mat.identity(2), _rot(a, b), _rot(a, b))


# (source entry, target entry or None for "same algebra", builder, group parameter names)
_FAMILIES = {
    "affC": {
        "aut": _affc_aut, "phi": _affc_phi, "psi": _affc_psi,
        "phi-printed": _affc_phi_printed, "psi-printed": _affc_psi_printed, "phi-ab": _affc_phi_ab,
    },
    "n3": {"G+": _n3_g_plus, "G-": _n3_g_minus},
    "n5": {"phi": _n5_phi},
    "n7": {"Cx": _n7_cx},
    "n4": {"G1+": _n4_g1_plus, "G1-": _n4_g1_minus, "G2+": _n4_g2_plus, "G2-": _n4_g2_minus,
           "J2-to-J1": _n4_cross},
    "s1": {"phi": _s1_phi},
}

_ENTRY_FAMILY = {
    "n3-raw": "n3", "n3-canonical": "n3", "n5-raw": "n5", "n5": "n5", "n7-raw": "n7", "n7-canonical": "n7",
    "n4-raw-1": "n4", "n4-raw-2": "n4", "n4-J1": "n4", "n4-J2": "n4", "n4-J0": "n4",
    "s1-raw": "s1", "s1-J1": "s1",
}


def _family(entry_id: str) -> str:
    e = catalog.get(entry_id)
    if e.id in _ENTRY_FAMILY:
        return _ENTRY_FAMILY[e.id]
    if e.algebra == "affC" and e.dim == 4:
        return "affC"
    raise KeyError(f"no automorphism family registered for {entry_id}")


def family_tags(entry_id: str) -> list:
    return list(_FAMILIES[_family(entry_id)])


def _source_target(fam: str, params: Mapping):
    if fam == "affC":
        L = catalog.instantiate("affC-J1")[0]
        return L, L
    if fam == "s1":
        src = catalog.instantiate("s1-J1")[0]
        tgt = catalog.instantiate("s1-raw", {"a": params["a"], "b": params["b"]})[0]
        return src, tgt
    L = catalog.get(f"{fam}-raw" if fam != "n4" else "n4-raw-1").build({"s": F(0), "t": F(1)})[0]
    return L, L


def _element(fam: str, tag: str, params: Mapping) -> Mat:
    try:
        build = _FAMILIES[fam][tag]
    except KeyError:
        raise KeyError(f"unknown family tag {tag!r} for {fam}; known: {', '.join(_FAMILIES[fam])}") from None
    g = build(params)
    if not g.is_invertible():
        raise DegenerateElement("degenerate parameters: singular element")
    return g


def group_element(entry_id: str, tag: str, params: Mapping) -> Mat:
    """The displayed automorphism (or isomorphism, for s1) with the given parameters."""
    fam = _family(entry_id)
    g = _element(fam, tag, params)
    src, tgt = _source_target(fam, params)
    if not is_isomorphism(src, tgt, g):
        raise AssertionError(f"{tag} element is not an isomorphism of {fam}")
    return g


# ---------------------------------------------------------------- action on (s, t)

ORBIT_ENTRIES = ("n3-raw", "n4-raw-1", "n4-raw-2", "n5-raw", "n7-raw")


def _check_orbit_entry(entry_id):
    if entry_id not in ORBIT_ENTRIES:
        raise KeyError(f"orbit invariants are defined for {', '.join(ORBIT_ENTRIES)}, not {entry_id}")


def act(entry_id: str, g: Mat, params: Mapping) -> Optional[dict]:
    """Parameters of g . J_{s,t}, or None when the image leaves the (s, t) family."""
    e = catalog.get(entry_id)
    _, J = e.build({k: F(v) for k, v in params.items()})
    J2 = conjugate_structure(J, g).J
    s, t = J2[4, 4], J2[5, 4]
    if t == 0:
        return None
    image = {"s": s, "t": t}
    if e.build(image)[1].J != J2:
        return None
    return image


def c_value(params: Mapping) -> Fraction:
    s, t = F(params["s"]), F(params["t"])
    return t + (1 + s * s) / t


@dataclass(frozen=True)
class OrbitInvariant:
    entry: str
    value: tuple


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def orbit_invariant(entry_id: str, params: Mapping) -> OrbitInvariant:
    _check_orbit_entry(entry_id)
    p = {k: F(v) for k, v in params.items()}
    catalog.get(entry_id).check_domain(p)
    if entry_id == "n3-raw":
        return OrbitInvariant(entry_id, (p["s"] * _sign(p["t"]),))
    if entry_id == "n5-raw":
        return OrbitInvariant(entry_id, ())
    c = c_value(p)
    if entry_id == "n7-raw":
        return OrbitInvariant(entry_id, (_sign(p["t"]), c))
    return OrbitInvariant(entry_id, (1 if entry_id == "n4-raw-1" else 2, abs(c)))


def _rational_sqrt(q: Fraction) -> Optional[Fraction]:
    from math import isqrt
    if q < 0:
        return None
    n, d = isqrt(q.numerator), isqrt(q.denominator)
    return F(n, d) if n * n == q.numerator and d * d == q.denominator else None


NON_RATIONAL = "non-rational representative"


def canonicalize(entry_id: str, params: Mapping) -> dict:
    """Parameters of the canonical representative of the orbit.

    For n4 and n7 the representative is (0, t0) with t0 + 1/t0 = c and
    0 < |t0| <= 1; when t0 is irrational the invariant c is returned instead,
    flagged with the ``NON_RATIONAL`` marker.
    """
    inv = orbit_invariant(entry_id, params)
    if entry_id == "n3-raw":
        return {"s": inv.value[0], "t": F(1)}
    if entry_id == "n5-raw":
        return {"s": F(0), "t": F(1)}
    c = inv.value[-1]
    root = _rational_sqrt(c * c - 4)
    if root is None:
        return {"c": c, "marker": NON_RATIONAL}
    t0 = (c - root) / 2 if c > 0 else (c + root) / 2
    return {"s": F(0), "t": t0}


def circle_equation_holds(c: Fraction, params: Mapping) -> bool:
    """u^2 + (v - c/2)^2 = (c/2)^2 - 1 at (u, v) = (s, t)."""
    u, v = F(params["s"]), F(params["t"])
    return u * u + (v - c / 2) ** 2 == (c / 2) ** 2 - 1


_SAMPLE_VALUES = (F(1), F(0), F(2), F(1, 2), F(3, 2), F(-1), F(3), F(1, 3), F(-2), F(-1, 2))


def _sample_pool(k):
    """k-tuples over _SAMPLE_VALUES, all tuples using the first m values before any using value m + 1."""
    for m in range(len(_SAMPLE_VALUES)):
        for idx in product(range(m + 1), repeat=k):
            if m in idx:
                yield tuple(_SAMPLE_VALUES[i] for i in idx)


def _tagged_samples(tag, names):
    ks = [n for n in names if n != "eps"]
    eps_values = (1, -1) if "eps" in names else (None,)
    for vals in _sample_pool(len(ks)):
        for eps in eps_values:
            p = dict(zip(ks, vals))
            if eps is not None:
                p["eps"] = eps
            yield tag, p


def sample_elements(entry_id: str, count: int):
    """Deterministic (tag, params) samples of the group acting on the (s, t) family, tags interleaved."""
    fam = _family(entry_id)
    specs = {
        "n3": [("G+", ("a", "b", "c", "d")), ("G-", ("a", "b", "c", "d"))],
        "n5": [],
        "n7": [("Cx", ("a", "b"))],
        "n4": ([("G1+", ("a", "b", "eps")), ("G1-", ("a", "b", "eps"))] if entry_id == "n4-raw-1"
               else [("G2+", ("a", "b", "c", "d")), ("G2-", ("a", "b", "c", "d"))]),
    }[fam]
    gens = [_tagged_samples(tag, names) for tag, names in specs]
    out = []
    i = 0
    while len(out) < count and gens:
        gen = gens[i % len(gens)]
        try:
            tag, p = next(gen)
        except StopIteration:
            gens.remove(gen)
            continue
        try:
            _element(fam, tag, p)
        except DegenerateElement:
            continue
        i += 1
        out.append((tag, p))
    return out


@dataclass
class MembershipReport:
    verdict: str
    element: Optional[tuple] = None
    inverse: bool = False
    tried: int = 0

    @property
    def connected(self) -> bool:
        return self.verdict.startswith("connected")


def orbit_membership_check(entry_id: str, p1: Mapping, p2: Mapping, count: int = 1000) -> MembershipReport:
    """Certificate of different orbits, or a sampled search for g (or g^-1) with g . J_p1 = J_p2."""
    p1 = {k: F(v) for k, v in p1.items()}
    p2 = {k: F(v) for k, v in p2.items()}
    if orbit_invariant(entry_id, p1) != orbit_invariant(entry_id, p2):
        return MembershipReport("different orbits (certificate)")
    if p1 == p2:
        return MembershipReport("connected by identity", ("identity", {}))
    if _family(entry_id) == "n5":
        g = group_element(entry_id, "phi", p2).inverse() @ group_element(entry_id, "phi", p1)
        if act(entry_id, g, p1) == p2:
            return MembershipReport("connected by element phi(p2)^-1 phi(p1)", ("phi-composite", {}), tried=1)
    e = catalog.get(entry_id)
    J1, J2 = e.build(p1)[1].J, e.build(p2)[1].J
    fam = _family(entry_id)
    tried = 0
    for tag, gp in sample_elements(entry_id, count):
        g = _element(fam, tag, gp)
        # g J1 g^-1 = J2, or g^-1 J1 g = J2
        for inv, hit in ((False, lambda: g @ J1 == J2 @ g), (True, lambda: J1 @ g == g @ J2)):
            tried += 1
            if hit():
                word = f"{tag}{'^-1' if inv else ''}"
                return MembershipReport(f"connected by element {word}", (tag, gp), inv, tried)
    return MembershipReport("invariants equal, no witness found in sample", tried=tried)


# ---------------------------------------------------------------- aff(C) recognition

AFFC_TABLE = catalog.AFF_C


def _affc():
    return catalog.instantiate("affC-J1")[0]


@dataclass
class PipelineReport:
    ok: bool
    basis_change: Mat
    bracket_matches: bool
    structure_matches: bool
    details: dict


def recognize_affc_j1(c, d, x, y) -> PipelineReport:
    """Basis change taking the (c, d, x, y) algebra with Jf1 = f2, Jf3 = f4 to (aff(C), J1)."""
    c, d, x, y = F(c), F(d), F(x), F(y)
    if c * c + d * d == 0:
        raise DegenerateElement("c^2 + d^2 must be non-zero")
    L, Js = catalog.instantiate("affC-recog", {"c": c, "d": d, "x": x, "y": y})
    J = Js.J
    f1, f2, f3, f4 = unit_vectors(4)
    n = c * c + d * d
    t1 = combine((c / n, d / n), (f1, f2), 4)
    t2 = J.apply(t1)
    w = L.bracket(t1, t2)
    xp, yp = w[2], w[3]
    e1 = combine((1, -yp / 2, xp / 2), (t1, f3, f4), 4)
    e2 = combine((-1, xp / 2, yp / 2), (t2, f3, f4), 4)
    Q = Mat.from_columns([e1, e2, f3, f4])
    P = Q.inverse()
    target, J1 = catalog.instantiate("affC-J1")
    br_ok = transport(L, P) == target
    j_ok = P @ J @ Q == J1.J
    return PipelineReport(br_ok and j_ok, P, br_ok, j_ok, {"x'": xp, "y'": yp})


def nonproper_to_j2(a, b, p, q) -> PipelineReport:
    """Basis change f~1, f~2, e3, e4 followed by diag(1, 1, [[-a, b], [-b, -a]]), landing on J2.

    Also records the structure in the intermediate basis, which is the
    negative of the block matrix [[0, B], [-B^-1, 0]].
    """
    a, b, p, q = F(a), F(b), F(p), F(q)
    n = a * a + b * b
    if n == 0:
        raise DegenerateElement("a^2 + b^2 must be non-zero")
    L, Js = catalog.instantiate("affC-nonproper", {"a": a, "b": b, "p": p, "q": q})
    J = Js.J
    e3, e4 = unit_vectors(4)[2:]
    f1, f2 = J.apply(e3), J.apply(e4)
    t1 = combine((a / n, -b / n), (f1, f2), 4)
    t2 = combine((b / n, a / n), (f1, f2), 4)
    Q = Mat.from_columns([t1, t2, e3, e4])
    Jmid = Q.inverse() @ J @ Q
    mid_ok = transport(L, Q.inverse()) == _affc()
    phi = _affc_phi_ab({"a": a, "b": b})
    P = phi @ Q.inverse()
    J2 = catalog.instantiate("affC-J2")[1].J
    j_ok = P @ J == J2 @ P
    br_ok = is_isomorphism(L, _affc(), P)
    return PipelineReport(br_ok and j_ok, P, br_ok and mid_ok, j_ok,
                          {"intermediate J": Jmid, "matches -J_(a,b)": Jmid == -catalog.j_ab_block(a, b)})
