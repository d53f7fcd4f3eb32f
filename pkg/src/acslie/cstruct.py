"""Endomorphisms J with J^2 = -I on a Lie algebra and their integrability classes.

Column convention throughout: column c of ``J`` holds the coordinates of
``J e_c``, so "J e1 = e2" puts e2's coordinates in column 1.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Optional, Sequence

from acslie.lie import (
    LieAlgebra,
    bracket_subspace,
    center,
    commutator_subspace,
    derivation_equations,
    is_ideal,
    lower_central_series,
    restrict,
    restrict_map,
)
from acslie.linalg import (
    QI,
    GaussianRational,
    Mat,
    Subspace,
    inertia,
    kernel_basis,
    unit_vectors,
)


class NotAnAcsError(ValueError):
    pass


class BFormUndefined(ValueError):
    pass


class AlmostComplexStructure:
    """A rational matrix J with J^2 = -I (checked)."""

    __slots__ = ("dim", "J")

    def __init__(self, J: Mat):
        if not isinstance(J, Mat):
            J = Mat(J)
        if not J.is_square() or J.rows % 2:
            raise NotAnAcsError("J must be square of even size")
        if J @ J != -Mat.identity(J.rows):
            raise NotAnAcsError("J^2 != -I")
        self.dim = J.rows
        self.J = J

    @classmethod
    def from_images(cls, dim: int, images: Mapping[int, Sequence]) -> "AlmostComplexStructure":
        """Build J from some images J e_c (0-based c), completing with J(Jx) = -x.

        The given vectors together with their prescribed images must determine
        J on a basis; inconsistent data raises :class:`NotAnAcsError`.
        """
        pairs = []
        for c, v in images.items():
            e = tuple(Fraction(int(k == c)) for k in range(dim))
            v = tuple(Fraction(x) for x in v)
            pairs.append((e, v))
            pairs.append((v, tuple(-x for x in e)))
        chosen = []
        span = Subspace.zero(dim)
        for x, y in pairs:
            if x not in span:
                chosen.append((x, y))
                span = Subspace(dim, span.basis + (x,))
        if span.dim != dim:
            raise NotAnAcsError("images do not determine J on a basis")
        X = Mat.from_columns([x for x, _ in chosen], dim)
        Y = Mat.from_columns([y for _, y in chosen], dim)
        J = Y @ X.inverse()
        for x, y in pairs:
            if J.apply(x) != y:
                raise NotAnAcsError("inconsistent images for J")
        return cls(J)

    def apply(self, v) -> tuple:
        return self.J.apply(v)

    def __neg__(self):
        return AlmostComplexStructure(-self.J)

    def __eq__(self, other):
        if isinstance(other, AlmostComplexStructure):
            return self.J == other.J
        if isinstance(other, Mat):
            return self.J == other
        return NotImplemented

    def __hash__(self):
        return hash(self.J)

    def __repr__(self):
        return f"AlmostComplexStructure({self.J!r})"


def _as_mat(J) -> Mat:
    return J.J if isinstance(J, AlmostComplexStructure) else J


@dataclass(frozen=True)
class StructureReport:
    is_acs: bool
    integrable: bool
    abelian: bool
    bi_invariant: bool
    witnesses: Mapping[str, tuple] = field(default_factory=dict)

    def flags(self) -> tuple:
        return (self.is_acs, self.integrable, self.abelian, self.bi_invariant)


def check_structure(L: LieAlgebra, J) -> StructureReport:
    """Exact truth of the Nijenhuis, abelian and bi-invariance identities on basis pairs.

    Witnesses are 1-based basis pairs (i, j) where an identity fails.
    """
    J = _as_mat(J)
    n = L.dim
    if J.rows != n or J.cols != n:
        raise ValueError(f"dimension mismatch: algebra has dim {n}, J is {J.rows}x{J.cols}")
    is_acs = J @ J == -Mat.identity(n)
    basis = unit_vectors(n)
    Jb = J.columns()
    nij, abel, bi = [], [], []
    for i in range(n):
        for j in range(n):
            xy = L.basis_bracket(i, j)
            Jx_y = L.bracket(Jb[i], basis[j])
            if J.apply(xy) != Jx_y:
                bi.append((i + 1, j + 1))
            if j <= i:
                continue
            x_Jy = L.bracket(basis[i], Jb[j])
            Jx_Jy = L.bracket(Jb[i], Jb[j])
            if Jx_Jy != xy:
                abel.append((i + 1, j + 1))
            # J[x,y] - [Jx,y] - [x,Jy] - J[Jx,Jy]
            lhs = J.apply(tuple(a - b for a, b in zip(xy, Jx_Jy)))
            if any(a - b - c for a, b, c in zip(lhs, Jx_y, x_Jy)):
                nij.append((i + 1, j + 1))
    witnesses = {}
    if nij:
        witnesses["integrable"] = tuple(nij)
    if abel:
        witnesses["abelian"] = tuple(abel)
    if bi:
        witnesses["bi_invariant"] = tuple(bi)
    return StructureReport(is_acs, is_acs and not nij, is_acs and not abel, is_acs and not bi, witnesses)


@dataclass(frozen=True)
class OneZeroReport:
    space: Subspace
    is_subalgebra: bool
    is_abelian_subalgebra: bool
    is_ideal: bool


def one_zero_subalgebra(L: LieAlgebra, J) -> OneZeroReport:
    """The i-eigenspace g^{1,0} of J in the complexification, with bracket-closure flags.

    Independent of :func:`check_structure`: works with the complex-bilinear
    extension of the bracket on an eigenbasis found by row reduction over Q(i).
    """
    J = _as_mat(J)
    n = L.dim
    i_unit = GaussianRational(0, 1)
    shifted = Mat([[J[r, c] - (i_unit if r == c else 0) for c in range(n)] for r in range(n)], n, field=QI)
    V = kernel_basis(shifted)
    vecs = V.basis
    brackets = [b for a, u in enumerate(vecs) for v in vecs[a + 1:] if any(b := L.bracket(u, v))]
    is_abel = not brackets
    is_sub = is_abel or _spans_within(V, brackets)
    is_id = _spans_within(V, [L.bracket(e, v) for e in unit_vectors(n) for v in vecs])
    return OneZeroReport(V, is_sub, is_abel, is_id)


def _spans_within(V: Subspace, vectors) -> bool:
    vectors = [v for v in vectors if any(v)]
    return not vectors or Subspace(V.ambient_dim, V.basis + tuple(vectors), V.field).dim == V.dim


def j_image(U: Subspace, J) -> Subspace:
    return U.image(_as_mat(J))


def j_saturate(U: Subspace, J) -> Subspace:
    """U + JU."""
    return U + j_image(U, J)


def gJ_prime(L: LieAlgebra, J):
    """(g' + J g', proper) where proper means g' + J g' is a proper subspace."""
    gJ = j_saturate(commutator_subspace(L), J)
    return gJ, gJ.dim < L.dim


def gJ_series(L: LieAlgebra, J):
    """Dimensions of g^i + J g^i along the lower central series, and whether they strictly drop."""
    dims = [j_saturate(term, J).dim for term in lower_central_series(L)]
    strict = all(a > b for a, b in zip(dims, dims[1:]))
    return dims, strict


def j_stable_complement(U: Subspace, J) -> Subspace:
    """A J-stable complement of the J-stable subspace U.

    Canonical: walk the echelon-extension vectors of U in order and add
    ``w, Jw`` whenever ``w`` is not yet covered.
    """
    J = _as_mat(J)
    if not U.is_stable(J):
        raise ValueError("subspace is not J-stable")
    n = U.ambient_dim
    covered = U
    vecs = []
    for w in U.complement_basis():
        if w in covered:
            continue
        Jw = J.apply(w)
        vecs.extend((w, Jw))
        covered = Subspace(n, covered.basis + (w, Jw))
    return Subspace(n, vecs)


def bform_matrix(L: LieAlgebra, J):
    """Gram matrix of B on a J-stable complement v of the centre, [x, Jy] = B(x, y) z0."""
    J = _as_mat(J)
    gp = commutator_subspace(L)
    if gp.dim != 1:
        raise BFormUndefined(f"B undefined: dim g' = {gp.dim}, need 1")
    Z = center(L)
    if not gp <= Z:
        raise BFormUndefined("B undefined: g' is not central")
    v = j_stable_complement(Z, J)
    vecs = v.basis
    B = Mat([[gp.coordinates(L.bracket(x, J.apply(y)))[0] for y in vecs] for x in vecs], len(vecs))
    return B, v


def bform_signature(L: LieAlgebra, J):
    """Inertia of B as the pair (negative index, positive index).

    This ordering is the one under which the Heisenberg structures with r
    sign flips give (2r, 2(n - r)); z0 is the canonical basis vector of g'.
    """
    B, _ = bform_matrix(L, J)
    if B != B.T:
        raise ValueError("B is not symmetric (J is not abelian)")
    pos, neg, zero = inertia(B)
    if zero:
        raise ValueError("B is degenerate on the complement of the centre")
    return neg, pos


def pair_derivation_space(L: LieAlgebra, J) -> list:
    """Basis of {D : D and D J are both derivations of L}."""
    J = _as_mat(J)
    n = L.dim
    rows = derivation_equations(L)
    # (DJ)[a][b] = sum_m D[a][m] J[m][b]
    rows_dj = []
    for row in rows:
        new = [Fraction(0)] * (n * n)
        for key, c in enumerate(row):
            if not c:
                continue
            a, b = divmod(key, n)
            for m in range(n):
                jm = J[m, b]
                if jm:
                    new[a * n + m] += c * jm
        rows_dj.append(new)
    allrows = rows + rows_dj
    if not allrows:
        return [Mat([v[a * n:(a + 1) * n] for a in range(n)], n) for v in unit_vectors(n * n)]
    k = kernel_basis(Mat(allrows, n * n))
    return [Mat([v[a * n:(a + 1) * n] for a in range(n)], n) for v in k.basis]


def ad_antilinearity_check(L: LieAlgebra, J) -> bool:
    """ad_{Jx} = -ad_x J for every basis vector x."""
    J = _as_mat(J)
    for i, e in enumerate(unit_vectors(L.dim)):
        if L.ad(J.apply(e)) != -(L.ad_basis(i) @ J):
            return False
    return True


def conjugate_structure(J, P: Mat) -> AlmostComplexStructure:
    """P J P^-1."""
    try:
        Pinv = P.inverse()
    except ZeroDivisionError:
        raise ValueError("singular P") from None
    return AlmostComplexStructure(P @ _as_mat(J) @ Pinv)


def restrict_structure(L: LieAlgebra, J, U: Subspace):
    """(subalgebra U, J restricted to U) in U's canonical basis; U must be J-stable."""
    J = _as_mat(J)
    if not U.is_stable(J):
        raise ValueError("subspace is not J-stable")
    return restrict(L, U), AlmostComplexStructure(restrict_map(J, U))


def center_is_j_stable(L: LieAlgebra, J) -> bool:
    return center(L).is_stable(_as_mat(J))


def is_j_stable_ideal(L: LieAlgebra, J, U: Subspace) -> bool:
    return U.is_stable(_as_mat(J)) and is_ideal(L, U)


def restricted_bracket_vanishes(L: LieAlgebra, U: Subspace) -> bool:
    return bracket_subspace(L, U, U).dim == 0


def kernel_of_ad_on(L: LieAlgebra, x, V: Subspace) -> Subspace:
    """ker(ad_x restricted to V), as a subspace of the ambient space."""
    imgs = [L.bracket(x, v) for v in V.basis]
    # coefficients a with sum a_k [x, v_k] = 0
    k = kernel_basis(Mat.from_columns(imgs, L.dim)) if imgs else Subspace.zero(0)
    out = []
    for a in k.basis:
        vec = [Fraction(0)] * L.dim
        for coef, v in zip(a, V.basis):
            if coef:
                for idx, comp in enumerate(v):
                    vec[idx] += coef * comp
        out.append(vec)
    return Subspace(L.dim, out)


def optional_signature(L: LieAlgebra, J) -> Optional[tuple]:
    try:
        return bform_signature(L, J)
    except BFormUndefined:
        return None


def commutator_derivation_relation(L: LieAlgebra, J):
    """Check ad_{[f1,f2]} = D J D - D^2 J on g'_J, where f1, f2 = J f1 span a J-stable complement of g'_J
    and D = ad_{f1} restricted to g'_J. Also reports whether ad_{f2} = -D J there.

    Returns (relation holds, ad_{f2} = -DJ holds). Needs dim g'_J = dim L - 2.
    """
    J = _as_mat(J)
    gJ, _ = gJ_prime(L, J)
    if gJ.dim != L.dim - 2:
        raise ValueError("needs dim g'_J = dim g - 2")
    comp = j_stable_complement(gJ, J)
    f1 = comp.basis[0]
    f2 = J.apply(f1)
    Jr = restrict_map(J, gJ)
    D = restrict_map(L.ad(f1), gJ)
    lhs = restrict_map(L.ad(L.bracket(f1, f2)), gJ)
    rel = lhs == D @ Jr @ D - D @ D @ Jr
    anti = restrict_map(L.ad(f2), gJ) == -(D @ Jr)
    return rel, anti
