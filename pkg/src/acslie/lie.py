"""Lie algebras given by structure constants, and the J-independent toolkit.

Basis vectors are 0-based in code and 1-based (``e1 .. en``) in every
rendered message, file and report.
"""
from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from acslie.linalg import (
    Mat,
    Subspace,
    combine,
    format_vector,
    kernel_basis,
    unit_vector,
    unit_vectors,
)


class JacobiError(ValueError):
    def __init__(self, violations):
        self.violations = violations
        first = violations[0]
        super().__init__(
            f"Jacobi identity fails at e{first[0]}, e{first[1]}, e{first[2]} "
            f"(residual {format_vector(first[3])}); {len(violations)} failing triple(s)"
        )


class NotAnIdealError(ValueError):
    pass


class LieAlgebra:
    """Finite-dimensional Lie algebra over Q.

    ``brackets`` maps 0-based pairs ``(i, j)`` with ``i < j`` to the
    coordinate vector of ``[e_i, e_j]``; antisymmetry is by construction.
    The default constructor verifies the Jacobi identity; pass
    ``check=False`` for raw tables (see :func:`jacobi_violations`).
    """

    __slots__ = ("dim", "brackets", "labels", "name", "_sparse")

    def __init__(self, dim: int, brackets: Mapping, labels: Optional[Sequence[str]] = None,
                 name: Optional[str] = None, check: bool = True):
        self.dim = dim
        table = {}
        for (i, j), v in brackets.items():
            if not (0 <= i < dim and 0 <= j < dim) or i == j:
                raise ValueError(f"bad bracket index pair ({i + 1}, {j + 1})")
            v = tuple(Fraction(x) for x in v)
            if len(v) != dim:
                raise ValueError("bracket vector has wrong length")
            if i > j:
                i, j, v = j, i, tuple(-x for x in v)
            if (i, j) in table:
                raise ValueError(f"duplicate bracket [e{i + 1}, e{j + 1}]")
            if any(v):
                table[(i, j)] = v
        self.brackets = table
        self.labels = tuple(labels) if labels else None
        self.name = name
        sparse = {}
        for (i, j), v in table.items():
            nz = tuple((k, x) for k, x in enumerate(v) if x)
            sparse[(i, j)] = nz
            sparse[(j, i)] = tuple((k, -x) for k, x in nz)
        self._sparse = sparse
        if check:
            bad = jacobi_violations(self)
            if bad:
                raise JacobiError(bad)

    @classmethod
    def from_table(cls, dim: int, table: Iterable, **kw) -> "LieAlgebra":
        """Build from 1-based entries ``(i, j, {k: coeff})`` meaning [e_i, e_j] = sum coeff e_k."""
        brackets = {}
        for i, j, res in table:
            v = [Fraction(0)] * dim
            for k, c in res.items():
                v[k - 1] += Fraction(c)
            key = (i - 1, j - 1)
            if key in brackets or (key[1], key[0]) in brackets:
                raise ValueError(f"duplicate bracket [e{i}, e{j}]")
            brackets[key] = v
        return cls(dim, brackets, **kw)

    @classmethod
    def abelian(cls, dim: int, **kw) -> "LieAlgebra":
        return cls(dim, {}, **kw)

    def basis_bracket(self, i: int, j: int) -> tuple:
        out = [Fraction(0)] * self.dim
        for k, x in self._sparse.get((i, j), ()):
            out[k] = x
        return tuple(out)

    def bracket(self, x: Sequence, y: Sequence) -> tuple:
        """[x, y] for coordinate vectors x, y (entries may lie in Q or Q(i))."""
        out = [Fraction(0)] * self.dim
        sp = self._sparse
        for i, a in enumerate(x):
            if not a:
                continue
            for j, b in enumerate(y):
                if not b or i == j:
                    continue
                terms = sp.get((i, j))
                if terms:
                    ab = a * b
                    for k, c in terms:
                        out[k] = out[k] + ab * c
        return tuple(out)

    def ad(self, x: Sequence) -> Mat:
        """Matrix of ad_x (column j is [x, e_j])."""
        return Mat.from_columns([self.bracket(x, e) for e in unit_vectors(self.dim)], self.dim)

    def ad_basis(self, i: int) -> Mat:
        return self.ad(unit_vector(self.dim, i))

    def is_abelian(self) -> bool:
        return not self.brackets

    def basis_labels(self) -> tuple:
        return self.labels or tuple(f"e{i + 1}" for i in range(self.dim))

    def table_lines(self) -> list:
        lab = self.basis_labels()
        return [f"[{lab[i]},{lab[j]}] = {format_vector(v, lab)}" for (i, j), v in sorted(self.brackets.items())]

    def __eq__(self, other):
        if not isinstance(other, LieAlgebra):
            return NotImplemented
        return self.dim == other.dim and self.brackets == other.brackets

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.brackets.items()))))

    def __repr__(self):
        tag = self.name or f"LieAlgebra(dim={self.dim})"
        return f"<{tag}: " + ", ".join(self.table_lines()) + ">"


def jacobi_violations(L: LieAlgebra) -> list:
    """Triples (i, j, k), 1-based with i < j < k, whose cyclic Jacobi sum is nonzero."""
    n = L.dim
    basis = unit_vectors(n)
    out = []
    for i in range(n):
        for j in range(i + 1, n):
            for k in range(j + 1, n):
                r1 = L.bracket(L.basis_bracket(i, j), basis[k])
                r2 = L.bracket(L.basis_bracket(j, k), basis[i])
                r3 = L.bracket(L.basis_bracket(k, i), basis[j])
                res = tuple(a + b + c for a, b, c in zip(r1, r2, r3))
                if any(res):
                    out.append((i + 1, j + 1, k + 1, res))
    return out


def bracket_subspace(L: LieAlgebra, U: Subspace, V: Subspace) -> Subspace:
    """span{[u, v] : u in U, v in V}."""
    return Subspace(L.dim, [L.bracket(u, v) for u in U.basis for v in V.basis])


def commutator_subspace(L: LieAlgebra) -> Subspace:
    return Subspace(L.dim, L.brackets.values())


def _series(L: LieAlgebra, step) -> list:
    terms = [Subspace.full(L.dim)]
    while True:
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt.dim == 0 or nxt == terms[-2]:
            return terms


def lower_central_series(L: LieAlgebra) -> list:
    """g^0 = g, g^i = [g, g^(i-1)], until it reaches 0 or repeats."""
    full = Subspace.full(L.dim)
    return _series(L, lambda t: bracket_subspace(L, full, t))


def derived_series(L: LieAlgebra) -> list:
    """g, [g, g], [g', g'], ... until it reaches 0 or repeats."""
    return _series(L, lambda t: bracket_subspace(L, t, t))


def nilpotency_class(L: LieAlgebra) -> Optional[int]:
    """Least k with g^k = 0 (1 for abelian algebras), None if not nilpotent."""
    lcs = lower_central_series(L)
    if lcs[-1].dim != 0:
        return None
    return len(lcs) - 1


def is_nilpotent(L: LieAlgebra) -> bool:
    return lower_central_series(L)[-1].dim == 0


def is_solvable(L: LieAlgebra) -> bool:
    return derived_series(L)[-1].dim == 0


def _stack(mats: Iterable[Mat], ncols: int) -> Mat:
    rows = [row for m in mats for row in m.entries]
    return Mat(rows, ncols) if rows else Mat.zeros(0, ncols)


def center(L: LieAlgebra) -> Subspace:
    """Intersection of the kernels of ad_{e_i}."""
    return kernel_basis(_stack((L.ad_basis(i) for i in range(L.dim)), L.dim))


def is_ideal(L: LieAlgebra, U: Subspace) -> bool:
    return all(L.bracket(e, u) in U for e in unit_vectors(L.dim) for u in U.basis)


def is_subalgebra(L: LieAlgebra, U: Subspace) -> bool:
    return all(L.bracket(u, v) in U for u in U.basis for v in U.basis)


def centralizer_kernel(L: LieAlgebra, U: Subspace) -> Subspace:
    """{x : [x, U] = 0} for an ideal U; the kernel of x -> ad_x restricted to U."""
    if not is_ideal(L, U):
        raise NotAnIdealError(f"{U!r} is not an ideal")
    return kernel_basis(_stack((L.ad(u) for u in U.basis), L.dim))


def is_unimodular(L: LieAlgebra) -> bool:
    return all(L.ad_basis(i).trace() == 0 for i in range(L.dim))


def derivation_equations(L: LieAlgebra) -> list:
    """Rows of the linear system D[e_i,e_j] = [De_i,e_j] + [e_i,De_j].

    Unknown D[a][b] sits at column a*n + b.
    """
    n = L.dim
    sp = L._sparse
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            lhs = sp.get((i, j), ())
            # coefficient maps per output coordinate l
            acc = [dict() for _ in range(n)]
            for k, c in lhs:
                for l in range(n):
                    key = l * n + k
                    acc[l][key] = acc[l].get(key, 0) + c
            for m in range(n):
                for l, c in sp.get((m, j), ()):
                    key = m * n + i
                    acc[l][key] = acc[l].get(key, 0) - c
                for l, c in sp.get((i, m), ()):
                    key = m * n + j
                    acc[l][key] = acc[l].get(key, 0) - c
            for l in range(n):
                if any(acc[l].values()):
                    row = [Fraction(0)] * (n * n)
                    for key, c in acc[l].items():
                        row[key] = Fraction(c)
                    rows.append(row)
    return rows


def _vec_to_mat(v, n) -> Mat:
    return Mat([v[a * n:(a + 1) * n] for a in range(n)], n)


def derivation_space(L: LieAlgebra) -> list:
    """Basis of Der(L) as matrices, from one linear solve over all basis pairs."""
    n = L.dim
    rows = derivation_equations(L)
    if not rows:
        return [_vec_to_mat(v, n) for v in unit_vectors(n * n)]
    k = kernel_basis(Mat(rows, n * n))
    return [_vec_to_mat(v, n) for v in k.basis]


def is_derivation(L: LieAlgebra, D: Mat) -> bool:
    n = L.dim
    basis = unit_vectors(n)
    for i in range(n):
        for j in range(i + 1, n):
            lhs = D.apply(L.basis_bracket(i, j))
            r1 = L.bracket(D.apply(basis[i]), basis[j])
            r2 = L.bracket(basis[i], D.apply(basis[j]))
            if any(a - b - c for a, b, c in zip(lhs, r1, r2)):
                return False
    return True


def is_homomorphism(L1: LieAlgebra, L2: LieAlgebra, P: Mat) -> bool:
    n = L1.dim
    cols = P.columns()
    for i in range(n):
        for j in range(i + 1, n):
            if P.apply(L1.basis_bracket(i, j)) != L2.bracket(cols[i], cols[j]):
                return False
    return True


def is_isomorphism(L1: LieAlgebra, L2: LieAlgebra, P: Mat) -> bool:
    """P invertible and P[x, y] = [Px, Py] on all basis pairs."""
    if L1.dim != L2.dim or P.rows != L2.dim or P.cols != L1.dim:
        raise ValueError("dimension mismatch")
    return P.is_invertible() and is_homomorphism(L1, L2, P)


def transport(L: LieAlgebra, P: Mat, **kw) -> LieAlgebra:
    """The algebra on the same space for which P: L -> result is an isomorphism."""
    Pinv = P.inverse()
    cols = Pinv.columns()
    n = L.dim
    brackets = {}
    for i in range(n):
        for j in range(i + 1, n):
            v = P.apply(L.bracket(cols[i], cols[j]))
            if any(v):
                brackets[(i, j)] = v
    return LieAlgebra(n, brackets, **kw)


def direct_sum(L1: LieAlgebra, L2: LieAlgebra, **kw) -> LieAlgebra:
    n1, n = L1.dim, L1.dim + L2.dim
    brackets = {}
    for (i, j), v in L1.brackets.items():
        brackets[(i, j)] = tuple(v) + (Fraction(0),) * L2.dim
    for (i, j), v in L2.brackets.items():
        brackets[(n1 + i, n1 + j)] = (Fraction(0),) * n1 + tuple(v)
    if "labels" not in kw and (L1.labels or L2.labels):
        kw["labels"] = L1.basis_labels() + L2.basis_labels()
    return LieAlgebra(n, brackets, **kw)


def restrict(L: LieAlgebra, U: Subspace) -> LieAlgebra:
    """The subalgebra U written in its canonical basis."""
    if not is_subalgebra(L, U):
        raise ValueError(f"{U!r} is not a subalgebra")
    m = U.dim
    brackets = {}
    for a in range(m):
        for b in range(a + 1, m):
            v = U.coordinates(L.bracket(U.basis[a], U.basis[b]))
            if any(v):
                brackets[(a, b)] = v
    return LieAlgebra(m, brackets, check=False)


def restrict_map(M: Mat, U: Subspace) -> Mat:
    """Matrix of M restricted to an M-stable subspace U, in U's canonical basis."""
    return Mat.from_columns([U.coordinates(M.apply(u)) for u in U.basis], U.dim)


def span_of(n: int, vectors) -> Subspace:
    return Subspace(n, vectors)


def embed(U: Subspace, coords: Sequence) -> tuple:
    return combine(coords, U.basis, U.ambient_dim)
