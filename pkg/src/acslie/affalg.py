"""Commutative associative algebras and aff(A) = A + A with its standard complex structure.

Bracket and structure on aff(A), with u_i = (a_i, 0) and w_i = (0, a_i):
``[(x, y), (x', y')] = (0, x y' - x' y)`` and ``J(x, y) = (-y, x)``, so
``[u_i, w_j] = a_i a_j`` (as a w-vector), ``J u_i = w_i`` and ``J w_i = -u_i``.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence

from acslie.cstruct import AlmostComplexStructure, _as_mat
from acslie.lie import LieAlgebra, commutator_subspace
from acslie.linalg import Mat, Subspace, inertia, kernel_basis, solve_linear, unit_vectors

F = Fraction


class CommAssocAlgebra:
    """Commutative algebra with basis a_1..a_m and a_i a_j = sum_k mult[(i, j)][k] a_k (0-based, i <= j)."""

    def __init__(self, dim: int, mult: Mapping, name: Optional[str] = None):
        self.dim = dim
        self.name = name
        self.mult = {}
        for (i, j), v in mult.items():
            key = (min(i, j), max(i, j))
            vec = tuple(F(x) for x in v)
            if len(vec) != dim:
                raise ValueError(f"product {key} has {len(vec)} coordinates, expected {dim}")
            if key in self.mult and self.mult[key] != vec:
                raise ValueError(f"conflicting entries for product {key}")
            if any(vec):
                self.mult[key] = vec

    @classmethod
    def from_table(cls, dim: int, table: Iterable, **kw) -> "CommAssocAlgebra":
        """``table`` lines are (i, j, {k: c}) with 1-based indices."""
        mult = {}
        for i, j, res in table:
            v = [F(0)] * dim
            for k, c in res.items():
                v[k - 1] += F(c)
            mult[(i - 1, j - 1)] = v
        return cls(dim, mult, **kw)

    def basis_product(self, i: int, j: int) -> tuple:
        return self.mult.get((min(i, j), max(i, j)), (F(0),) * self.dim)

    def product(self, x: Sequence, y: Sequence) -> tuple:
        out = [F(0)] * self.dim
        for i, xi in enumerate(x):
            if not xi:
                continue
            for j, yj in enumerate(y):
                if not yj:
                    continue
                for k, c in enumerate(self.basis_product(i, j)):
                    if c:
                        out[k] += xi * yj * c
        return tuple(out)

    def left_mult(self, x: Sequence) -> Mat:
        return Mat.from_columns([self.product(x, e) for e in unit_vectors(self.dim)], self.dim)

    def table_lines(self) -> list:
        return [(i + 1, j + 1, {k + 1: c for k, c in enumerate(v) if c}) for (i, j), v in sorted(self.mult.items())]

    def __eq__(self, other):
        return isinstance(other, CommAssocAlgebra) and self.dim == other.dim and self.mult == other.mult

    def __hash__(self):
        return hash((self.dim, tuple(sorted(self.mult.items()))))

    def __repr__(self):
        return f"CommAssocAlgebra(dim={self.dim}, name={self.name!r})"


def check_assoc(A: CommAssocAlgebra) -> list:
    """Basis triples (i, j, k), 0-based, with (a_i a_j) a_k != a_i (a_j a_k)."""
    E = unit_vectors(A.dim)
    bad = []
    for i in range(A.dim):
        for j in range(A.dim):
            for k in range(A.dim):
                if A.product(A.basis_product(i, j), E[k]) != A.product(E[i], A.basis_product(j, k)):
                    bad.append((i, j, k))
    return bad


def square_subspace(A: CommAssocAlgebra) -> Subspace:
    """A^2 = span of all basis products."""
    return Subspace(A.dim, A.mult.values())


def unit(A: CommAssocAlgebra) -> Optional[tuple]:
    """The identity element, or None. Solves u a_i = a_i for every i."""
    m = A.dim
    rows, rhs = [], []
    for i in range(m):
        for l in range(m):
            rows.append([A.basis_product(k, i)[l] for k in range(m)])
            rhs.append(F(1) if i == l else F(0))
    return solve_linear(Mat(rows, m), rhs)


def has_unit(A: CommAssocAlgebra) -> bool:
    return unit(A) is not None


def trace_form(A: CommAssocAlgebra) -> Mat:
    """T[i][j] = tr(L_{a_i a_j})."""
    m = A.dim
    return Mat([[A.left_mult(A.basis_product(i, j)).trace() for j in range(m)] for i in range(m)], m)


def nilradical(A: CommAssocAlgebra) -> Subspace:
    """Radical of the trace form; over Q this is the ideal of nilpotent elements."""
    return kernel_basis(trace_form(A))


def annihilator(A: CommAssocAlgebra) -> Subspace:
    """{x : x A = 0}."""
    m = A.dim
    rows = []
    for j in range(m):
        for l in range(m):
            rows.append([A.basis_product(k, j)[l] for k in range(m)])
    return kernel_basis(Mat(rows, m))


@dataclass(frozen=True)
class AssocInvariants:
    nilradical: int
    annihilator: int
    square: int
    nilradical_square: int
    trace_inertia: tuple

    def as_tuple(self) -> tuple:
        return (self.nilradical, self.annihilator, self.square, self.nilradical_square, self.trace_inertia)


def invariants(A: CommAssocAlgebra) -> AssocInvariants:
    N = nilradical(A)
    n2 = Subspace(A.dim, [A.product(x, y) for x in N.basis for y in N.basis])
    return AssocInvariants(N.dim, annihilator(A).dim, square_subspace(A).dim, n2.dim, inertia(trace_form(A)))


def aff_of(A: CommAssocAlgebra, name: Optional[str] = None):
    """(aff(A), J) in the basis u_1..u_m, w_1..w_m."""
    m = A.dim
    brackets = {}
    for i in range(m):
        for j in range(m):
            v = A.basis_product(i, j)
            if any(v):
                brackets[(i, m + j)] = (F(0),) * m + v
    labels = tuple(f"u{i}" for i in range(1, m + 1)) + tuple(f"w{i}" for i in range(1, m + 1))
    L = LieAlgebra(2 * m, brackets, labels=labels, name=name or (f"aff({A.name})" if A.name else None))
    J = AlmostComplexStructure.from_images(2 * m, {i: unit_vectors(2 * m)[m + i] for i in range(m)})
    return L, J


# ---------------------------------------------------------------- A1..A5

def _e(i, j):
    M = [[0] * 3 for _ in range(3)]
    M[i - 1][j - 1] = 1
    return Mat(M)


REALIZATIONS = {
    "A1": (_e(1, 1), _e(2, 2), _e(3, 3)),
    "A2": (_e(1, 1), _e(2, 2) + _e(3, 3), _e(3, 2) - _e(2, 3)),
    "A3": (_e(1, 1), _e(2, 2) + _e(3, 3), _e(2, 3)),
    "A4": (Mat.identity(3), _e(1, 2) + _e(2, 3), _e(1, 3)),
    "A5": (Mat.identity(3), _e(2, 3), _e(1, 3)),
}


def table_from_realization(mats: Sequence[Mat]) -> list:
    """Multiplication table (1-based lines) of the span of commuting matrices, in the given basis."""
    m = len(mats)
    flat = Mat([[M[r, c] for M in mats] for r in range(3) for c in range(3)], m)
    lines = []
    for i in range(m):
        for j in range(i, m):
            P = mats[i] @ mats[j]
            if P != mats[j] @ mats[i]:
                raise ValueError("matrices do not commute")
            coords = solve_linear(flat, [P[r, c] for r in range(3) for c in range(3)])
            if coords is None:
                raise ValueError("span is not closed under multiplication")
            if any(coords):
                lines.append((i + 1, j + 1, {k + 1: x for k, x in enumerate(coords) if x}))
    return lines


ASSOC_TABLES = {
    "A1": [(1, 1, {1: 1}), (2, 2, {2: 1}), (3, 3, {3: 1})],
    "A2": [(1, 1, {1: 1}), (2, 2, {2: 1}), (2, 3, {3: 1}), (3, 3, {2: -1})],
    "A3": [(1, 1, {1: 1}), (2, 2, {2: 1}), (2, 3, {3: 1})],
    "A4": [(1, 1, {1: 1}), (1, 2, {2: 1}), (1, 3, {3: 1}), (2, 2, {3: 1})],
    "A5": [(1, 1, {1: 1}), (1, 2, {2: 1}), (1, 3, {3: 1})],
}


def assoc_algebra(name: str) -> CommAssocAlgebra:
    return CommAssocAlgebra.from_table(3, ASSOC_TABLES[name], name=name)


# Where each aff(A_i) basis vector (u1, u2, u3, w1, w2, w3) lands in the catalog table: (1-based index, sign)
RELABELINGS = {
    "A1": ((1, 1), (3, 1), (5, 1), (2, 1), (4, 1), (6, 1)),
    "A2": ((1, 1), (3, 1), (4, 1), (2, 1), (5, 1), (6, 1)),
    "A3": ((1, 1), (3, 1), (5, -1), (2, 1), (4, 1), (6, 1)),
    "A4": ((1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1)),
    "A5": ((1, 1), (2, 1), (3, 1), (4, 1), (5, 1), (6, 1)),
}

CATALOG_IDS = {"A1": "thm45-1", "A2": "thm45-2", "A3": "thm45-3", "A4": "s3", "A5": "s4"}


def relabeling_matrix(name: str) -> Mat:
    """Signed permutation taking aff(A_i) coordinates to the catalog entry's coordinates."""
    cols = []
    for idx, sign in RELABELINGS[name]:
        v = [F(0)] * 6
        v[idx - 1] = F(sign)
        cols.append(v)
    return Mat.from_columns(cols, 6)


# ---------------------------------------------------------------- non-proper structures

def algebra_of_nonproper(L: LieAlgebra, J):
    """(A, basis of s') with x . y = [x, J y] on s' for a non-proper abelian J."""
    J = _as_mat(J)
    sp = commutator_subspace(L)
    if 2 * sp.dim != L.dim:
        raise ValueError("need dim s' = dim s / 2")
    basis = sp.basis
    mult = {}
    for i, x in enumerate(basis):
        for j, y in enumerate(basis):
            if i <= j:
                mult[(i, j)] = sp.coordinates(L.bracket(x, J.apply(y)))
    return CommAssocAlgebra(sp.dim, mult), basis


def phi_map(J, basis: Sequence) -> Mat:
    """phi(x, y) = y - J x from aff(A) (A spanned by ``basis``) to the ambient algebra."""
    J = _as_mat(J)
    cols = [tuple(-c for c in J.apply(b)) for b in basis] + [tuple(b) for b in basis]
    return Mat.from_columns(cols, J.rows)
