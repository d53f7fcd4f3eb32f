"""Exact scalar and linear algebra over Q and Q(i).

Scalars are :class:`fractions.Fraction` (Q) or :class:`GaussianRational`
(Q(i)); there is no floating-point path anywhere in the package. Matrices are
immutable and dense. Row reduction over Q runs through the integer
elimination kernel selected in :mod:`acslie._kernel`.
"""
from __future__ import annotations

import re
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Optional, Sequence

from acslie import _kernel

Rational = Fraction

Q = "Q"
QI = "QI"

_RATIONAL_RE = re.compile(r"\s*([+-]?\d+)(?:/(\d+))?\s*\Z")


def parse_rational(text: str) -> Fraction:
    """Parse ``"-3/2"``, ``"0"``, ``"7"``; reject anything else."""
    if not isinstance(text, str):
        raise ValueError(f"rational must be given as a string, got {text!r}")
    m = _RATIONAL_RE.match(text)
    if not m:
        raise ValueError(f"malformed rational {text!r}")
    num = int(m.group(1))
    if m.group(2) is None:
        return Fraction(num)
    den = int(m.group(2))
    if den == 0:
        raise ValueError(f"zero denominator in {text!r}")
    return Fraction(num, den)


def format_rational(q) -> str:
    q = Fraction(q)
    if q.denominator == 1:
        return str(q.numerator)
    return f"{q.numerator}/{q.denominator}"


class GaussianRational:
    """Element re + i*im of Q(i)."""

    __slots__ = ("re", "im")

    def __init__(self, re=0, im=0):
        self.re = Fraction(re)
        self.im = Fraction(im)

    @staticmethod
    def _coerce(other):
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o - self

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return GaussianRational(self.re * o.re - self.im * o.im,
                                self.re * o.im + self.im * o.re)

    __rmul__ = __mul__

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in Q(i)")
        return self * o.conjugate() * GaussianRational(1 / n)

    def __rtruediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return o / self

    def __neg__(self):
        return GaussianRational(-self.re, -self.im)

    def conjugate(self):
        return GaussianRational(self.re, -self.im)

    def norm(self) -> Fraction:
        return self.re * self.re + self.im * self.im

    def __bool__(self):
        return bool(self.re) or bool(self.im)

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.re == o.re and self.im == o.im

    def __hash__(self):
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def __repr__(self):
        if not self.im:
            return format_rational(self.re)
        if not self.re:
            return f"{format_rational(self.im)}i"
        sign = "+" if self.im > 0 else "-"
        return f"{format_rational(self.re)}{sign}{format_rational(abs(self.im))}i"


def _to_scalar(x):
    if isinstance(x, (Fraction, GaussianRational)):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact scalar: {x!r}")


class Mat:
    """Immutable dense matrix over Q or Q(i).

    ``M[r, c]`` is the entry in row ``r``, column ``c`` (0-based). Linear maps
    use the column convention: column ``c`` holds the image of basis vector
    ``c``.
    """

    __slots__ = ("rows", "cols", "entries", "field")

    def __init__(self, entries: Sequence[Sequence], cols: Optional[int] = None, field: Optional[str] = None):
        data = tuple(tuple(_to_scalar(x) for x in row) for row in entries)
        if cols is None:
            cols = len(data[0]) if data else 0
        for row in data:
            if len(row) != cols:
                raise ValueError("ragged matrix")
        if field is None:
            field = QI if any(isinstance(x, GaussianRational) for row in data for x in row) else Q
        if field == QI:
            data = tuple(tuple(x if isinstance(x, GaussianRational) else GaussianRational(x) for x in row)
                         for row in data)
        self.rows = len(data)
        self.cols = cols
        self.entries = data
        self.field = field

    @classmethod
    def identity(cls, n: int) -> "Mat":
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)], n)

    @classmethod
    def zeros(cls, rows: int, cols: int) -> "Mat":
        return cls([[0] * cols for _ in range(rows)], cols)

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], nrows: Optional[int] = None) -> "Mat":
        columns = [tuple(c) for c in columns]
        if nrows is None:
            nrows = len(columns[0]) if columns else 0
        return cls([[columns[c][r] for c in range(len(columns))] for r in range(nrows)], len(columns))

    @classmethod
    def block_diag(cls, *blocks: "Mat") -> "Mat":
        n = sum(b.rows for b in blocks)
        m = sum(b.cols for b in blocks)
        out = [[0] * m for _ in range(n)]
        r0 = c0 = 0
        for b in blocks:
            for i in range(b.rows):
                for j in range(b.cols):
                    out[r0 + i][c0 + j] = b.entries[i][j]
            r0 += b.rows
            c0 += b.cols
        return cls(out, m)

    def __getitem__(self, rc):
        r, c = rc
        return self.entries[r][c]

    def row(self, r: int) -> tuple:
        return self.entries[r]

    def column(self, c: int) -> tuple:
        return tuple(row[c] for row in self.entries)

    def columns(self) -> list:
        return [self.column(c) for c in range(self.cols)]

    @property
    def T(self) -> "Mat":
        return Mat([[self.entries[r][c] for r in range(self.rows)] for c in range(self.cols)], self.rows)

    def apply(self, v: Sequence) -> tuple:
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return tuple(sum((a * b for a, b in zip(row, v) if a and b), Fraction(0)) for row in self.entries)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            ocols = other.columns()
            return Mat([[sum((a * b for a, b in zip(row, col) if a and b), Fraction(0)) for col in ocols]
                        for row in self.entries], other.cols)
        return self.apply(other)

    def __add__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other: "Mat") -> "Mat":
        self._same_shape(other)
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.entries, other.entries)], self.cols)

    def __neg__(self) -> "Mat":
        return Mat([[-a for a in row] for row in self.entries], self.cols)

    def scale(self, k) -> "Mat":
        k = _to_scalar(k)
        return Mat([[k * a for a in row] for row in self.entries], self.cols)

    def _same_shape(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return (self.rows, self.cols) == (other.rows, other.cols) and self.entries == other.entries

    def __hash__(self):
        return hash((self.rows, self.cols, self.entries))

    def is_zero(self) -> bool:
        return not any(x for row in self.entries for x in row)

    def is_square(self) -> bool:
        return self.rows == self.cols

    def trace(self):
        return sum((self.entries[i][i] for i in range(min(self.rows, self.cols))), Fraction(0))

    def rank(self) -> int:
        return rref(self)[1]

    def inverse(self) -> "Mat":
        if not self.is_square():
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = Mat([list(self.entries[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)], 2 * n)
        red, rk = rref(aug)
        if rk < n or any(red[i, i] != 1 for i in range(n)):
            raise ZeroDivisionError("singular matrix")
        return Mat([red.entries[i][n:] for i in range(n)], n)

    def is_invertible(self) -> bool:
        return self.is_square() and self.rank() == self.rows

    def tolists(self) -> list:
        return [list(row) for row in self.entries]

    def __repr__(self):
        body = "; ".join(" ".join(repr(x) if isinstance(x, GaussianRational) else format_rational(x)
                                  for x in row) for row in self.entries)
        return f"Mat([{body}])"


def _fraction_rows_to_int(entries) -> list:
    out = []
    for row in entries:
        d = 1
        for x in row:
            if x.denominator != 1:
                d = lcm(d, x.denominator)
        if d == 1:
            out.append([x.numerator for x in row])
        else:
            out.append([x.numerator * (d // x.denominator) for x in row])
    return out


def _rref_rows_q(entries, ncols):
    rows, pivots = _kernel.int_rref(_fraction_rows_to_int(entries), ncols)
    red = []
    for row, p in zip(rows, pivots):
        piv = row[p]
        red.append(tuple(Fraction(x, piv) if x else Fraction(0) for x in row))
    return red, pivots


def _rref_rows_generic(entries, ncols):
    m = [list(row) for row in entries]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return [tuple(row) for row in m[:r]], pivots


def _gaussian_rows_to_int(entries) -> list:
    """Rows over Q(i) scaled to Gaussian integers, as lists of (re, im) int pairs."""
    out = []
    for row in entries:
        parts = [(x.re, x.im) if isinstance(x, GaussianRational) else (Fraction(x), Fraction(0)) for x in row]
        d = 1
        for a, b in parts:
            d = lcm(d, a.denominator, b.denominator)
        out.append([(a.numerator * (d // a.denominator), b.numerator * (d // b.denominator)) for a, b in parts])
    return out


def _primitive_gaussian(row):
    g = 0
    for a, b in row:
        g = gcd(g, a, b)
        if g == 1:
            return row
    return [(a // g, b // g) for a, b in row] if g > 1 else row


def _rref_rows_qi(entries, ncols):
    """Fraction-free Gauss-Jordan over Z[i]; rows are normalized by their pivots only at the end."""
    m = [_primitive_gaussian(r) for r in _gaussian_rows_to_int(entries) if any(a or b for a, b in r)]
    pivots = []
    r = 0
    for c in range(ncols):
        if r == len(m):
            break
        piv = next((i for i in range(r, len(m)) if m[i][c] != (0, 0)), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        pa, pb = m[r][c]
        prow = m[r]
        for i in range(len(m)):
            if i == r:
                continue
            fa, fb = m[i][c]
            if not (fa or fb):
                continue
            # row_i <- p row_i - f row_r
            m[i] = _primitive_gaussian([
                (pa * xa - pb * xb - (fa * ya - fb * yb), pa * xb + pb * xa - (fa * yb + fb * ya))
                for (xa, xb), (ya, yb) in zip(m[i], prow)])
        pivots.append(c)
        r += 1
    red = []
    for row, c in zip(m[:r], pivots):
        pa, pb = row[c]
        n = pa * pa + pb * pb
        # x / p = x conj(p) / |p|^2
        red.append(tuple(GaussianRational(Fraction(xa * pa + xb * pb, n), Fraction(xb * pa - xa * pb, n))
                         for xa, xb in row))
    return red, pivots


def rref_rows(entries, ncols: int, field: str = Q):
    """Row-reduce a list of rows; return (nonzero reduced rows, pivot columns)."""
    if field == Q:
        return _rref_rows_q(entries, ncols)
    return _rref_rows_qi(entries, ncols)


def rref(M: Mat):
    """Reduced row-echelon form of ``M`` and its rank (zero rows kept at the bottom)."""
    red, pivots = rref_rows(M.entries, M.cols, M.field)
    zero = Fraction(0) if M.field == Q else GaussianRational(0)
    full = list(red) + [tuple(zero for _ in range(M.cols))] * (M.rows - len(red))
    return Mat(full, M.cols, field=M.field), len(pivots)


def kernel_basis(M: Mat) -> "Subspace":
    """Canonical basis of {v : M v = 0}."""
    red, pivots = rref_rows(M.entries, M.cols, M.field)
    one = Fraction(1) if M.field == Q else GaussianRational(1)
    zero = Fraction(0) if M.field == Q else GaussianRational(0)
    pivset = set(pivots)
    vecs = []
    for f in range(M.cols):
        if f in pivset:
            continue
        v = [zero] * M.cols
        v[f] = one
        for row, p in zip(red, pivots):
            v[p] = -row[f]
        vecs.append(v)
    return Subspace(M.cols, vecs, field=M.field)


def solve_linear(A: Mat, b: Sequence) -> Optional[tuple]:
    """One exact solution of ``A x = b`` (free variables set to 0), or None."""
    if len(b) != A.rows:
        raise ValueError("right-hand side length does not match A.rows")
    aug = [list(row) + [_to_scalar(x)] for row, x in zip(A.entries, b)]
    field = A.field
    if any(isinstance(x, GaussianRational) for x in b):
        field = QI
        aug = [[x if isinstance(x, GaussianRational) else GaussianRational(x) for x in row] for row in aug]
    red, pivots = rref_rows(aug, A.cols + 1, field)
    if pivots and pivots[-1] == A.cols:
        return None
    zero = Fraction(0) if field == Q else GaussianRational(0)
    x = [zero] * A.cols
    for row, p in zip(red, pivots):
        x[p] = row[A.cols]
    return tuple(x)


class Subspace:
    """A linear subspace of Q^n (or Q(i)^n) stored by its reduced echelon basis.

    Equality is equality of canonical bases, so two spanning sets of the same
    space compare equal.
    """

    __slots__ = ("ambient_dim", "basis", "pivots", "field")

    def __init__(self, ambient_dim: int, vectors: Iterable[Sequence] = (), field: str = Q):
        vecs = [tuple(_to_scalar(x) for x in v) for v in vectors]
        if field == QI:
            vecs = [tuple(x if isinstance(x, GaussianRational) else GaussianRational(x) for x in v) for v in vecs]
        for v in vecs:
            if len(v) != ambient_dim:
                raise ValueError("vector length does not match ambient dimension")
        red, pivots = rref_rows(vecs, ambient_dim, field) if vecs else ([], [])
        self.ambient_dim = ambient_dim
        self.basis = tuple(red)
        self.pivots = tuple(pivots)
        self.field = field

    @classmethod
    def zero(cls, n: int, field: str = Q) -> "Subspace":
        return cls(n, (), field)

    @classmethod
    def full(cls, n: int) -> "Subspace":
        return cls(n, unit_vectors(n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def matrix(self) -> Mat:
        """Basis vectors as the rows of a matrix."""
        return Mat(self.basis, self.ambient_dim, field=self.field)

    def __contains__(self, v) -> bool:
        v = tuple(_to_scalar(x) for x in v)
        if not any(v):
            return True
        return Subspace(self.ambient_dim, self.basis + (v,), self.field).dim == self.dim

    def __le__(self, other: "Subspace") -> bool:
        return all(v in other for v in self.basis)

    def __eq__(self, other):
        if not isinstance(other, Subspace):
            return NotImplemented
        return self.ambient_dim == other.ambient_dim and self.basis == other.basis

    def __hash__(self):
        return hash((self.ambient_dim, self.basis))

    def __add__(self, other: "Subspace") -> "Subspace":
        field = QI if QI in (self.field, other.field) else Q
        return Subspace(self.ambient_dim, self.basis + other.basis, field)

    def intersect(self, other: "Subspace") -> "Subspace":
        if self.dim == 0 or other.dim == 0:
            return Subspace.zero(self.ambient_dim, self.field)
        # a.U = b.V  <=>  (a, b) in ker [U^T | -V^T]
        cols = list(self.basis) + [tuple(-x for x in v) for v in other.basis]
        k = kernel_basis(Mat.from_columns(cols, self.ambient_dim))
        vecs = []
        for sol in k.basis:
            vecs.append(combine(sol[:self.dim], self.basis, self.ambient_dim))
        return Subspace(self.ambient_dim, vecs, self.field)

    def image(self, M: Mat) -> "Subspace":
        return Subspace(M.rows, [M.apply(v) for v in self.basis], field=QI if QI in (M.field, self.field) else Q)

    def is_stable(self, M: Mat) -> bool:
        return all(M.apply(v) in self for v in self.basis)

    def coordinates(self, v) -> tuple:
        """Coordinates of ``v`` in the canonical basis (raises if v is not in the space)."""
        v = tuple(_to_scalar(x) for x in v)
        coords = tuple(v[p] for p in self.pivots)
        if combine(coords, self.basis, self.ambient_dim) != v:
            raise ValueError("vector not in subspace")
        return coords

    def complement_basis(self) -> list:
        """Unit vectors e_c for the non-pivot columns; together with the basis they span everything."""
        piv = set(self.pivots)
        return [unit_vector(self.ambient_dim, c) for c in range(self.ambient_dim) if c not in piv]

    def __repr__(self):
        if not self.basis:
            return "span{}"
        return "span{" + ", ".join(format_vector(v) for v in self.basis) + "}"


def unit_vector(n: int, i: int) -> tuple:
    return tuple(Fraction(1) if k == i else Fraction(0) for k in range(n))


def unit_vectors(n: int) -> list:
    return [unit_vector(n, i) for i in range(n)]


def combine(coeffs, vectors, n: int) -> tuple:
    """Linear combination sum(coeffs[k] * vectors[k])."""
    out = [Fraction(0)] * n
    for a, v in zip(coeffs, vectors):
        if a:
            for i, x in enumerate(v):
                if x:
                    out[i] = out[i] + a * x
    return tuple(out)


def format_vector(v, labels: Optional[Sequence[str]] = None) -> str:
    """Render a coordinate vector with 1-based basis labels, e.g. ``e1 - 1/2 e3``."""
    terms = []
    for i, x in enumerate(v):
        if not x:
            continue
        name = labels[i] if labels else f"e{i + 1}"
        if isinstance(x, GaussianRational) and x.im:
            coef = f"({x!r})"
            terms.append(f"+ {coef} {name}")
            continue
        x = x.re if isinstance(x, GaussianRational) else x
        sign = "-" if x < 0 else "+"
        ax = abs(x)
        terms.append(f"{sign} {name}" if ax == 1 else f"{sign} {format_rational(ax)} {name}")
    if not terms:
        return "0"
    s = " ".join(terms)
    return s[2:] if s.startswith("+ ") else "-" + s[2:]


def inertia(S: Mat):
    """Inertia (n_plus, n_minus, n_zero) of a symmetric rational matrix.

    Exact congruence diagonalisation: symmetric row/column elimination, with a
    2x2 hyperbolic-block fix when every remaining diagonal entry is zero.
    """
    if not S.is_square() or S != S.T:
        raise ValueError("inertia needs a symmetric matrix")
    a = [list(row) for row in S.entries]
    n = len(a)
    pos = neg = zero = 0
    k = 0
    while k < n:
        if a[k][k] == 0:
            j = next((j for j in range(k + 1, n) if a[j][j] != 0), None)
            if j is not None:
                _sym_swap(a, k, j)
            else:
                j = next((j for j in range(k + 1, n) if a[k][j] != 0), None)
                if j is None:
                    zero += 1
                    k += 1
                    continue
                # replace e_k by e_k + e_j: new diagonal 2 a[k][j] != 0
                _sym_add(a, k, j, Fraction(1))
        p = a[k][k]
        if p > 0:
            pos += 1
        else:
            neg += 1
        for i in range(k + 1, n):
            if a[i][k]:
                _sym_add(a, i, k, -a[i][k] / p)
        k += 1
    return pos, neg, zero


def _sym_swap(a, i, j):
    a[i], a[j] = a[j], a[i]
    for row in a:
        row[i], row[j] = row[j], row[i]


def _sym_add(a, i, j, f):
    """row_i += f row_j and col_i += f col_j (a congruence)."""
    a[i] = [x + f * y for x, y in zip(a[i], a[j])]
    for row in a:
        row[i] = row[i] + f * row[j]
