# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled elimination kernel.

Runs fraction-free Gauss-Jordan on int64 with overflow-checked arithmetic and
hands the original input to the pure-Python kernel whenever an entry does not
fit or an intermediate overflows, so results are always exact.
"""
from libc.stdlib cimport malloc, free

from acslie._elim import int_rref as _py_int_rref

cdef extern from *:
    """
    static inline int acs_mul_ovf(long long a, long long b, long long *r) {
        return __builtin_mul_overflow(a, b, r);
    }
    static inline int acs_sub_ovf(long long a, long long b, long long *r) {
        return __builtin_sub_overflow(a, b, r);
    }
    """
    int acs_mul_ovf(long long a, long long b, long long *r) nogil
    int acs_sub_ovf(long long a, long long b, long long *r) nogil

cdef long long LIMIT = 4611686018427387903  # 2**62 - 1, keeps abs() safe


cdef inline long long _abs(long long x) nogil:
    return -x if x < 0 else x


cdef inline long long _gcd(long long a, long long b) nogil:
    cdef long long t
    a = _abs(a)
    b = _abs(b)
    while b:
        t = a % b
        a = b
        b = t
    return a


cdef inline void _make_primitive(long long *row, Py_ssize_t ncols) nogil:
    cdef long long g = 0
    cdef Py_ssize_t j
    for j in range(ncols):
        if row[j]:
            g = _gcd(g, row[j])
            if g == 1:
                return
    if g > 1:
        for j in range(ncols):
            row[j] = row[j] // g


cdef int _rref64(long long *m, Py_ssize_t nrows, Py_ssize_t ncols,
                 Py_ssize_t *pivots, Py_ssize_t *rank) nogil:
    """Return 0 on success, 1 on overflow."""
    cdef Py_ssize_t r = 0, c, i, j, best
    cdef long long bestabs, av, v, p, f, g, a, b, x, y, tmp
    cdef long long *prow
    cdef long long *row
    for i in range(nrows):
        _make_primitive(m + i * ncols, ncols)
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        bestabs = 0
        for i in range(r, nrows):
            v = m[i * ncols + c]
            if v:
                av = _abs(v)
                if best < 0 or av < bestabs:
                    best = i
                    bestabs = av
                    if av == 1:
                        break
        if best < 0:
            continue
        if best != r:
            for j in range(ncols):
                tmp = m[r * ncols + j]
                m[r * ncols + j] = m[best * ncols + j]
                m[best * ncols + j] = tmp
        prow = m + r * ncols
        p = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = m + i * ncols
            f = row[c]
            if not f:
                continue
            g = _gcd(p, f)
            a = p // g
            b = f // g
            for j in range(ncols):
                if acs_mul_ovf(a, row[j], &x):
                    return 1
                if acs_mul_ovf(b, prow[j], &y):
                    return 1
                if acs_sub_ovf(x, y, &x):
                    return 1
                if x > LIMIT or x < -LIMIT:
                    return 1
                row[j] = x
            _make_primitive(row, ncols)
        pivots[r] = c
        r += 1
    rank[0] = r
    return 0


def int_rref(rows, Py_ssize_t ncols):
    """Same contract as ``acslie._elim.int_rref``."""
    rows = [r for r in rows if any(r)]
    cdef Py_ssize_t nrows = len(rows)
    cdef Py_ssize_t i, j, rank = 0
    cdef long long *m
    cdef Py_ssize_t *piv
    cdef int status
    if nrows == 0 or ncols == 0:
        return [], []
    for row in rows:
        for x in row:
            if x > LIMIT or x < -LIMIT:
                return _py_int_rref(rows, ncols)
    m = <long long *> malloc(nrows * ncols * sizeof(long long))
    piv = <Py_ssize_t *> malloc(ncols * sizeof(Py_ssize_t))
    if m == NULL or piv == NULL:
        free(m)
        free(piv)
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                m[i * ncols + j] = row[j]
        with nogil:
            status = _rref64(m, nrows, ncols, piv, &rank)
        if status:
            return _py_int_rref(rows, ncols)
        out = []
        pivots = []
        for i in range(rank):
            sign = -1 if m[i * ncols + piv[i]] < 0 else 1
            out.append([sign * m[i * ncols + j] for j in range(ncols)])
            pivots.append(piv[i])
        return out, pivots
    finally:
        free(m)
        free(piv)
