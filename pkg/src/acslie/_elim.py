"""Fraction-free Gauss-Jordan elimination over the integers (pure Python).

This is the reference implementation of the elimination kernel; the compiled
``_elim_c`` module exposes the same ``int_rref`` and is preferred when built.
"""
from math import gcd


def _primitive(row):
    g = 0
    for x in row:
        if x:
            g = gcd(g, x)
            if g == 1:
                return row
    if g > 1:
        return [x // g for x in row]
    return row


def int_rref(rows, ncols):
    """Reduce integer ``rows`` to reduced echelon form without leaving Z.

    Returns ``(rows, pivots)``: the nonzero rows, each primitive (content 1)
    with a positive pivot and zeros in every other pivot column, and the list
    of pivot columns. Dividing each row by its pivot entry gives the unique
    reduced row-echelon form over Q.
    """
    m = [_primitive(list(r)) for r in rows if any(r)]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        best = -1
        bestabs = 0
        for i in range(r, nrows):
            v = m[i][c]
            if v:
                av = -v if v < 0 else v
                if best < 0 or av < bestabs:
                    best = i
                    bestabs = av
                    if av == 1:
                        break
        if best < 0:
            continue
        if best != r:
            m[r], m[best] = m[best], m[r]
        prow = m[r]
        p = prow[c]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            f = row[c]
            if not f:
                continue
            g = gcd(p, f)
            a = p // g
            b = f // g
            m[i] = _primitive([a * x - b * y for x, y in zip(row, prow)])
        pivots.append(c)
        r += 1
    out = []
    for i in range(r):
        row = m[i]
        if row[pivots[i]] < 0:
            row = [-x for x in row]
        out.append(row)
    return out, pivots
