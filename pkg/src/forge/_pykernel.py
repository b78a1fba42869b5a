"""Pure-Python reduced row echelon form over Q and F_p.

Both functions take a list of rows (lists of scalars) and return
``(rows, pivots)`` where ``rows`` holds only the nonzero rows of the
reduced echelon form.  The input is not modified.
"""
from __future__ import annotations

from fractions import Fraction


def rref_q(rows, ncols):
    m = [list(r) for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        pv = prow[c]
        if pv != 1:
            inv = 1 / Fraction(pv)
            prow = [x * inv if x else 0 for x in prow]
            m[r] = prow
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            f = row[c]
            if f:
                for j in support:
                    row[j] -= f * prow[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref_modp(rows, ncols, p):
    m = [[x % p for x in r] for r in rows]
    nrows = len(m)
    pivots = []
    r = 0
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = m[r]
        pv = prow[c]
        if pv != 1:
            inv = pow(pv, p - 2, p)
            prow = [x * inv % p for x in prow]
            m[r] = prow
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = m[i]
            f = row[c]
            if f:
                for j in support:
                    row[j] = (row[j] - f * prow[j]) % p
        pivots.append(c)
        r += 1
    return m[:r], pivots
