# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled reduced row echelon form.

The F_p path runs on a C array of 64-bit words; the Q path keeps Python
fractions but avoids interpreter overhead in the loops.
"""
from fractions import Fraction

from libc.stdlib cimport malloc, free


def rref_q(rows, Py_ssize_t ncols):
    cdef list m = [list(src) for src in rows]
    cdef Py_ssize_t nrows = len(m)
    cdef list pivots = []
    cdef Py_ssize_t r = 0, c, i, j, piv
    cdef list prow, row, support
    for c in range(ncols):
        if r == nrows:
            break
        piv = -1
        for i in range(r, nrows):
            if (<list>m[i])[c]:
                piv = i
                break
        if piv < 0:
            continue
        m[r], m[piv] = m[piv], m[r]
        prow = <list>m[r]
        pv = prow[c]
        if pv != 1:
            inv = 1 / Fraction(pv)
            prow = [x * inv if x else 0 for x in prow]
            m[r] = prow
        support = [j for j in range(c, ncols) if prow[j]]
        for i in range(nrows):
            if i == r:
                continue
            row = <list>m[i]
            f = row[c]
            if f:
                for j in support:
                    row[j] = row[j] - f * prow[j]
        pivots.append(c)
        r += 1
    return m[:r], pivots


def rref_modp(rows, Py_ssize_t ncols, long long p):
    cdef Py_ssize_t nrows = len(rows)
    cdef long long *a = NULL
    cdef Py_ssize_t r = 0, c, i, j, piv, k
    cdef long long pv, inv, f, e, base, exp
    cdef list pivots = []
    cdef list out
    if nrows == 0 or ncols == 0:
        return [], []
    a = <long long *>malloc(nrows * ncols * sizeof(long long))
    if a == NULL:
        raise MemoryError()
    try:
        for i in range(nrows):
            row = rows[i]
            for j in range(ncols):
                a[i * ncols + j] = (<long long>(row[j] % p))
        for c in range(ncols):
            if r == nrows:
                break
            piv = -1
            for i in range(r, nrows):
                if a[i * ncols + c] != 0:
                    piv = i
                    break
            if piv < 0:
                continue
            if piv != r:
                for j in range(ncols):
                    e = a[r * ncols + j]
                    a[r * ncols + j] = a[piv * ncols + j]
                    a[piv * ncols + j] = e
            pv = a[r * ncols + c]
            if pv != 1:
                # Fermat inverse by square-and-multiply
                inv = 1
                base = pv
                exp = p - 2
                while exp > 0:
                    if exp & 1:
                        inv = inv * base % p
                    base = base * base % p
                    exp >>= 1
                for j in range(c, ncols):
                    a[r * ncols + j] = a[r * ncols + j] * inv % p
            for i in range(nrows):
                if i == r:
                    continue
                f = a[i * ncols + c]
                if f != 0:
                    for j in range(c, ncols):
                        e = a[r * ncols + j]
                        if e != 0:
                            k = (a[i * ncols + j] - f * e) % p
                            if k < 0:
                                k += p
                            a[i * ncols + j] = k
            pivots.append(c)
            r += 1
        out = [[a[i * ncols + j] for j in range(ncols)] for i in range(r)]
    finally:
        free(a)
    return out, pivots
