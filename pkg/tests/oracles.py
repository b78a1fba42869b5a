"""Independent reference computations used to cross-check the library.

Nothing here calls the elimination code in ``forge.kernel``: ranks over Q
come from sympy, everything over a prime field is decided by brute-force
enumeration, and structure maps are rebuilt from their defining formulas.
"""
from __future__ import annotations

import itertools
from fractions import Fraction

import sympy


def entries(m):
    return [list(r) for r in m.data]


def sympy_rank(m) -> int:
    if m.rows == 0 or m.cols == 0:
        return 0
    return sympy.Matrix([[sympy.Rational(Fraction(x).numerator, Fraction(x).denominator) for x in r]
                         for r in m.data]).rank()


def vectors(p: int, n: int):
    return itertools.product(range(p), repeat=n)


def apply_mod(m, v, p):
    return tuple(sum(a * b for a, b in zip(row, v)) % p for row in m.data)


def brute_kernel(m, p: int) -> set:
    """All vectors killed by ``m`` over F_p."""
    zero = (0,) * m.rows
    return {v for v in vectors(p, m.cols) if apply_mod(m, v, p) == zero}


def brute_rank(m, p: int) -> int:
    image = {apply_mod(m, v, p) for v in vectors(p, m.cols)}
    r = 0
    while p ** r < len(image):
        r += 1
    return r


def naive_kron(a, b):
    """Entry ((i, k), (j, l)) = a[i][j] * b[k][l] in left-major order."""
    rows = []
    for i in range(a.rows):
        for k in range(b.rows):
            rows.append([a.data[i][j] * b.data[k][l] for j in range(a.cols) for l in range(b.cols)])
    return rows


def span_mod(p: int, gens) -> frozenset:
    n = len(gens[0])
    out = set()
    for coeffs in vectors(p, len(gens)):
        out.add(tuple(sum(c * g[i] for c, g in zip(coeffs, gens)) % p for i in range(n)))
    return frozenset(out)


def proper_subspaces(p: int, n: int):
    """Every nonzero proper subspace of F_p^n for n <= 3, as a set of vectors."""
    seen = set()
    nonzero = [v for v in vectors(p, n) if any(v)]
    for k in range(1, n):
        for gens in itertools.combinations(nonzero, k):
            s = span_mod(p, list(gens))
            if len(s) == p ** k and s not in seen:
                seen.add(s)
                yield s


def coaction_stable(lift, n: int, cdim: int, p: int, sub: frozenset) -> bool:
    """``rho(W) in W (x) C`` for a coaction lift ``M -> M (x)_k C``."""
    for w in sub:
        image = apply_mod(lift, w, p)
        for c in range(cdim):
            if tuple(image[i * cdim + c] for i in range(n)) not in sub:
                return False
    return True


def has_stable_subspace(lift, n: int, cdim: int, p: int) -> bool:
    return any(coaction_stable(lift, n, cdim, p, s) for s in proper_subspaces(p, n))


def cyclic_canonical(n: int):
    """``g^i (x) g^j -> g^(i+j) (x) g^j``: the lifted canonical map of k[Z_n] over itself."""
    rows = [[0] * (n * n) for _ in range(n * n)]
    for i in range(n):
        for j in range(n):
            rows[((i + j) % n) * n + j][i * n + j] = 1
    return rows


def cyclic_psi(n: int):
    """Doi-Koppinen entwining of k[Z_n]: ``g^c (x) g^a -> g^a (x) g^(c+a)``."""
    rows = [[0] * (n * n) for _ in range(n * n)]
    for c in range(n):
        for a in range(n):
            rows[a * n + (c + a) % n][c * n + a] = 1
    return rows


def cointegral_value(c, delta, i, j):
    return delta.data[0][i * c.dim + j]


def coproduct_coeff(c, i, x, y):
    """Coefficient of c_x (x) c_y in Delta(c_i)."""
    return c.comul.data[x * c.dim + y][i]


def cointegral_holds(c, delta) -> bool:
    """Both cointegral equations, evaluated term by term on basis elements."""
    n = c.dim
    d = [[delta.data[0][i * n + j] for j in range(n)] for i in range(n)]
    for i in range(n):
        total = sum(coproduct_coeff(c, i, x, y) * d[x][y] for x in range(n) for y in range(n))
        if c.field.reduce(total - c.counit.data[0][i]):
            return False
    for i in range(n):
        for j in range(n):
            for x in range(n):
                lhs = sum(coproduct_coeff(c, i, x, y) * d[y][j] for y in range(n))
                rhs = sum(coproduct_coeff(c, j, y, x) * d[i][y] for y in range(n))
                if c.field.reduce(lhs - rhs):
                    return False
    return True
