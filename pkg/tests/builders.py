"""Small comodules built from a single matrix, used for simplicity checks.

A square matrix X over F_p generates a finite cyclic monoid {1, X, ..., X^(m-1)}
with X^m = X^t.  The dual of its monoid algebra is a coalgebra, and
``v -> sum_k X^k v (x) d_k`` is a right comodule over it whose subcomodules
are exactly the X-invariant subspaces.
"""
from __future__ import annotations

import random

from forge.algebra import AModule, field_algebra
from forge.coalgebra import coalgebra_from_table
from forge.comodule import comodule_from_lift
from forge.coring import coring_from_entwining
from forge.entwining import flip_entwining
from forge.kernel import Matrix, identity


def cyclic_monoid(x: Matrix) -> tuple[list[Matrix], int]:
    """Distinct powers of ``x`` and the index t where the cycle re-enters."""
    powers = [identity(x.field, x.rows)]
    while True:
        nxt = powers[-1] @ x
        for t, p in enumerate(powers):
            if p == nxt:
                return powers, t
        powers.append(nxt)


def monoid_coalgebra(f, m: int, t: int):
    """Dual of k[x]/(x^m - x^t): Delta d_k = sum over i*j = k of d_i (x) d_j."""

    def mul(i, j):
        s = i + j
        return s if s < m else t + (s - t) % (m - t)

    coproducts = []
    for k in range(m):
        v = [0] * (m * m)
        for i in range(m):
            for j in range(m):
                if mul(i, j) == k:
                    v[i * m + j] = 1
        coproducts.append(v)
    return coalgebra_from_table(f, coproducts, [1] + [0] * (m - 1), f"monoid({m},{t})")


def matrix_comodule(x: Matrix):
    f = x.field
    n = x.rows
    powers, t = cyclic_monoid(x)
    m = len(powers)
    k = field_algebra(f)
    coring = coring_from_entwining(flip_entwining(k, monoid_coalgebra(f, m, t)))
    lift = [[0] * n for _ in range(n * m)]
    for c, p in enumerate(powers):
        for i in range(n):
            for j in range(n):
                lift[i * m + c][j] = p[i, j]
    module = AModule(k, "right", n, identity(f, n))
    return comodule_from_lift(coring, "right", module, Matrix(f, lift, n * m, n), "matrix")


def random_matrix(f, n: int, rng: random.Random) -> Matrix:
    return Matrix.from_rows(f, [[rng.randrange(f.p) for _ in range(n)] for _ in range(n)])
