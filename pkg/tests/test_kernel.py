"""Exact linear algebra: examples, oracles and properties."""
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from forge import kernel
from forge.kernel import (Field, Matrix, Q, Sandwich, identity, inverse, kernel_basis, kron,
                          matrix_operator, quotient_space, rank, solve_affine, swap)

import oracles

F2, F3, F5 = Field(2), Field(3), Field(5)


def mat(field, rows):
    return Matrix.from_rows(field, rows)


def matrices(field, max_rows=4, max_cols=4, rows=None, cols=None):
    if field.p:
        scalar = st.integers(0, field.p - 1)
    else:
        scalar = st.builds(Fraction, st.integers(-3, 3), st.integers(1, 3))
    r = st.just(rows) if rows is not None else st.integers(1, max_rows)
    c = st.just(cols) if cols is not None else st.integers(1, max_cols)
    return st.tuples(r, c).flatmap(
        lambda rc: st.lists(st.lists(scalar, min_size=rc[1], max_size=rc[1]),
                            min_size=rc[0], max_size=rc[0])).map(lambda d: mat(field, d))


fields = st.sampled_from([Q, F2, F3, F5])


# examples ------------------------------------------------------------------------


def test_rank_examples():
    assert rank(identity(Q, 2)) == 2
    assert rank(Matrix.zeros(Q, 3, 4)) == 0
    assert rank(mat(Q, [[1, 2], [2, 4]])) == 1


def test_kernel_examples():
    assert kernel_basis(identity(Q, 3)).cols == 0
    assert kernel_basis(Matrix.zeros(Q, 3, 3)).cols == 3
    k = kernel_basis(mat(F2, [[1, 1]]))
    assert k.columns() == [(1, 1)]
    assert oracles.brute_kernel(mat(F2, [[1, 1]]), 2) == {(0, 0), (1, 1)}


def test_solve_affine_examples():
    eye = identity(Q, 2)
    assert solve_affine([(eye - eye, (0, 0))]) is not None
    assert solve_affine([(Matrix.zeros(Q, 1, 1), (1,))]) is None
    with pytest.raises(ValueError):
        solve_affine([(eye, (0, 0)), (identity(Q, 3), (0, 0, 0))])


def test_kron_examples():
    assert kron(identity(Q, 2), identity(Q, 3)) == identity(Q, 6)
    a = mat(Q, [[1, 2], [3, 4]])
    assert kron(a, Matrix.zeros(Q, 2, 2)).is_zero()
    b = mat(Q, [[0, 5], [6, 7]])
    assert [list(r) for r in kron(a, b).data] == oracles.naive_kron(a, b)


def test_quotient_examples():
    q = quotient_space(3, Matrix.zeros(Q, 3, 0))
    assert q.proj == identity(Q, 3)
    q = quotient_space(2, identity(Q, 2))
    assert q.dim == 0
    rel = Matrix.from_columns(Q, 4, [(1, -1, 0, 0)])
    q = quotient_space(4, rel)
    assert q.dim == 3
    assert q.project((1, 0, 0, 0)) == q.project((0, 1, 0, 0))


def test_field_parse_format():
    assert Q.format(Q.parse("-2/6")) == "-1/3"
    assert F5.parse("-1") == 4
    assert F5.parse("1/2") == 3
    with pytest.raises(ValueError):
        Field(4)


def test_backend_reported():
    assert kernel.BACKEND in ("cython", "python")


# oracle cross-checks -------------------------------------------------------------


@given(matrices(Q))
def test_rank_matches_sympy(m):
    """Rank over Q agrees with sympy."""
    assert rank(m) == oracles.sympy_rank(m)


@given(st.sampled_from([F2, F3]).flatmap(lambda f: matrices(f, 3, 4)))
def test_kernel_matches_enumeration(m):
    """Kernel dimension over F_p agrees with counting solutions."""
    p = m.field.p
    assert p ** kernel_basis(m).cols == len(oracles.brute_kernel(m, p))
    assert rank(m) == oracles.brute_rank(m, p)


# properties ----------------------------------------------------------------------


@given(fields.flatmap(matrices))
def test_rank_nullity(m):
    """rank + nullity = number of columns."""
    k = kernel_basis(m)
    assert rank(m) + k.cols == m.cols
    assert (m @ k).is_zero()


@given(fields.flatmap(lambda f: st.tuples(matrices(f), st.integers(0, 3))))
def test_solve_affine_solutions_check(args):
    """A returned solution satisfies every constraint exactly."""
    a, seed = args
    f = a.field
    target = tuple(f(seed * (i + 1)) for i in range(a.rows))
    x = solve_affine([(a, target)])
    if x is None:
        cert = kernel.infeasibility_certificate([(a, target)])
        assert cert["augmented_rank"] == cert["rank"] + 1
    else:
        assert a.apply(x) == target


@given(fields.flatmap(lambda f: matrices(f, 4, 3)))
def test_quotient_projection_section(rel):
    """proj o sect = id, sect o proj idempotent, ker proj = span of relations."""
    q = quotient_space(rel.rows, rel)
    f = rel.field
    assert q.proj @ q.sect == identity(f, q.dim)
    e = q.sect @ q.proj
    assert e @ e == e
    assert (q.proj @ rel).is_zero()
    assert q.dim == rel.rows - rank(rel)


@given(fields.flatmap(lambda f: st.tuples(matrices(f, 3, 3, cols=2), matrices(f, 3, 3, cols=2),
                                          matrices(f, 2, 3, rows=2), matrices(f, 2, 3, rows=2))))
def test_kron_respects_composition(ms):
    """kron(a, b) kron(c, d) = kron(ac, bd)."""
    a, b, c, d = ms
    assert kron(a, b) @ kron(c, d) == kron(a @ c, b @ d)


@given(fields.flatmap(lambda f: st.tuples(matrices(f, 2, 2), matrices(f, 2, 2),
                                          matrices(f, 2, 2))))
def test_kron_associative(ms):
    """kron is associative on the left-major basis."""
    a, b, c = ms
    assert kron(kron(a, b), c) == kron(a, kron(b, c))


@given(fields.flatmap(lambda f: st.tuples(matrices(f, 3, 3), matrices(f, 3, 3))))
def test_swap_conjugates_kron(ms):
    """The flip intertwines a (x) b and b (x) a."""
    a, b = ms
    f = a.field
    assert swap(f, a.rows, b.rows) @ kron(a, b) == kron(b, a) @ swap(f, a.cols, b.cols)


@given(fields.flatmap(lambda f: matrices(f, 4, 4)))
def test_inverse(m):
    """inverse exists exactly for full-rank square matrices."""
    inv = inverse(m)
    if m.rows == m.cols and rank(m) == m.rows:
        assert m @ inv == identity(m.field, m.rows)
    else:
        assert inv is None


@given(st.sampled_from([Q, F3]), st.integers(1, 3), st.integers(1, 2), st.integers(1, 3),
       st.sampled_from(["", "left", "right"]), st.randoms(use_true_random=False))
def test_sandwich_matches_probing(f, r, c, k, pad, rng):
    """The assembled operator equals linearisation by unit probing."""
    kk = k if pad else 1

    def rnd(a, b):
        return mat(f, [[rng.choice([0, 0, 1, 2]) for _ in range(b)] for _ in range(a)])

    op = Sandwich.of(rnd(2, r * kk), rnd(c * kk, 3), pad, k) - Sandwich.of(rnd(2, r), rnd(c, 3))
    probed = matrix_operator(f, lambda x: op(x), (r, c), 6)
    assert matrix_operator(f, op, (r, c), 6) == probed
