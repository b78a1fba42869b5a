"""Coalgebras, group-likes and the cointegral solver."""
from fractions import Fraction

from hypothesis import given, strategies as st

from forge.coalgebra import (Coalgebra, check_coalgebra, check_cointegral, coalgebra_from_table,
                             find_cointegral, group_coalgebra, matrix_coalgebra, trivial_coalgebra,
                             verify_grouplike)
from forge.fixtures import path_coalgebra, sweedler_hopf
from forge.kernel import Field, Matrix, Q

import oracles

F2, F3 = Field(2), Field(3)


def test_check_coalgebra_examples():
    assert check_coalgebra(trivial_coalgebra(Q)) == []
    assert check_coalgebra(group_coalgebra(Q, 3)) == []
    c = group_coalgebra(Q, 2)
    broken = Coalgebra(Q, 2, Matrix.zeros(Q, 4, 2), c.counit)
    assert {"left counit", "right counit"} <= set(check_coalgebra(broken))


def test_group_coalgebra_brute_force():
    """Every group element of k[Z3] is group-like, checked on coefficients."""
    c = group_coalgebra(Q, 3)
    for i in range(3):
        for x in range(3):
            for y in range(3):
                assert oracles.coproduct_coeff(c, i, x, y) == (1 if x == y == i else 0)


def test_verify_grouplike_examples():
    c = group_coalgebra(Q, 2)
    assert verify_grouplike(c, (0, 1))
    assert not verify_grouplike(c, (1, 1))
    assert not verify_grouplike(c, (0, 0))


def test_cointegral_group_z2():
    """The k[Z2] cointegral is delta(g (x) h) = [g = h]."""
    c = group_coalgebra(Q, 2)
    delta = find_cointegral(c)
    expected = [[1 if i == j else 0 for j in range(2)] for i in range(2)]
    got = [[oracles.cointegral_value(c, delta.delta, i, j) for j in range(2)] for i in range(2)]
    assert got == expected


def test_cointegral_matrix_coalgebra():
    """M^c(2): the solver's form and the trace form both satisfy the equations."""
    c = matrix_coalgebra(Q, 2)
    delta = find_cointegral(c)
    assert delta is not None
    assert oracles.cointegral_holds(c, delta.delta)
    half = Fraction(1, 2)
    # e_ij (x) e_kl -> 1/2 [i = l][j = k]
    trace_form = []
    for a in range(4):
        i, j = divmod(a, 2)
        for b in range(4):
            k, l = divmod(b, 2)
            trace_form.append(half if (i == l and j == k) else 0)
    form = Matrix(Q, [trace_form], 1, 16)
    assert oracles.cointegral_holds(c, form)
    assert check_cointegral(c, form) == []


def test_cointegral_trivial():
    c = trivial_coalgebra(Q)
    assert find_cointegral(c).delta == Matrix(Q, [[1]], 1, 1)


def test_no_cointegral_for_path_coalgebra():
    """The path coalgebra 1 -> 2 is not coseparable."""
    c = path_coalgebra(Q)
    assert check_coalgebra(c) == []
    assert find_cointegral(c) is None


def test_group_coalgebras_coseparable_sweedler_not():
    """Group coalgebras are coseparable in every characteristic; H4 is not."""
    assert find_cointegral(group_coalgebra(F2, 2)) is not None
    assert find_cointegral(sweedler_hopf(Q).coalgebra) is None


@given(st.integers(2, 4), st.sampled_from([Q, F3]))
def test_group_cointegral_properties(n, f):
    """Returned cointegrals re-verify both equations on every basis pair."""
    c = group_coalgebra(f, n)
    delta = find_cointegral(c)
    assert delta is not None
    assert oracles.cointegral_holds(c, delta.delta)
    assert check_cointegral(c, delta.delta) == []


@given(st.integers(1, 3))
def test_matrix_coalgebra_valid(r):
    """M^c(r) is coassociative and counital."""
    assert check_coalgebra(matrix_coalgebra(Q, r)) == []


def test_coalgebra_from_table_roundtrip():
    c = coalgebra_from_table(Q, [[1, 0, 0, 0], [0, 0, 0, 1]], [1, 1])
    assert check_coalgebra(c) == []
    assert verify_grouplike(c, (1, 0)) and verify_grouplike(c, (0, 1))
