"""Algebras, modules, hom spaces, balanced tensors and dual bases."""
import pytest
from hypothesis import given, strategies as st

from forge.algebra import (AModule, Algebra, algebra_from_table, check_algebra, dual_basis_identity,
                           field_algebra, find_dual_basis, free_module, group_algebra, hom_space,
                           module_hom, regular_module, section_of_action, tensor_over_A,
                           zero_module)
from forge.fixtures import dual_numbers, sweedler_hopf
from forge.kernel import Field, Matrix, Q, identity, kron, rank

F2, F3 = Field(2), Field(3)


def upper_triangular(f):
    """T_2 on e11, e12, e22."""
    e11, e12, e22 = (1, 0, 0), (0, 1, 0), (0, 0, 1)
    z = (0, 0, 0)
    table = [[e11, e12, z], [z, z, e12], [z, z, e22]]
    return algebra_from_table(f, table, (1, 0, 1), "T2")


def augmentation_module(f):
    """k over k[x]/(x^2) with x acting by zero."""
    return AModule(dual_numbers(f), "right", 1, Matrix.from_rows(f, [[1, 0]]))


ALGEBRAS = [group_algebra(Q, 2), group_algebra(F3, 3), dual_numbers(Q), upper_triangular(Q),
            sweedler_hopf(Q).algebra, field_algebra(F2)]
algebras = st.sampled_from(ALGEBRAS)


def test_check_algebra_examples():
    assert check_algebra(group_algebra(Q, 2)) == []
    a = group_algebra(Q, 2)
    broken = Algebra(Q, 2, Matrix.zeros(Q, 2, 4), a.unit)
    assert "left unit" in check_algebra(broken) and "right unit" in check_algebra(broken)
    assert check_algebra(sweedler_hopf(Q).algebra) == []


def test_h4_brute_force_associativity():
    """Triple products of H4 agree on all 64 basis triples."""
    a = sweedler_hopf(Q).algebra
    for i in range(4):
        for j in range(4):
            for k in range(4):
                x, y, z = a.basis(i), a.basis(j), a.basis(k)
                assert a.product(a.product(x, y), z) == a.product(x, a.product(y, z))


def test_module_hom_examples():
    a = group_algebra(Q, 2)
    r = regular_module(a)
    homs = module_hom(r, r)
    assert len(homs) == 2
    for h in homs:
        # right linear endomorphisms of A are left multiplications by h(1)
        assert h == a.left_mult(h.col(0))
    assert module_hom(r, zero_module(a)) == []
    k = regular_module(field_algebra(Q))
    assert len(module_hom(k, k)) == 1


def test_module_hom_side_mismatch():
    a = group_algebra(Q, 2)
    with pytest.raises(ValueError):
        hom_space(regular_module(a, "right"), regular_module(a, "left"))


def test_tensor_over_A_examples():
    a = group_algebra(Q, 2)
    t = tensor_over_A(regular_module(a, "right"), regular_module(a, "left"))
    assert t.dim == 2
    assert tensor_over_A(regular_module(a, "right"), zero_module(a, "left")).dim == 0
    d = dual_numbers(Q)
    assert tensor_over_A(augmentation_module(Q), regular_module(d, "left")).dim == 1


def test_find_dual_basis_examples():
    a = group_algebra(Q, 2)
    db = find_dual_basis(regular_module(a))
    assert db is not None and dual_basis_identity(regular_module(a), db) == identity(Q, 2)
    assert find_dual_basis(augmentation_module(Q)) is None
    free = free_module(a, 2)
    db = find_dual_basis(free)
    assert db.count == 2
    assert dual_basis_identity(free, db) == identity(Q, 4)


def test_section_of_action_non_projective():
    """k is not projective over k[x]/(x^2): no module section of the action."""
    m = AModule(dual_numbers(Q), "left", 1, Matrix.from_rows(Q, [[1, 0]]))
    assert section_of_action(m) is None
    r = regular_module(dual_numbers(Q), "left")
    assert section_of_action(r) is not None


@given(algebras)
def test_regular_module_dual_basis(a):
    """A is f.g. projective over itself and the dual basis reproduces the identity."""
    m = regular_module(a)
    db = find_dual_basis(m)
    assert db is not None
    assert dual_basis_identity(m, db) == identity(a.field, a.dim)


@given(algebras, st.integers(1, 2))
def test_free_module_dual_basis(a, n):
    """A^n has a dual basis whose evaluation sum is the identity."""
    m = free_module(a, n)
    db = find_dual_basis(m)
    assert db is not None
    assert dual_basis_identity(m, db) == identity(a.field, m.dim)


@given(algebras, st.sampled_from(["regular", "free2"]))
def test_tensor_with_A_is_identity(a, kind):
    """A (x)_A N has dimension dim N and unit (x) - is a bijection."""
    n = regular_module(a, "left") if kind == "regular" else free_module(a, 2, "left")
    t = tensor_over_A(regular_module(a, "right"), n)
    assert t.dim == n.dim
    f = a.field
    unit_in = kron(a.unit_column, identity(f, n.dim))
    assert rank(t.proj @ unit_in) == n.dim


@given(algebras, st.randoms(use_true_random=False))
def test_module_hom_closed_under_composition(a, rng):
    """The product of two random endomorphisms lies in Hom_A(M, M) again."""
    m = free_module(a, 2) if a.dim <= 2 else regular_module(a)
    space = hom_space(m, m)
    f = a.field

    def pick():
        coeffs = [f(rng.randrange(-2, 3)) for _ in range(space.dim)]
        return space.element(coeffs)

    assert space.contains(pick() @ pick())
    assert space.contains(identity(f, m.dim))
