"""Bow-tie axioms, psi inversion and the Doi-Koppinen construction."""
import pytest
from hypothesis import given, strategies as st

from forge.algebra import field_algebra, group_algebra
from forge.coalgebra import trivial_coalgebra, verify_grouplike
from forge.entwining import (Entwining, HopfAlgebra, PreconditionError, alpha_consistency,
                             check_bowtie, check_hopf, doi_koppinen, flip_entwining, invert_psi)
from forge.fixtures import _group_hopf, dual_numbers, sweedler_hopf
from forge.kernel import Field, Matrix, Q, identity, kron, swap

import oracles


def group_dk(f, n):
    h = _group_hopf(f, n)
    a = h.algebra
    return h, doi_koppinen(h, a, h.coalgebra.comul, h.coalgebra, a.mul, identity(f, n))


def test_flip_passes():
    e = flip_entwining(dual_numbers(Q), trivial_coalgebra(Q))
    assert check_bowtie(e) == []
    assert invert_psi(e) == e.psi


def test_flip_inverse_is_flip():
    a, c = group_algebra(Q, 2), _group_hopf(Q, 3).coalgebra
    e = flip_entwining(a, c)
    assert invert_psi(e) == swap(Q, 2, 3)


def test_doi_koppinen_z2_matches_formula():
    """psi(g^c (x) g^a) = g^a (x) g^(c+a), a permutation matrix."""
    _, dk = group_dk(Q, 2)
    assert [list(r) for r in dk.entwining.psi.data] == oracles.cyclic_psi(2)
    assert check_bowtie(dk.entwining) == []


def test_doi_koppinen_inverse_matches_antipode_formula():
    h, dk = group_dk(Q, 3)
    assert dk.psi_inverse_formula is not None
    assert invert_psi(dk.entwining) == dk.psi_inverse_formula
    assert alpha_consistency(dk.entwining)


def test_zero_psi_fails_triangles():
    a, c = group_algebra(Q, 2), _group_hopf(Q, 2).coalgebra
    e = Entwining(a, c, Matrix.zeros(Q, 4, 4))
    bad = check_bowtie(e)
    assert "right triangle" in bad
    assert invert_psi(e) is None


def test_trivial_hopf_gives_flip():
    """H = k: the Doi-Koppinen entwining is the flip."""
    k = field_algebra(Q)
    h = HopfAlgebra(k, trivial_coalgebra(Q), identity(Q, 1))
    a = dual_numbers(Q)
    dk = doi_koppinen(h, a, identity(Q, 2), trivial_coalgebra(Q), identity(Q, 1), identity(Q, 1))
    assert dk.entwining.psi == identity(Q, 2)
    assert dk.grouplike == (1,)


def test_image_of_unit_is_grouplike():
    _, dk = group_dk(Q, 2)
    assert verify_grouplike(dk.entwining.coalgebra, dk.grouplike)


def test_sweedler_hopf_axioms():
    assert check_hopf(sweedler_hopf(Q)) == []


def test_doi_koppinen_rejects_bad_coaction():
    h = _group_hopf(Q, 2)
    a = h.algebra
    with pytest.raises(PreconditionError):
        doi_koppinen(h, a, Matrix.zeros(Q, 4, 2), h.coalgebra, a.mul, identity(Q, 2))


@given(st.integers(2, 4), st.sampled_from([Q, Field(5)]))
def test_doi_koppinen_always_bowtie(n, f):
    """Doi-Koppinen output passes every bow-tie axiom and inverts exactly."""
    _, dk = group_dk(f, n)
    e = dk.entwining
    assert check_bowtie(e) == []
    one = identity(f, n * n)
    assert e.psi @ e.psi_inverse == one and e.psi_inverse @ e.psi == one


@given(st.integers(1, 3), st.integers(1, 3))
def test_flip_always_entwines(n, m):
    """The flip is an invertible entwining for any algebra and coalgebra."""
    e = flip_entwining(group_algebra(Q, n), _group_hopf(Q, m).coalgebra).with_inverse()
    assert check_bowtie(e) == []
    assert kron(identity(Q, 1), e.psi_inverse) @ e.psi == identity(Q, n * m)
