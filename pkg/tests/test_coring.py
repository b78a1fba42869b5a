"""Coring axioms, standard constructions and coring morphisms."""
from hypothesis import given, settings, strategies as st

from forge.algebra import field_algebra, group_algebra
from forge.coring import (CoringMorphism, check_coring, check_coring_morphism,
                          coring_from_entwining, counit_morphism, find_coring_isomorphism,
                          identity_morphism, is_grouplike, sweedler_coring, trivial_coring)
from forge.entwining import doi_koppinen, flip_entwining
from forge.fixtures import _group_hopf, dual_numbers, sweedler_hopf
from forge.kernel import Field, Matrix, Q, identity, rank

from conftest import workspace


def dk_coring(f, n):
    h = _group_hopf(f, n)
    a = h.algebra
    dk = doi_koppinen(h, a, h.coalgebra.comul, h.coalgebra, a.mul, identity(f, n))
    return coring_from_entwining(dk.entwining)


def test_fixture_corings_pass(fixture_name):
    ws = workspace(fixture_name)
    for name in ws.doc.corings:
        assert check_coring(ws.coring(name)) == []


def test_trivial_coring():
    a = group_algebra(Q, 3)
    t = trivial_coring(a)
    assert check_coring(t) == [] and t.dim == 3
    assert is_grouplike(t, a.unit)
    assert find_coring_isomorphism(t, t) == identity(Q, 3)


def test_sweedler_over_itself_is_trivial():
    """A (x)_A A is isomorphic to the trivial coring."""
    a = group_algebra(Q, 2)
    s = sweedler_coring(a, a, identity(Q, 2))
    assert s.dim == 2
    g = find_coring_isomorphism(s, trivial_coring(a))
    assert g is not None and rank(g) == 2


def test_sweedler_over_field():
    a = dual_numbers(Q)
    s = sweedler_coring(field_algebra(Q), a, Matrix.column(Q, a.unit))
    assert check_coring(s) == [] and s.dim == 4
    assert find_coring_isomorphism(s, trivial_coring(a)) is None


def test_galois_identification_z2():
    """The Doi-Koppinen coring of k[Z2] is isomorphic to A (x)_k A."""
    c = dk_coring(Q, 2)
    a = c.algebra
    s = sweedler_coring(field_algebra(Q), a, Matrix.column(Q, a.unit))
    g = find_coring_isomorphism(s, c)
    assert g is not None
    assert check_coring_morphism(CoringMorphism(s, c, identity(Q, 2), g)) == []


def test_entwining_coring_grouplike():
    c = dk_coring(Q, 2)
    assert is_grouplike(c, (1, 0, 0, 0)) and is_grouplike(c, (0, 1, 0, 0))
    assert not is_grouplike(c, (0, 0, 1, 0))
    assert not is_grouplike(c, (1, 0))


def test_coring_morphisms():
    c = dk_coring(Q, 3)
    assert check_coring_morphism(identity_morphism(c)) == []
    assert check_coring_morphism(counit_morphism(c)) == []
    bad = CoringMorphism(c, c, identity(Q, 3), Matrix.zeros(Q, 9, 9))
    assert check_coring_morphism(bad) == ["counit"]


def test_sweedler_h4_flip_coring():
    h = sweedler_hopf(Q)
    c = coring_from_entwining(flip_entwining(h.algebra, h.coalgebra))
    assert check_coring(c) == []
    assert c.dim == 16


@settings(max_examples=8)
@given(st.integers(2, 3), st.sampled_from([Q, Field(2), Field(3)]))
def test_entwining_corings_are_corings(n, f):
    """Every Doi-Koppinen group coring passes the coring axioms."""
    c = dk_coring(f, n)
    assert check_coring(c) == []
    assert check_coring_morphism(counit_morphism(c)) == []


@given(st.integers(1, 4), st.sampled_from([Q, Field(3)]))
def test_trivial_coring_counit_is_identity(n, f):
    """The counit morphism of the trivial coring is the identity."""
    t = trivial_coring(group_algebra(f, n))
    assert t.counit == identity(f, n)
    assert check_coring(t) == []
