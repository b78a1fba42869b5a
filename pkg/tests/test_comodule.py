"""Comodules: axioms, hom spaces, cotensors, duals, simplicity and induction."""
import random

import pytest
from hypothesis import given, settings, strategies as st

from forge.algebra import AModule, field_algebra, group_algebra, hom_space
from forge.coalgebra import coalgebra_from_table
from forge.comodule import (check_comodule, coinvariants, colinear_hom, colinear_hom_space,
                            comodule_from_lift, cotensor, direct_sum, dual_basis_identity_check,
                            dual_left_comodule, dual_pairing_check, endomorphism_ring, gamma_iso,
                            gamma_multiplicative, grouplike_comodule, induced_comodule,
                            induced_left_comodule, is_relatively_injective, is_simple,
                            regular_comodule, subcomodule_stable, tensor_coring_comodule)
from forge.coring import (coring_from_entwining, counit_morphism,
                          identity_morphism, trivial_coring)
from forge.entwining import PreconditionError, flip_entwining
from forge.kernel import Field, Matrix, Q, identity, inverse, rank

import oracles
from builders import matrix_comodule, random_matrix
from conftest import workspace
from test_coring import dk_coring

F2, F3 = Field(2), Field(3)
ONE = (1, 0, 0, 0)


def dual_number_coring(f):
    """k-coring of the coalgebra dual to k[x]/(x^2)."""
    c = coalgebra_from_table(f, [[1, 0, 0, 0], [0, 1, 1, 0]], [1, 0], "dual numbers*")
    return coring_from_entwining(flip_entwining(field_algebra(f), c))


def trivial_comodule(c):
    """k with v -> v (x) d_0."""
    f = c.field
    module = AModule(c.algebra, "right", 1, identity(f, 1))
    return comodule_from_lift(c, "right", module, Matrix.column(f, [1, 0]))


def test_fixture_comodules_pass(fixture_name):
    ws = workspace(fixture_name)
    for name in ws.doc.comodules:
        assert check_comodule(ws.comodule(name)) == []


def test_grouplike_and_regular_comodules():
    c = dk_coring(Q, 2)
    m, r = grouplike_comodule(c, ONE), regular_comodule(c)
    assert check_comodule(m) == [] and check_comodule(r) == []
    assert check_comodule(regular_comodule(c, "left")) == []
    assert check_comodule(tensor_coring_comodule(m)) == []
    with pytest.raises(PreconditionError):
        grouplike_comodule(c, (0, 0, 1, 0))


def test_colinear_hom_examples():
    c = dk_coring(Q, 2)
    m, r = grouplike_comodule(c, ONE), regular_comodule(c)
    assert len(colinear_hom(m, m)) == 1
    assert len(colinear_hom(r, r)) == 4
    assert len(colinear_hom(m, r)) == 2
    with pytest.raises(ValueError):
        colinear_hom(m, regular_comodule(c, "left"))


def test_cotensor_with_coring():
    """M box_C C and C box_C N have the dimensions of M and N."""
    c = dk_coring(Q, 3)
    m = grouplike_comodule(c, (1,) + (0,) * 8)
    assert cotensor(m, regular_comodule(c, "left")).dim == m.dim
    n = dual_left_comodule(m).comodule
    assert cotensor(regular_comodule(c), n).dim == n.dim


def test_coinvariants_of_A():
    c = dk_coring(Q, 2)
    ci = coinvariants(grouplike_comodule(c, ONE), ONE)
    assert ci.dim == 1 and ci.base.dim == 1
    assert ci.space.contains((1, 0))


def test_dual_comodule_identities():
    c = dk_coring(Q, 2)
    d = dual_left_comodule(grouplike_comodule(c, ONE))
    assert check_comodule(d.comodule) == []
    assert dual_basis_identity_check(d) and dual_pairing_check(d)


def test_dual_over_trivial_coring_is_regular():
    a = group_algebra(Q, 2)
    t = trivial_coring(a)
    d = dual_left_comodule(regular_comodule(t))
    assert d.comodule.dim == 2
    assert len(colinear_hom(d.comodule, regular_comodule(t, "left"))) == 2


def test_gamma_iso():
    c = dk_coring(Q, 2)
    g = gamma_iso(regular_comodule(c))
    assert g.source.dim == g.target.dim == 4
    assert gamma_multiplicative(g)
    assert g.forward @ g.backward == identity(Q, 4)
    one = g.source.coordinates(identity(Q, 4))
    assert g.forward.apply(one) == g.target.coordinates(identity(Q, 4))


def test_simple_examples():
    k = field_algebra(F2)
    assert is_simple(regular_comodule(trivial_coring(k))).is_simple
    r = regular_comodule(trivial_coring(group_algebra(F2, 2)))
    v = is_simple(r)
    assert v.kind == "not simple"
    assert v.witness.vectors() == [(1, 1)]
    assert oracles.has_stable_subspace(r.coaction_lift, 2, 2, 2)
    m = grouplike_comodule(dk_coring(F2, 2), ONE)
    assert is_simple(m).is_simple
    assert is_simple(direct_sum(m, m)).kind == "not simple"


def test_simple_over_Q_is_three_valued():
    m = grouplike_comodule(dk_coring(Q, 2), ONE)
    assert is_simple(m).kind == "simple"
    assert is_simple(regular_comodule(dk_coring(Q, 2))).kind in ("not simple", "unsupported")


def test_relative_injectivity_examples():
    c = dk_coring(Q, 2)
    r = regular_comodule(c)
    pi = is_relatively_injective(r)
    assert pi is not None and pi @ r.coaction == identity(Q, 4)
    assert is_relatively_injective(grouplike_comodule(c, ONE)) is not None
    m = trivial_comodule(dual_number_coring(F2))
    assert check_comodule(m) == []
    assert is_relatively_injective(m) is None
    assert is_relatively_injective(regular_comodule(dual_number_coring(F2))) is not None


def test_induction_along_identity_and_counit():
    c = dk_coring(Q, 2)
    m = grouplike_comodule(c, ONE)
    same = induced_comodule(m, identity_morphism(c))
    assert check_comodule(same) == [] and same.dim == m.dim
    assert len(colinear_hom(same, m)) == 1
    down = induced_comodule(m, counit_morphism(c))
    assert check_comodule(down) == [] and down.dim == 2
    assert inverse(down.coaction) is not None
    assert check_comodule(induced_left_comodule(counit_morphism(c))) == []
    assert check_comodule(induced_left_comodule(identity_morphism(c))) == []


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_is_simple_matches_enumeration(seed):
    """Over F_2 and F_3 in dimension <= 3 the verdict agrees with brute force."""
    rng = random.Random(seed)
    f = rng.choice([F2, F3])
    x = random_matrix(f, rng.randint(1, 3), rng)
    m = matrix_comodule(x)
    assert check_comodule(m) == []
    v = is_simple(m)
    stable = oracles.has_stable_subspace(m.coaction_lift, m.dim, m.coring.dim, f.p)
    assert v.is_simple == (not stable)
    if not v.is_simple:
        w = v.witness
        assert 0 < w.dim < m.dim
        assert subcomodule_stable(m, w)
        assert oracles.coaction_stable(m.coaction_lift, m.dim, m.coring.dim, f.p,
                                       oracles.span_mod(f.p, w.vectors()))


@settings(max_examples=15)
@given(st.integers(0, 10 ** 6))
def test_schur_probe(seed):
    """Nonzero endomorphisms of a simple comodule are invertible."""
    rng = random.Random(seed)
    f = rng.choice([F2, F3])
    m = matrix_comodule(random_matrix(f, rng.randint(1, 3), rng))
    if not is_simple(m).is_simple:
        return
    ring = endomorphism_ring(m)
    for _ in range(10):
        coords = [rng.randrange(f.p) for _ in range(ring.dim)]
        if any(coords):
            assert rank(ring.element(coords)) == m.dim


@given(st.sampled_from(["z2", "z3", "f2"]), st.sampled_from(["M", "R", "sum"]))
def test_colinear_within_module_hom(which, kind):
    """Colinear maps form a subspace of the A-linear maps."""
    c = {"z2": lambda: dk_coring(Q, 2), "z3": lambda: dk_coring(Q, 3),
         "f2": lambda: dk_coring(F2, 2)}[which]()
    g = grouplike_comodule(c, (1,) + (0,) * (c.dim - 1))
    m = {"M": g, "R": regular_comodule(c), "sum": direct_sum(g, g)}[kind]
    lin = hom_space(m.module, m.module)
    col = colinear_hom_space(m, m)
    assert col.dim <= lin.dim
    assert all(lin.contains(s) for s in col.basis)
    assert col.contains(identity(c.field, m.dim))


@settings(max_examples=10)
@given(st.integers(2, 3), st.sampled_from([Q, F3]))
def test_dual_comodule_pairing(n, f):
    """Both sides of the dual pairing agree on every basis pair."""
    c = dk_coring(f, n)
    for m in (grouplike_comodule(c, (1,) + (0,) * (n * n - 1)), regular_comodule(c)):
        d = dual_left_comodule(m)
        assert check_comodule(d.comodule) == []
        assert dual_pairing_check(d) and dual_basis_identity_check(d)
