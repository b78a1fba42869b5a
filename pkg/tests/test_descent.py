"""Induction, duality, associated modules, split extensions and flatness."""
import pytest
from hypothesis import given, settings, strategies as st

from forge.coalgebra import CoalgebraComodule, regular_coalgebra_comodule
from forge.comodule import colinear_hom_space, grouplike_comodule, regular_comodule
from forge.coring import coring_from_entwining, identity_morphism
from forge.descent import (associated_modules, duality_iso, faithful_flatness_verdict,
                           fgp_associated_check, gamma_tilde, induce_principal, induction_datum,
                           lemma_dimensions, reflexivity_check, split_extension_check,
                           theta_map, theta_naturality)
from forge.entwining import PreconditionError
from forge.galois import galois_datum
from forge.kernel import Field, Matrix, Q, identity, rank

from conftest import GALOIS_FIXTURES, datum, workspace
from test_comodule import dual_number_coring, trivial_comodule
from test_galois import dk

MORPHISMS = [(n, m) for n in GALOIS_FIXTURES for m in workspace(n).doc.morphisms]


@pytest.mark.parametrize("name,morphism", MORPHISMS)
def test_induction_principal(name, morphism):
    d = induction_datum(datum(name), workspace(name).morphism(morphism))
    v = induce_principal(d)
    assert v.status == "pass", v.reason
    assert v.details == {"splitting": True, "colinear section": True}
    gt = gamma_tilde(d)
    assert rank(gt) == d.morphism.target.dim


@pytest.mark.parametrize("name,morphism", MORPHISMS)
def test_theta_natural(name, morphism):
    """The theta squares commute for every colinear basis map N -> D."""
    d = induction_datum(datum(name), workspace(name).morphism(morphism))
    n1, n2 = d.induced, regular_comodule(d.morphism.target)
    assert theta_map(d, n1).bijective and theta_map(d, n2).bijective
    for gmap in colinear_hom_space(n1, n2).basis:
        assert theta_naturality(d, n1, n2, gmap)
    assert theta_naturality(d, n1, n1, identity(n1.field, n1.dim))


def test_identity_induction_keeps_dimension():
    g = datum("hopf-z2")
    d = induction_datum(g, identity_morphism(g.comodule.coring))
    assert d.induced.dim == g.comodule.dim
    assert d.endo.dim == g.endo.dim


def test_theta_needs_galois():
    g = datum("twisted-path", "V")
    d = induction_datum(g, identity_morphism(g.comodule.coring))
    with pytest.raises(PreconditionError):
        theta_map(d, d.induced)


def test_duality(galois_name):
    g = datum(galois_name)
    ws = workspace(galois_name)
    targets = [g.comodule, regular_comodule(g.comodule.coring)]
    targets += [induction_datum(g, identity_morphism(g.comodule.coring)).induced]
    for w in targets:
        iso = duality_iso(g, w)
        assert iso.bijective and iso.left_linear
        assert reflexivity_check(g, w)
    dims = lemma_dimensions(g)
    assert dims["Hom^C(C,M)"] == dims["Hom_S(M*,S)"]
    assert dims["Hom^C(M,C)"] == dims["M*"]
    assert len(ws.doc.comodules) >= 1


def test_duality_requires_principal():
    g = datum("twisted-path", "V")
    with pytest.raises(PreconditionError):
        duality_iso(g, g.comodule)


def test_split_extension(galois_name):
    se = split_extension_check(datum(galois_name))
    assert all(se.checks.values()), se.checks
    assert se.right_s_sigma is not None and se.relative_injective is not None
    assert se.theta @ se.theta_inverse == identity(se.theta.field, se.theta.rows)


def test_split_equivalence_needs_galois():
    """k over the dual numbers coalgebra: S = k splits, yet the coaction has no retraction."""
    g = galois_datum(trivial_comodule(dual_number_coring(Field(2))))
    assert not g.verdict.galois
    se = split_extension_check(g)
    assert se.right_s_sigma is not None and se.relative_injective is None
    assert "right sigma iff relatively injective" not in se.checks


def test_faithful_flatness(galois_name):
    ff = faithful_flatness_verdict(datum(galois_name))
    assert ff.certified and ff.routes["principal comodule"]
    assert all(ff.nu_checks.values())


def test_fgp_associated(galois_name):
    g = datum(galois_name)
    v = fgp_associated_check(g, g.dual.comodule)
    assert v.status == "pass"
    assert v.details["generators"] >= 1


def test_fgp_associated_needs_left():
    g = datum("hopf-z2")
    with pytest.raises(ValueError):
        fgp_associated_check(g, g.comodule)


def test_associated_modules_z2():
    d = dk(Q, 2)
    c = d.entwining.coalgebra
    am = associated_modules(d.entwining, d.grouplike, regular_coalgebra_comodule(c, "left"),
                            regular_coalgebra_comodule(c, "right"))
    assert all(am.checks.values()), am.checks
    assert am.box.dim == 2 and am.coinvariants.dim == 1


@settings(max_examples=10)
@given(st.integers(2, 3), st.sampled_from([Q, Field(5)]), st.integers(0, 2))
def test_associated_modules_group(n, f, weight):
    """Both associated-module isomorphisms hold for one-dimensional comodules of k[Z_n]."""
    d = dk(f, n)
    c = d.entwining.coalgebra
    col = Matrix.column(f, [1 if i == weight % n else 0 for i in range(n)])
    u = CoalgebraComodule(c, "left", 1, col)
    x = CoalgebraComodule(c, "right", 1, col)
    am = associated_modules(d.entwining, d.grouplike, u, x)
    assert all(am.checks.values())
    assert am.box.dim == 1 and am.zero_part.dim == 1


@settings(max_examples=6)
@given(st.integers(2, 3), st.sampled_from([Q, Field(2), Field(3)]))
def test_group_split_extension(n, f):
    """Theta and its inverse compose to the identity for cyclic group comodules."""
    cor = coring_from_entwining(dk(f, n).entwining)
    g = galois_datum(grouplike_comodule(cor, (1,) + (0,) * (n * n - 1)))
    se = split_extension_check(g)
    assert all(se.checks.values())
    assert se.theta_inverse @ se.theta == identity(f, se.theta.cols)
