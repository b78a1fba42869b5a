"""Comatrix corings, canonical maps, Galois and principal verdicts, strong connections."""
from __future__ import annotations

import weakref
from dataclasses import dataclass
from functools import cached_property, wraps
from typing import Sequence

from .algebra import (AModule, Algebra, Bimodule, linearity_operator,
                      section_of_action, subalgebra)
from .coalgebra import Cointegral, check_cointegral, verify_grouplike
from .comodule import (Comodule, DualComodule, EndoRing, SimplicityVerdict, colinear_hom_space,
                       colinearity_operator, comodule_from_lift, dual_left_comodule,
                       endomorphism_ring, regular_comodule)
from .coring import Coring, CoringMorphism, check_coring_morphism
from .entwining import Entwining, PreconditionError, check_bowtie
from .kernel import (Field, Matrix, Quotient, Sandwich, column_space, hstack_all, identity, inverse,
                     kernel_basis, kron, matrix_operator, null_space, quotient_space, rank,
                     solve_affine)


def balanced_quotient(field: Field, x_dim: int, right_ops: Sequence[Matrix], m_dim: int,
                      left_ops: Sequence[Matrix]) -> Quotient:
    """X (x)_S M as a quotient of X (x)_k M, from the actions of a basis of S."""
    ix, im = identity(field, x_dim), identity(field, m_dim)
    rels = [kron(r, im) - kron(ix, l) for r, l in zip(right_ops, left_ops)]
    rel = hstack_all(field, rels, x_dim * m_dim)
    return quotient_space(x_dim * m_dim, rel)


def s_module(ring: EndoRing) -> AModule:
    """M as a left module over its colinear endomorphism ring (right comodules)."""
    m = ring.comodule
    f = m.field
    cols = []
    for s in ring.basis:
        for j in range(m.dim):
            cols.append(s.col(j))
    action = (Matrix.from_columns(f, m.dim, cols) if cols
              else Matrix.zeros(f, m.dim, 0))
    return AModule(ring.algebra, "left", m.dim, action)


def dual_s_module(ring: EndoRing, d: DualComodule) -> AModule:
    """M* as a right S-module, ``xi . s = xi o s``."""
    f = ring.comodule.field
    dual = d.dual
    cols = []
    for k in range(dual.dim):
        for s in ring.basis:
            cols.append(dual.coordinates(dual.functional(k) @ s))
    action = (Matrix.from_columns(f, dual.dim, cols) if cols
              else Matrix.zeros(f, dual.dim, 0))
    return AModule(ring.algebra, "right", dual.dim, action)


@dataclass(frozen=True, eq=False)
class GaloisDatum:
    """A right comodule with the dual basis, S, the comatrix coring and the canonical map."""

    comodule: Comodule
    dual: DualComodule
    endo: EndoRing
    presentation: Quotient
    comatrix: Coring
    can: Matrix
    can_lifted: Matrix

    @property
    def field(self) -> Field:
        return self.comodule.field

    @cached_property
    def s_module(self) -> AModule:
        return s_module(self.endo)

    @cached_property
    def dual_s_module(self) -> AModule:
        return dual_s_module(self.endo, self.dual)

    @cached_property
    def verdict(self) -> "GaloisVerdict":
        return is_galois(self)

    @cached_property
    def can_inverse(self) -> Matrix | None:
        return inverse(self.can)


def _functional_to_coring(m: Comodule, xi: Matrix) -> Matrix:
    c = m.coring
    return c.carrier.left @ kron(xi, identity(m.field, c.dim))


def comatrix_coring(m: Comodule, d: DualComodule | None = None,
                    ring: EndoRing | None = None) -> tuple[Coring, Quotient]:
    """M* (x)_S M with ``xi (x) m -> sum xi (x) e^i (x) xi^i (x) m`` and counit ``xi(m)``."""
    f = m.field
    a = m.coring.algebra
    d = d or dual_left_comodule(m)
    ring = ring or endomorphism_ring(m)
    dual = d.dual
    nd, dm, n = dual.dim, m.dim, a.dim
    right_ops = [dual_s_module(ring, d).operator(ring.algebra.basis(i)) for i in range(ring.dim)]
    q = balanced_quotient(f, nd, right_ops, dm, list(ring.basis))
    left = q.proj @ kron(dual.module.action, identity(f, dm)) @ kron(identity(f, n), q.sect)
    right = q.proj @ kron(identity(f, nd), m.module.action) @ kron(q.sect, identity(f, n))
    carrier = Bimodule(f, q.dim, a, left, a, right)
    # ambient coproduct: xi_k (x) e_j -> sum_i [xi_k (x) e^i] (x) [xi^i (x) e_j]
    pieces = []
    for e, xi in zip(d.dual_basis.elements, d.dual_basis.functionals):
        first = q.proj @ kron(identity(f, nd), Matrix.column(f, e))
        second = q.proj @ kron(Matrix.column(f, dual.coordinates(xi)), identity(f, dm))
        # (xi_k (x) e_j) -> first(xi_k) (x) second(e_j)
        pieces.append(kron(first, second))
    total = pieces[0]
    for p in pieces[1:]:
        total = total + p
    lift = total @ q.sect
    cols = []
    for k in range(nd):
        for j in range(dm):
            cols.append(dual.functional(k).col(j))
    counit_amb = Matrix.from_columns(f, n, cols)
    from .coring import coring_from_lift
    cor = coring_from_lift(a, carrier, lift, counit_amb @ q.sect, "comatrix")
    return cor, q


def canonical_lifted(m: Comodule, d: DualComodule) -> Matrix:
    """``xi (x) m -> sum xi(m_0) m_1`` on M* (x)_k M."""
    f = m.field
    dual = d.dual
    cols = []
    for k in range(dual.dim):
        op = _functional_to_coring(m, dual.functional(k)) @ m.coaction_lift
        for j in range(m.dim):
            cols.append(op.col(j))
    return Matrix.from_columns(f, m.coring.dim, cols)


def galois_datum(m: Comodule) -> GaloisDatum:
    if m.side != "right":
        raise ValueError("Galois data are assembled for right comodules")
    d = dual_left_comodule(m)
    ring = endomorphism_ring(m)
    cor, q = comatrix_coring(m, d, ring)
    lifted = canonical_lifted(m, d)
    return GaloisDatum(m, d, ring, q, cor, lifted @ q.sect, lifted)


def canonical_map(g: GaloisDatum) -> Matrix:
    return g.can


def canonical_morphism(g: GaloisDatum) -> CoringMorphism:
    f = g.field
    return CoringMorphism(g.comatrix, g.comodule.coring,
                          identity(f, g.comodule.coring.algebra.dim), g.can, "can")


def check_canonical(g: GaloisDatum) -> list[str]:
    """``can`` is a coring morphism and factors the lifted map."""
    out = list(check_coring_morphism(canonical_morphism(g)))
    if g.can @ g.presentation.proj != g.can_lifted:
        out.append("lifted canonical map does not factor")
    return out


@dataclass(frozen=True)
class GaloisVerdict:
    galois: bool
    rank: int
    source_dim: int
    target_dim: int
    kernel_witness: tuple | None = None
    cokernel_witness: tuple | None = None

    @property
    def surjective(self) -> bool:
        return self.rank == self.target_dim


def is_galois(g: GaloisDatum) -> GaloisVerdict:
    can = g.can
    r = rank(can)
    ker = kernel_basis(can)
    kw = ker.col(0) if ker.cols else None
    cw = None
    if r < can.rows:
        img = column_space(can)
        for j in range(can.rows):
            e = tuple(1 if i == j else 0 for i in range(can.rows))
            if not img.contains(e):
                cw = e
                break
    ok = r == can.rows == can.cols
    return GaloisVerdict(ok, r, can.cols, can.rows, kw, cw)


# adjunction --------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class EvaluationMap:
    """phi_N : Hom^C(M, N) (x)_S M -> N."""

    hom: object
    presentation: Quotient
    matrix: Matrix

    @property
    def bijective(self) -> bool:
        m = self.matrix
        return m.rows == m.cols and rank(m) == m.rows

    @property
    def surjective(self) -> bool:
        return rank(self.matrix) == self.matrix.rows


def hom_right_ops(hom, ring: EndoRing) -> list[Matrix]:
    """Right S-action on Hom^C(M, N) by precomposition, one matrix per basis element of S."""
    f = ring.comodule.field
    ops = []
    for s in ring.basis:
        cols = [hom.coordinates(b @ s) for b in hom.basis]
        ops.append(Matrix.from_columns(f, hom.dim, cols) if cols else Matrix.zeros(f, 0, 0))
    return ops


def evaluation_map(m: Comodule, n: Comodule, ring: EndoRing | None = None) -> EvaluationMap:
    if m.side != n.side or m.coring is not n.coring:
        raise ValueError("comodules must share the coring and side")
    f = m.field
    ring = ring or endomorphism_ring(m)
    hom = colinear_hom_space(m, n)
    q = balanced_quotient(f, hom.dim, hom_right_ops(hom, ring), m.dim, list(ring.basis))
    cols = []
    for b in hom.basis:
        for j in range(m.dim):
            cols.append(b.col(j))
    amb = Matrix.from_columns(f, n.dim, cols) if cols else Matrix.zeros(f, n.dim, 0)
    return EvaluationMap(hom, q, amb @ q.sect)


@dataclass(frozen=True, eq=False)
class UnitMap:
    """nu_X : X -> Hom^C(M, X (x)_S M) together with the comodule X (x)_S M."""

    module: AModule
    tensor_comodule: Comodule
    presentation: Quotient
    hom: object
    matrix: Matrix

    @property
    def bijective(self) -> bool:
        m = self.matrix
        return m.rows == m.cols and rank(m) == m.rows


def tensor_s_comodule(x: AModule, ring: EndoRing) -> tuple[Comodule, Quotient]:
    """X (x)_S M as a right C-comodule with coaction ``x (x) rho``."""
    m = ring.comodule
    c = m.coring
    a = c.algebra
    f = m.field
    ops = [x.operator(ring.algebra.basis(i)) for i in range(ring.dim)]
    q = balanced_quotient(f, x.dim, ops, m.dim, list(ring.basis))
    ix = identity(f, x.dim)
    action = q.proj @ kron(ix, m.module.action) @ kron(q.sect, identity(f, a.dim))
    module = AModule(a, "right", q.dim, action)
    lift = kron(q.proj, identity(f, c.dim)) @ kron(ix, m.coaction_lift) @ q.sect
    out = comodule_from_lift(c, "right", module, lift, "X(x)_S M")
    return out, q


def unit_map(x: AModule, ring: EndoRing) -> UnitMap:
    if x.side != "right" or x.algebra is not ring.algebra:
        raise ValueError("X must be a right module over the endomorphism ring")
    m = ring.comodule
    f = m.field
    xm, q = tensor_s_comodule(x, ring)
    hom = colinear_hom_space(m, xm)
    cols = []
    for i in range(x.dim):
        ex = Matrix.column(f, tuple(1 if k == i else 0 for k in range(x.dim)))
        cols.append(hom.coordinates(q.proj @ kron(ex, identity(f, m.dim))))
    mat = Matrix.from_columns(f, hom.dim, cols) if cols else Matrix.zeros(f, hom.dim, 0)
    return UnitMap(x, xm, q, hom, mat)


# principality ------------------------------------------------------------------


def is_principal_via_splitting(g: GaloisDatum, require_galois: bool = True) -> Matrix | None:
    """A left S-linear section ``M -> S (x)_k M`` of the action, or ``None``."""
    if require_galois and not g.verdict.galois:
        raise PreconditionError("principality is defined for Galois comodules")
    return section_of_action(g.s_module)


def check_action_section(mod: AModule, sigma: Matrix) -> list[str]:
    r = mod.algebra
    f = mod.field
    d = mod.dim
    out = []
    if mod.action @ sigma != identity(f, d):
        out.append("section")
    for i in range(r.dim):
        op = mod.operator(r.basis(i))
        if mod.side == "left":
            big = kron(r.left_mult(r.basis(i)), identity(f, d))
        else:
            big = kron(identity(f, d), r.right_mult(r.basis(i)))
        if sigma @ op != big @ sigma:
            out.append("linearity")
            break
    return out


def lifted_source_comodule(g: GaloisDatum) -> Comodule:
    """M* (x)_k M as a left C-comodule with coaction ``rho_{M*} (x) M``."""
    m = g.comodule
    f = m.field
    a = m.coring.algebra
    dual = g.dual.dual
    module = AModule(a, "left", dual.dim * m.dim, kron(dual.module.action, identity(f, m.dim)))
    lift = kron(g.dual.comodule.coaction_lift, identity(f, m.dim))
    return comodule_from_lift(m.coring, "left", module, lift, "M*(x)M")


def is_principal_via_colinear_section(g: GaloisDatum) -> Matrix | None:
    """A left C-colinear section of ``M* (x)_k M -> C``, or ``None``."""
    m = g.comodule
    f = m.field
    c = m.coring
    src = regular_comodule(c, "left")
    tgt = lifted_source_comodule(g)
    shape = (tgt.dim, c.dim)
    cons = []
    for fn, r, k in (linearity_operator(src.module, tgt.module), colinearity_operator(src, tgt)):
        cons.append((matrix_operator(f, fn, shape, r * k), (0,) * (r * k)))
    cons.append((matrix_operator(f, Sandwich.of(g.can_lifted), shape, c.dim * c.dim),
                 identity(f, c.dim).flatten()))
    sol = solve_affine(cons, shape[0] * shape[1])
    if sol is None:
        return None
    return Matrix.unflatten(f, sol, *shape)


def check_colinear_section(g: GaloisDatum, tau: Matrix) -> list[str]:
    m = g.comodule
    src = regular_comodule(m.coring, "left")
    tgt = lifted_source_comodule(g)
    out = []
    if g.can_lifted @ tau != identity(m.field, m.coring.dim):
        out.append("section")
    fn, _, _ = linearity_operator(src.module, tgt.module)
    if not fn(tau).is_zero():
        out.append("left A-linear")
    fn, _, _ = colinearity_operator(src, tgt)
    if not fn(tau).is_zero():
        out.append("left colinear")
    return out


@dataclass(frozen=True)
class PrincipalVerdict:
    splitting: Matrix | None
    colinear_section: Matrix | None

    @property
    def agree(self) -> bool:
        return (self.splitting is None) == (self.colinear_section is None)

    @property
    def principal(self) -> bool:
        return self.splitting is not None and self.colinear_section is not None


def per_datum(fn):
    """Memoise a pure function of a Galois datum for as long as the datum lives."""
    cache = weakref.WeakKeyDictionary()

    @wraps(fn)
    def wrapper(g):
        if g not in cache:
            cache[g] = fn(g)
        return cache[g]
    return wrapper


@per_datum
def principal_verdict(g: GaloisDatum) -> PrincipalVerdict:
    """Both feasibility routes; they must agree on every Galois comodule."""
    return PrincipalVerdict(is_principal_via_splitting(g), is_principal_via_colinear_section(g))


# simple comodules ----------------------------------------------------------------


@dataclass(frozen=True)
class SimpleGaloisVerdict:
    galois: bool
    can_rank: int
    coring_dim: int
    agrees_with_full_check: bool


def simple_galois_check(g: GaloisDatum, simplicity: SimplicityVerdict | str) -> SimpleGaloisVerdict:
    """For a simple comodule, surjectivity of ``can`` already decides the Galois property."""
    kind = simplicity.kind if isinstance(simplicity, SimplicityVerdict) else simplicity
    if kind != "simple":
        raise PreconditionError("comodule is not known to be simple")
    r = rank(g.can)
    n = g.comodule.coring.dim
    surj = r == n
    return SimpleGaloisVerdict(surj, r, n, surj == g.verdict.galois)


# entwined algebras and strong connections ------------------------------------------


def entwined_coaction(e: Entwining, grouplike: Sequence) -> Matrix:
    """``a -> psi(e (x) a)``."""
    f = e.field
    return e.psi @ kron(Matrix.column(f, grouplike), identity(f, e.algebra.dim))


def entwined_coinvariants(e: Entwining, grouplike: Sequence) -> tuple[Algebra, Matrix]:
    """{s in A | rho(s a) = s rho(a)} as an algebra with its inclusion into A."""
    a = e.algebra
    f = a.field
    n, c = a.dim, e.coalgebra.dim
    rho = entwined_coaction(e, grouplike)
    rows = []
    for i in range(n):
        # column i: rho(s_i a) - s_i rho(a) for all basis a, as one long vector
        ls = a.left_mult(a.basis(i))
        diff = rho @ ls - kron(ls, identity(f, c)) @ rho
        rows.append(diff.flatten())
    system = Matrix.from_columns(f, n * c * n, rows)
    return subalgebra(a, null_space(system))


def lifted_canonical(e: Entwining, grouplike: Sequence) -> Matrix:
    """``a (x) a' -> a rho(a')`` on A (x)_k A."""
    a = e.algebra
    f = a.field
    rho = entwined_coaction(e, grouplike)
    return kron(a.mul, identity(f, e.coalgebra.dim)) @ kron(identity(f, a.dim), rho)


@dataclass(frozen=True, eq=False)
class StrongConnection:
    kappa_hat: Matrix
    kappa: Matrix
    tau_hat: Matrix
    sigma_tilde: Matrix
    sigma: Matrix
    coinvariants: Algebra
    inclusion: Matrix
    checks: dict


def strong_connection(e: Entwining, grouplike: Sequence,
                      delta: Cointegral | None) -> StrongConnection:
    """The section kappa of the lifted canonical map and the equivariant section sigma."""
    if delta is None:
        raise PreconditionError("a cointegral is required")
    bad = check_bowtie(e)
    if bad:
        raise PreconditionError("bow-tie axioms fail: " + ", ".join(bad))
    if e.psi_inverse is None:
        e = e.with_inverse()
        if e.psi_inverse is None:
            raise PreconditionError("psi is not invertible")
    if not verify_grouplike(e.coalgebra, grouplike):
        raise PreconditionError("element is not group-like")
    if check_cointegral(e.coalgebra, delta.delta):
        raise PreconditionError("delta is not a cointegral")
    a, c = e.algebra, e.coalgebra
    f = a.field
    n, k = a.dim, c.dim
    ia, ic = identity(f, n), identity(f, k)
    ecol = Matrix.column(f, grouplike)
    rho = entwined_coaction(e, grouplike)
    lrho = e.psi_inverse @ kron(ia, ecol)
    can = lifted_canonical(e, grouplike)
    if rank(can) != n * k:
        raise PreconditionError("lifted canonical map is not surjective")
    target = kron(a.unit_column, ic)
    cols = []
    for j in range(k):
        sol = solve_affine([(can, target.col(j))])
        cols.append(sol)
    tau_hat = Matrix.from_columns(f, n * n, cols)
    kappa_hat = (kron(delta.delta, identity(f, n * n)) @ kron(ic, kron(lrho, ia))
                 @ kron(ic, tau_hat) @ c.comul)
    kappa = kron(a.mul, ia) @ kron(ia, kappa_hat)

    s_alg, incl = entwined_coinvariants(e, grouplike)
    ns = s_alg.dim
    is_ = identity(f, ns)
    a_over_s = AModule(s_alg, "left", n, a.mul @ kron(incl, ia))
    sigma_tilde = section_of_action(a_over_s)
    if sigma_tilde is None:
        raise PreconditionError("A is not projective over its coinvariants")
    sigma = (kron(is_, kron(ia, delta.delta)) @ kron(is_, kron(rho, ic))
             @ kron(sigma_tilde, ic) @ rho)

    checks = {
        "kappa section": can @ kappa == identity(f, n * k),
        "(*) colinear": kron(ic, kappa_hat) @ c.comul == kron(lrho, ia) @ kappa_hat,
        "(**)": can @ tau_hat == target,
        "(***)": (kron(ic, kron(a.mul, ic)) @ kron(lrho, rho) @ tau_hat
                  == kron(ic, kron(a.unit_column, ic)) @ c.comul),
        "sigma splits product": a_over_s.action @ sigma == ia,
        "sigma S-linear": all(
            sigma @ a_over_s.operator(s_alg.basis(i))
            == kron(s_alg.left_mult(s_alg.basis(i)), ia) @ sigma for i in range(ns)),
        "sigma C-colinear": kron(is_, rho) @ sigma == kron(sigma, ic) @ rho,
    }
    return StrongConnection(kappa_hat, kappa, tau_hat, sigma_tilde, sigma, s_alg, incl, checks)
