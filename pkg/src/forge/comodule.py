"""Comodules over corings and the constructions built from them."""
from __future__ import annotations

import random
from fractions import Fraction
from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import (AModule, Algebra, Bimodule, DualBasis, DualModule, HomSpace, Tensor,
                      check_module, dual_module, evaluation_operator, find_dual_basis,
                      hom_from_constraints, linearity_operator, regular_module, tensor,
                      tensor_vec)
from .coring import Coring, CoringMorphism, check_coring_morphism, is_grouplike
from .entwining import PreconditionError
from .kernel import (Field, Matrix, Sandwich, Subspace, identity, kron,
                     matrix_operator, null_space, solve_affine, span, swap)


@dataclass(frozen=True, eq=False)
class Comodule:
    """A right (``M -> M (x)_A C``) or left (``M -> C (x)_A M``) comodule.

    The coaction is stored in the coordinates of ``target``; the k-level
    lift through the canonical section is ``coaction_lift``.
    """

    coring: Coring
    side: str
    module: AModule
    coaction: Matrix
    name: str = ""

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        if self.module.side != self.side:
            raise ValueError("module side does not match comodule side")

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def field(self) -> Field:
        return self.coring.field

    @cached_property
    def target(self) -> Tensor:
        if self.side == "right":
            return tensor(self.module, self.coring.carrier)
        return tensor(self.coring.carrier, self.module)

    @cached_property
    def coaction_lift(self) -> Matrix:
        return self.target.sect @ self.coaction


def comodule_from_lift(coring: Coring, side: str, module: AModule, lift: Matrix,
                       name: str = "") -> Comodule:
    """Comodule whose coaction is given into the k-tensor product and projected."""
    if side == "right":
        t = tensor(module, coring.carrier)
    else:
        t = tensor(coring.carrier, module)
    m = Comodule(coring, side, module, t.proj @ lift, name)
    m.__dict__["target"] = t
    return m


def check_comodule(m: Comodule) -> list[str]:
    c = m.coring
    f = m.field
    n = c.algebra.dim
    out = list(check_module(m.module))
    idm, idc, idn = identity(f, m.dim), identity(f, c.dim), identity(f, n)
    t = m.target
    rho = m.coaction
    if rho.shape != (t.dim, m.dim):
        return out + ["coaction shape"]
    lift = m.coaction_lift
    delta = c.comul_lift
    if m.side == "right":
        if rho @ m.module.action != t.module.right @ kron(rho, idn):
            out.append("coaction A-linear")
        t3 = tensor(m.module, c.carrier, c.carrier)
        if t3.proj @ kron(lift, idc) @ lift != t3.proj @ kron(idm, delta) @ lift:
            out.append("coassociativity")
        if m.module.action @ kron(idm, c.counit) @ lift != idm:
            out.append("counit law")
    else:
        if rho @ m.module.action != t.module.left @ kron(idn, rho):
            out.append("coaction A-linear")
        t3 = tensor(c.carrier, c.carrier, m.module)
        if t3.proj @ kron(idc, lift) @ lift != t3.proj @ kron(delta, idm) @ lift:
            out.append("coassociativity")
        if m.module.action @ kron(c.counit, idm) @ lift != idm:
            out.append("counit law")
    return out


def regular_comodule(c: Coring, side: str = "right") -> Comodule:
    """C over itself with coaction the coproduct."""
    carrier = c.carrier
    module = carrier.right_module() if side == "right" else carrier.left_module()
    return comodule_from_lift(c, side, module, c.comul_lift, "regular")


def grouplike_comodule(c: Coring, g: Sequence) -> Comodule:
    """A as a right comodule with ``rho(a) = g a``."""
    if not is_grouplike(c, g):
        raise PreconditionError("element is not group-like")
    a = c.algebra
    f = a.field
    g_times = c.carrier.right @ kron(Matrix.column(f, g), identity(f, a.dim))
    lift = kron(a.unit_column, g_times)
    return comodule_from_lift(c, "right", regular_module(a, "right"), lift, "grouplike")


def zero_comodule(c: Coring, side: str = "right") -> Comodule:
    a = c.algebra
    module = AModule(a, side, 0, Matrix.zeros(a.field, 0, 0))
    return comodule_from_lift(c, side, module, Matrix.zeros(a.field, 0, 0), "zero")


def direct_sum(m: Comodule, n: Comodule) -> Comodule:
    """M (+) N with the blockwise action and coaction."""
    if m.side != n.side or m.coring is not n.coring:
        raise ValueError("direct sum needs comodules of one coring on one side")
    c = m.coring
    f = m.field
    a = c.algebra
    dm, dn, k, na = m.dim, n.dim, c.dim, a.dim
    d = dm + dn
    act = [[0] * (d * na) for _ in range(d)]
    lift = [[0] * d for _ in range(d * k)]
    for src, off in ((m, 0), (n, dm)):
        ds = src.dim
        for i in range(ds):
            for x in range(ds):
                for r in range(na):
                    if m.side == "right":
                        act[off + i][(off + x) * na + r] = src.module.action[i, x * na + r]
                    else:
                        act[off + i][r * d + off + x] = src.module.action[i, r * ds + x]
        sl = src.coaction_lift
        for x in range(ds):
            for i in range(ds):
                for j in range(k):
                    if m.side == "right":
                        lift[(off + i) * k + j][off + x] = sl[i * k + j, x]
                    else:
                        lift[j * d + off + i][off + x] = sl[j * ds + i, x]
    module = AModule(a, m.side, d, Matrix(f, act, d, d * na))
    return comodule_from_lift(c, m.side, module, Matrix(f, lift, d * k, d), "sum")


def tensor_coring_comodule(m: Comodule) -> Comodule:
    """M (x)_A C as a right comodule with coaction ``id (x) Delta``."""
    if m.side != "right":
        raise ValueError("defined for right comodules")
    c = m.coring
    f = m.field
    t = m.target
    module = t.module.right_module()
    t2 = tensor(module, c.carrier)
    rho = (t2.proj @ kron(t.proj, identity(f, c.dim))
           @ kron(identity(f, m.dim), c.comul_lift) @ t.sect)
    out = Comodule(c, "right", module, rho, "M(x)C")
    out.__dict__["target"] = t2
    return out


# hom spaces and endomorphism rings -------------------------------------------


def colinearity_operator(m: Comodule, n: Comodule):
    tn = n.target
    op = Sandwich.of(n.coaction) - Sandwich.of(tn.proj, m.coaction_lift, m.side, m.coring.dim)
    return op, tn.dim, m.dim


def colinear_hom_space(m: Comodule, n: Comodule) -> HomSpace:
    if m.side != n.side:
        raise ValueError("comodules on different sides")
    if m.coring is not n.coring:
        raise ValueError("comodules over different corings")
    return hom_from_constraints(m.field, m.dim, n.dim,
                                [linearity_operator(m.module, n.module), colinearity_operator(m, n)])


def colinear_hom(m: Comodule, n: Comodule) -> list[Matrix]:
    """Basis of the C-colinear A-linear maps M -> N."""
    return list(colinear_hom_space(m, n).basis)


@dataclass(frozen=True, eq=False)
class EndoRing:
    """Colinear endomorphisms with composition (right) or opposite composition (left)."""

    comodule: Comodule
    hom: HomSpace
    mult_table: tuple

    @property
    def basis(self) -> tuple:
        return self.hom.basis

    @property
    def dim(self) -> int:
        return self.hom.dim

    def product_maps(self, s: Matrix, t: Matrix) -> Matrix:
        return s @ t if self.comodule.side == "right" else t @ s

    def coordinates(self, s: Matrix) -> tuple:
        return self.hom.coordinates(s)

    def element(self, coords: Sequence) -> Matrix:
        return self.hom.element(coords)

    @cached_property
    def algebra(self) -> Algebra:
        f = self.comodule.field
        d = self.dim
        cols = [self.mult_table[i][j] for i in range(d) for j in range(d)]
        mul = Matrix.from_columns(f, d, cols) if d else Matrix.zeros(f, 0, 0)
        unit = self.coordinates(identity(f, self.comodule.dim)) if d else ()
        return Algebra(f, d, mul, tuple(unit), "End")

    def multiply(self, x: Sequence, y: Sequence) -> tuple:
        return self.algebra.product(x, y)


def endomorphism_ring(m: Comodule) -> EndoRing:
    hom = colinear_hom_space(m, m)
    table = []
    for s in hom.basis:
        row = []
        for t in hom.basis:
            prod = s @ t if m.side == "right" else t @ s
            row.append(hom.coordinates(prod))
        table.append(tuple(row))
    return EndoRing(m, hom, tuple(table))


# cotensor products and coinvariants ------------------------------------------


@dataclass(frozen=True, eq=False)
class Cotensor:
    """M box_C N as a subspace of the materialised M (x)_A N."""

    tensor: Tensor
    omega: Matrix
    space: Subspace

    @property
    def dim(self) -> int:
        return self.space.dim


def cotensor(m: Comodule, n: Comodule) -> Cotensor:
    if m.side != "right" or n.side != "left":
        raise ValueError("cotensor needs a right and a left comodule")
    if m.coring is not n.coring:
        raise ValueError("comodules over different corings")
    c = m.coring
    f = m.field
    t = tensor(m.module, n.module)
    t3 = tensor(m.module, c.carrier, n.module)
    left = t3.proj @ kron(m.coaction_lift, identity(f, n.dim)) @ t.sect
    right = t3.proj @ kron(identity(f, m.dim), n.coaction_lift) @ t.sect
    omega = left - right
    return Cotensor(t, omega, null_space(omega))


@dataclass(frozen=True, eq=False)
class Coinvariants:
    """g-coinvariants of W with the right action of the g-coinvariants of A."""

    space: Subspace
    base: Subspace
    action: Matrix

    @property
    def dim(self) -> int:
        return self.space.dim


def coinvariant_subalgebra(c: Coring, g: Sequence) -> Subspace:
    """{a in A | g a = a g}."""
    a = c.algebra
    f = a.field
    gcol = Matrix.column(f, g)
    ida = identity(f, a.dim)
    diff = c.carrier.right @ kron(gcol, ida) - c.carrier.left @ kron(ida, gcol)
    return null_space(diff)


def coinvariants(w: Comodule, g: Sequence) -> Coinvariants:
    if w.side != "right":
        raise ValueError("coinvariants are taken in right comodules")
    c = w.coring
    if not is_grouplike(c, g):
        raise PreconditionError("element is not group-like")
    f = w.field
    t = w.target
    diff = w.coaction - t.proj @ kron(identity(f, w.dim), Matrix.column(f, g))
    space = null_space(diff)
    base = coinvariant_subalgebra(c, g)
    cols = []
    for v in space.vectors():
        for b in base.vectors():
            cols.append(space.coordinates(w.module.act(v, b)))
    action = (Matrix.from_columns(f, space.dim, cols) if cols
              else Matrix.zeros(f, space.dim, space.dim * base.dim))
    return Coinvariants(space, base, action)


# duals -----------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DualComodule:
    source: Comodule
    dual: DualModule
    dual_basis: DualBasis
    comodule: Comodule


def _functional_on_coring(m: Comodule, xi: Matrix) -> Matrix:
    """M (x) C -> C, m (x) c -> xi(m) c."""
    c = m.coring
    return c.carrier.left @ kron(xi, identity(m.field, c.dim))


def dual_left_comodule(m: Comodule, db: DualBasis | None = None) -> DualComodule:
    """M* as a left comodule via ``xi -> sum xi(e^i_0) e^i_1 (x) xi^i``."""
    if m.side != "right":
        raise ValueError("dual comodule is built from a right comodule")
    c = m.coring
    f = m.field
    dual = dual_module(m.module)
    db = db or find_dual_basis(m.module, dual)
    if db is None:
        raise PreconditionError("module is not finitely generated projective")
    lifts = [m.coaction_lift.apply(e) for e in db.elements]
    coords = [dual.coordinates(xi) for xi in db.functionals]
    cols = []
    for k in range(dual.dim):
        op = _functional_on_coring(m, dual.functional(k))
        total = [0] * (c.dim * dual.dim)
        for lift, xc in zip(lifts, coords):
            cvec = op.apply(lift)
            piece = tensor_vec(f, cvec, xc)
            total = [f.reduce(x + y) for x, y in zip(total, piece)]
        cols.append(total)
    lift = (Matrix.from_columns(f, c.dim * dual.dim, cols) if cols
            else Matrix.zeros(f, c.dim * dual.dim, 0))
    comod = comodule_from_lift(c, "left", dual.module, lift, "dual")
    return DualComodule(m, dual, db, comod)


def dual_basis_identity_check(d: DualComodule) -> bool:
    """sum e^i_0 (x) e^i_1 (x) xi^i = sum e^i (x) xi^i_{-1} (x) xi^i_0 in M (x)_A C (x)_A M*."""
    m = d.source
    f = m.field
    c = m.coring
    t3 = tensor(m.module, c.carrier, d.comodule.module)
    lhs = [0] * t3.ambient
    rhs = [0] * t3.ambient
    for e, xi in zip(d.dual_basis.elements, d.dual_basis.functionals):
        xc = d.dual.coordinates(xi)
        lhs = [f.reduce(x + y) for x, y in zip(lhs, tensor_vec(f, m.coaction_lift.apply(e), xc))]
        lxi = d.comodule.coaction_lift.apply(xc)
        rhs = [f.reduce(x + y) for x, y in zip(rhs, tensor_vec(f, e, lxi))]
    return t3.project(lhs) == t3.project(rhs)


def dual_pairing_check(d: DualComodule) -> bool:
    """sum xi(m_0) m_1 = sum xi_{-1} xi_0(m) for all basis functionals and vectors."""
    m = d.source
    c = m.coring
    f = m.field
    dual = d.dual
    for k in range(dual.dim):
        xi = dual.functional(k)
        lhs_op = _functional_on_coring(m, xi) @ m.coaction_lift
        lift = d.comodule.coaction_lift.col(k)
        for j in range(m.dim):
            # C (x) M* -> C (x) A -> C
            vals = [dual.functional(i).col(j) for i in range(dual.dim)]
            ev = Matrix.from_columns(f, c.algebra.dim, vals) if vals else Matrix.zeros(
                f, c.algebra.dim, 0)
            rhs = c.carrier.right @ kron(identity(f, c.dim), ev)
            if rhs.apply(lift) != lhs_op.col(j):
                return False
    return True


@dataclass(frozen=True, eq=False)
class GammaIso:
    source: EndoRing
    target: EndoRing
    forward: Matrix
    backward: Matrix


def gamma_iso(m: Comodule, d: DualComodule | None = None) -> GammaIso:
    """Ring isomorphism from End^C(M) to End^C(M*) sending s to ``xi -> xi o s``."""
    f = m.field
    d = d or dual_left_comodule(m)
    s_ring = endomorphism_ring(m)
    t_ring = endomorphism_ring(d.comodule)
    dual = d.dual
    db = d.dual_basis
    fwd_cols = []
    for s in s_ring.basis:
        # Gamma(s)(xi) = sum_i xi(s(e^i)) xi^i
        cols = []
        for k in range(dual.dim):
            xi = dual.functional(k)
            total = Matrix.zeros(f, xi.rows, xi.cols)
            for e, xii in zip(db.elements, db.functionals):
                a_elem = xi.apply(s.apply(e))
                total = total + m.coring.algebra.left_mult(a_elem) @ xii
            cols.append(dual.coordinates(total))
        gs = Matrix.from_columns(f, dual.dim, cols)
        fwd_cols.append(t_ring.coordinates(gs))
    bwd_cols = []
    for t in t_ring.basis:
        total = Matrix.zeros(f, m.dim, m.dim)
        for e, xii in zip(db.elements, db.functionals):
            txi = dual.hom.element(t.apply(dual.coordinates(xii)))
            total = total + evaluation_operator(m.module, txi, e)
        bwd_cols.append(s_ring.coordinates(total))
    fwd = Matrix.from_columns(f, t_ring.dim, fwd_cols) if fwd_cols else Matrix.zeros(f, 0, 0)
    bwd = Matrix.from_columns(f, s_ring.dim, bwd_cols) if bwd_cols else Matrix.zeros(f, 0, 0)
    return GammaIso(s_ring, t_ring, fwd, bwd)


def gamma_multiplicative(g: GammaIso) -> bool:
    s, t = g.source, g.target
    for i in range(s.dim):
        for j in range(s.dim):
            prod = s.mult_table[i][j]
            lhs = g.forward.apply(prod)
            rhs = t.multiply(g.forward.col(i), g.forward.col(j))
            if lhs != rhs:
                return False
    return True


# simplicity --------------------------------------------------------------------


@dataclass(frozen=True)
class SimplicityVerdict:
    kind: str  # "simple", "not simple" or "unsupported"
    witness: Subspace | None = None
    reason: str = ""

    @property
    def is_simple(self) -> bool:
        return self.kind == "simple"


class _Echelon:
    """Incremental reduced basis used by the spinning routine."""

    def __init__(self, field: Field, n: int):
        self.field = field
        self.n = n
        self.rows: dict[int, list] = {}

    def reduce(self, v):
        f = self.field
        v = list(v)
        for pc, row in self.rows.items():
            c = v[pc]
            if c:
                v = [f.reduce(x - c * y) for x, y in zip(v, row)]
        return v

    def add(self, v) -> list | None:
        f = self.field
        v = self.reduce(v)
        pc = next((j for j, x in enumerate(v) if x), None)
        if pc is None:
            return None
        inv = f.inv(v[pc])
        v = [f.reduce(x * inv) for x in v]
        for k, row in self.rows.items():
            c = row[pc]
            if c:
                self.rows[k] = [f.reduce(x - c * y) for x, y in zip(row, v)]
        self.rows[pc] = v
        return v

    def __len__(self):
        return len(self.rows)


def spin(field: Field, ops: Sequence[Matrix], seeds: Sequence[Sequence], n: int) -> Subspace:
    """Smallest subspace containing ``seeds`` and stable under every operator."""
    ech = _Echelon(field, n)
    queue = []
    for v in seeds:
        r = ech.add(v)
        if r is not None:
            queue.append(r)
    while queue and len(ech) < n:
        v = queue.pop()
        for op in ops:
            r = ech.add(op.apply(v))
            if r is not None:
                queue.append(r)
    return span(field, n, list(ech.rows.values()))


def comodule_operators(m: Comodule) -> list[Matrix] | None:
    """Operators whose common invariant subspaces are the subcomodules.

    These are the right A-actions and ``m -> m_0 f(m_1)`` for f in a dual
    basis of C as a left A-module.  ``None`` when C is not f.g. projective
    on the left, where the translation is not available.
    """
    if m.side != "right":
        raise ValueError("implemented for right comodules")
    c = m.coring
    a = c.algebra
    f = a.field
    n = a.dim
    carrier = c.carrier
    op_algebra = a.opposite()
    as_right = AModule(op_algebra, "right", c.dim, carrier.left @ swap(f, c.dim, n))
    db = find_dual_basis(as_right)
    if db is None:
        return None
    ops = [m.module.operator(a.basis(i)) for i in range(n)]
    idm = identity(f, m.dim)
    for phi in db.functionals:
        ops.append(m.module.action @ kron(idm, phi) @ m.coaction_lift)
    return ops


def _char_poly_factors(field: Field, theta: Matrix):
    """Monic irreducible factors of the characteristic polynomial, as coefficient lists."""
    import sympy
    x = sympy.Symbol("x")
    entries = [sympy.Rational(Fraction(v).numerator, Fraction(v).denominator)
               for v in theta.flatten()]
    sm = sympy.Matrix(theta.rows, theta.cols, entries)
    if field.p:
        poly = sympy.Poly(sm.charpoly(x).as_expr(), x, modulus=field.p)
    else:
        poly = sympy.Poly(sm.charpoly(x).as_expr(), x, domain="QQ")
    out = []
    for fac, _mult in poly.factor_list()[1]:
        coeffs = []
        for cf in fac.all_coeffs():
            r = sympy.Rational(cf)
            coeffs.append(field(Fraction(int(r.p), int(r.q))))
        lead = field.inv(coeffs[0])
        out.append([field.reduce(cf * lead) for cf in coeffs])
    out.sort(key=lambda cs: (len(cs), [field.format(v) for v in cs]))
    return out


def _poly_at(field: Field, coeffs, theta: Matrix) -> Matrix:
    n = theta.rows
    acc = Matrix.zeros(field, n, n)
    one = identity(field, n)
    for cf in coeffs:
        acc = acc @ theta + one.scale(cf)
    return acc


def _random_element(field: Field, ops: Sequence[Matrix], rng: random.Random, n: int) -> Matrix:
    words = list(ops)
    for i in range(len(ops)):
        for j in range(len(ops)):
            words.append(ops[i] @ ops[j])
    theta = Matrix.zeros(field, n, n)
    for w in words:
        if field.p:
            c = rng.randrange(field.p)
        else:
            c = rng.randint(-3, 3)
        if c:
            theta = theta + w.scale(field(c))
    return theta


def _norton(field: Field, ops: Sequence[Matrix], n: int, tries: int, seed: int):
    """Holt-Rees style irreducibility test; returns a verdict or ``None`` if undecided."""
    rng = random.Random(seed)
    ops_t = [op.T for op in ops]
    for _ in range(tries):
        theta = _random_element(field, ops, rng, n)
        for coeffs in _char_poly_factors(field, theta):
            ptheta = _poly_at(field, coeffs, theta)
            kernel = null_space(ptheta)
            if kernel.dim == 0:
                continue
            v = kernel.vectors()[0]
            sub = spin(field, ops, [v], n)
            if sub.dim < n:
                return SimplicityVerdict("not simple", sub, "spun a proper subcomodule")
            if kernel.dim != len(coeffs) - 1:
                continue
            kt = null_space(ptheta.T)
            w = kt.vectors()[0]
            dual_sub = spin(field, ops_t, [w], n)
            if dual_sub.dim < n:
                ann = null_space(Matrix.from_columns(field, n, dual_sub.vectors()).T)
                return SimplicityVerdict("not simple", ann, "annihilator of a dual submodule")
            return SimplicityVerdict("simple", None, "irreducibility certificate")
    return None


def _exhaustive_spin(field: Field, ops: Sequence[Matrix], n: int) -> SimplicityVerdict:
    """Spin one representative of every line of F_p^n."""
    p = field.p
    for idx in range(1, p ** n):
        v = []
        x = idx
        for _ in range(n):
            v.append(x % p)
            x //= p
        v.reverse()
        lead = next(c for c in v if c)
        if lead != 1:
            continue
        sub = spin(field, ops, [v], n)
        if sub.dim < n:
            return SimplicityVerdict("not simple", sub, "exhaustive spin")
    return SimplicityVerdict("simple", None, "exhaustive spin")


def is_simple(m: Comodule, tries: int = 40, seed: int = 0) -> SimplicityVerdict:
    """Decide simplicity: complete over prime fields, certificate-only over Q."""
    f = m.field
    n = m.dim
    if n == 0:
        return SimplicityVerdict("not simple", None, "zero comodule")
    ops = comodule_operators(m)
    if ops is None:
        return SimplicityVerdict("unsupported", None, "coring not projective as a left module")
    verdict = _norton(f, ops, n, tries, seed)
    if verdict is not None:
        return verdict
    if f.p and f.p ** n <= 200000:
        return _exhaustive_spin(f, ops, n)
    return SimplicityVerdict("unsupported", None, "no certificate found")


def subcomodule_stable(m: Comodule, sub: Subspace) -> bool:
    """Direct test: sub . A within sub and rho(sub) within the image of sub (x) C."""
    c = m.coring
    f = m.field
    a = c.algebra
    vecs = sub.vectors()
    for v in vecs:
        for i in range(a.dim):
            if not sub.contains(m.module.act(v, a.basis(i))):
                return False
    image = []
    t = m.target
    for v in vecs:
        for j in range(c.dim):
            image.append(t.project(tensor_vec(f, v, [1 if k == j else 0 for k in range(c.dim)])))
    img = span(f, t.dim, image)
    return all(img.contains(m.coaction.apply(v)) for v in vecs)


# relative injectivity and induction ------------------------------------------


def is_relatively_injective(m: Comodule) -> Matrix | None:
    """A colinear A-linear retraction of the coaction, or ``None`` if none exists."""
    if m.side != "right":
        raise ValueError("implemented for right comodules")
    f = m.field
    x = tensor_coring_comodule(m)
    ops = [linearity_operator(x.module, m.module), colinearity_operator(x, m)]
    shape = (m.dim, x.dim)
    cons = []
    for fn, r, cdim in ops:
        cons.append((matrix_operator(f, fn, shape, r * cdim), (0,) * (r * cdim)))
    retract = matrix_operator(f, Sandwich.of(right=m.coaction), shape, m.dim * m.dim)
    cons.append((retract, identity(f, m.dim).flatten()))
    sol = solve_affine(cons, m.dim * x.dim)
    if sol is None:
        return None
    return Matrix.unflatten(f, sol, m.dim, x.dim)


def base_change_bimodule(morphism: CoringMorphism, side: str = "left") -> Bimodule:
    """B as an (A, B)-bimodule (``side='left'``) or (B, A)-bimodule via alpha."""
    b = morphism.target.algebra
    f = b.field
    alpha = morphism.alpha
    a = morphism.source.algebra
    idb = identity(f, b.dim)
    if side == "left":
        return Bimodule(f, b.dim, a, b.mul @ kron(alpha, idb), b, b.mul)
    return Bimodule(f, b.dim, b, b.mul, a, b.mul @ kron(idb, alpha))


def induced_comodule(m: Comodule, morphism: CoringMorphism) -> Comodule:
    """M (x)_A B as a right D-comodule, ``m (x) b -> sum m_0 (x) gamma(m_1) b``."""
    if m.side != "right":
        raise ValueError("induction is defined for right comodules")
    bad = check_coring_morphism(morphism)
    if bad:
        raise PreconditionError("invalid coring morphism: " + ", ".join(bad))
    c, d = morphism.source, morphism.target
    if m.coring is not c:
        raise ValueError("comodule is not over the source coring")
    b = d.algebra
    f = m.field
    bmod = base_change_bimodule(morphism, "left")
    x = tensor(m.module, bmod)
    module = x.module.right_module()
    t = tensor(module, d.carrier)
    idm, idb, idd = identity(f, m.dim), identity(f, b.dim), identity(f, d.dim)
    lift = (kron(x.proj, idd) @ kron(idm, kron(b.unit_column, idd)) @ kron(idm, d.carrier.right)
            @ kron(idm, kron(morphism.gamma, idb)) @ kron(m.coaction_lift, idb) @ x.sect)
    out = Comodule(d, "right", module, t.proj @ lift, "induced")
    out.__dict__["target"] = t
    out.__dict__["presentation"] = x
    return out


def induced_left_comodule(morphism: CoringMorphism) -> Comodule:
    """B (x)_A C as a left D-comodule, ``b (x) c -> sum b gamma(c_1) (x) c_2``."""
    bad = check_coring_morphism(morphism)
    if bad:
        raise PreconditionError("invalid coring morphism: " + ", ".join(bad))
    c, d = morphism.source, morphism.target
    b = d.algebra
    f = b.field
    bmod = base_change_bimodule(morphism, "right")
    y = tensor(bmod, c.carrier)
    module = y.module.left_module()
    t = tensor(d.carrier, module)
    idb, idc, idd = identity(f, b.dim), identity(f, c.dim), identity(f, d.dim)
    lift = (kron(idd, y.proj) @ kron(idd, kron(b.unit_column, idc)) @ kron(d.carrier.left, idc)
            @ kron(idb, kron(morphism.gamma, idc)) @ kron(idb, c.comul_lift) @ y.sect)
    out = Comodule(d, "left", module, t.proj @ lift, "induced-left")
    out.__dict__["target"] = t
    out.__dict__["presentation"] = y
    return out
