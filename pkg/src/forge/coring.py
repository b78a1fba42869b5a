"""Corings over finite-dimensional algebras and their morphisms."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .algebra import Algebra, Bimodule, Tensor, check_bimodule, is_algebra_map, tensor, tensor_vec
from .entwining import Entwining, PreconditionError, check_bowtie
from .kernel import Matrix, Sandwich, identity, kron, matrix_operator, rank, solve_affine


@dataclass(frozen=True, eq=False)
class Coring:
    """An A-coring: bimodule carrier, ``comul`` into the materialised C (x)_A C, ``counit`` to A."""

    algebra: Algebra
    carrier: Bimodule
    comul: Matrix
    counit: Matrix
    name: str = ""

    @cached_property
    def cc(self) -> Tensor:
        return tensor(self.carrier, self.carrier)

    @cached_property
    def ccc(self) -> Tensor:
        return tensor(self.carrier, self.carrier, self.carrier)

    @property
    def dim(self) -> int:
        return self.carrier.dim

    @property
    def field(self):
        return self.algebra.field

    @cached_property
    def comul_lift(self) -> Matrix:
        """A k-linear lift C -> C (x)_k C of the coproduct."""
        return self.cc.sect @ self.comul

    def act_left(self, a: Sequence, x: Sequence) -> tuple:
        return self.carrier.act_left(a, x)

    def act_right(self, x: Sequence, a: Sequence) -> tuple:
        return self.carrier.act_right(x, a)


def coring_from_lift(algebra: Algebra, carrier: Bimodule, comul_lift: Matrix, counit: Matrix,
                     name: str = "") -> Coring:
    """Build a coring from a coproduct given into C (x)_k C (projected here)."""
    cc = tensor(carrier, carrier)
    c = Coring(algebra, carrier, cc.proj @ comul_lift, counit, name)
    c.__dict__["cc"] = cc
    return c


def check_coring(c: Coring) -> list[str]:
    """Names of violated coring axioms, empty when ``c`` is a coring."""
    a = c.algebra
    f = a.field
    n = a.dim
    out = list(check_bimodule(c.carrier))
    idn, idc = identity(f, n), identity(f, c.dim)
    cc = c.cc
    comul = c.comul
    if comul.shape != (cc.dim, c.dim):
        return out + ["comul shape"]
    if comul @ c.carrier.left != cc.module.left @ kron(idn, comul):
        out.append("comul left A-linear")
    if comul @ c.carrier.right != cc.module.right @ kron(comul, idn):
        out.append("comul right A-linear")
    if c.counit @ c.carrier.left != a.mul @ kron(idn, c.counit):
        out.append("counit left A-linear")
    if c.counit @ c.carrier.right != a.mul @ kron(c.counit, idn):
        out.append("counit right A-linear")
    lift = cc.sect @ comul
    if c.carrier.left @ kron(c.counit, idc) @ lift != idc:
        out.append("left counit law")
    if c.carrier.right @ kron(idc, c.counit) @ lift != idc:
        out.append("right counit law")
    ccc = c.ccc
    if ccc.proj @ kron(lift, idc) @ lift != ccc.proj @ kron(idc, lift) @ lift:
        out.append("coassociativity")
    return out


def is_grouplike(c: Coring, g: Sequence) -> bool:
    g = tuple(g)
    if len(g) != c.dim:
        return False
    if c.comul.apply(g) != c.cc.project(tensor_vec(c.field, g, g)):
        return False
    return c.counit.apply(g) == tuple(c.algebra.unit)


# constructions ---------------------------------------------------------------


def trivial_coring(a: Algebra) -> Coring:
    """C = A with the canonical coproduct A -> A (x)_A A and identity counit."""
    f = a.field
    lift = kron(a.unit_column, identity(f, a.dim))
    return coring_from_lift(a, a.regular, lift, identity(f, a.dim), "trivial")


def sweedler_coring(sub: Algebra, a: Algebra, phi: Matrix) -> Coring:
    """The Sweedler coring A (x)_S A of an injective unital algebra map ``phi: S -> A``.

    Coproduct ``x (x) y -> x (x) 1 (x) 1 (x) y`` and counit ``x (x) y -> xy``.
    """
    if not is_algebra_map(sub, a, phi):
        raise PreconditionError("phi is not a unital algebra map")
    if rank(phi) != sub.dim:
        raise PreconditionError("phi is not injective")
    f = a.field
    n = a.dim
    idn = identity(f, n)
    left_factor = Bimodule(f, n, a, a.mul, sub, a.mul @ kron(idn, phi))
    right_factor = Bimodule(f, n, sub, a.mul @ kron(phi, idn), a, a.mul)
    q = tensor(left_factor, right_factor)
    carrier = q.module
    u = a.unit_column
    lift4 = kron(kron(idn, u), kron(u, idn))
    cc = tensor(carrier, carrier)
    comul = cc.proj @ kron(q.proj, q.proj) @ lift4 @ q.sect
    counit = a.mul @ q.sect
    c = Coring(a, carrier, comul, counit, "sweedler")
    c.__dict__["cc"] = cc
    c.__dict__["presentation"] = q
    return c


def entwining_carrier(e: Entwining) -> Bimodule:
    a, c = e.algebra, e.coalgebra
    f = a.field
    n, m = a.dim, c.dim
    left = kron(a.mul, identity(f, m))
    right = kron(a.mul, identity(f, m)) @ kron(identity(f, n), e.psi)
    return Bimodule(f, n * m, a, left, a, right, free_left=m)


def coring_from_entwining(e: Entwining) -> Coring:
    """The A-coring A (x) C with right action ``(a (x) c) a'' = a psi(c (x) a'')``."""
    bad = check_bowtie(e)
    if bad:
        raise PreconditionError("bow-tie axioms fail: " + ", ".join(bad))
    a, c = e.algebra, e.coalgebra
    f = a.field
    n, m = a.dim, c.dim
    idc = identity(f, m)
    lift = kron(identity(f, n), kron(kron(idc, a.unit_column), idc) @ c.comul)
    counit = kron(identity(f, n), c.counit)
    return coring_from_lift(a, entwining_carrier(e), lift, counit, "entwining")


# morphisms -------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class CoringMorphism:
    """``(gamma : alpha)`` from an A-coring to a B-coring."""

    source: Coring
    target: Coring
    alpha: Matrix
    gamma: Matrix
    name: str = ""

    def chi_comul(self) -> Matrix:
        """chi o (gamma (x)_A gamma) o Delta_C as a map C -> D (x)_B D."""
        s, t = self.source, self.target
        return t.cc.proj @ kron(self.gamma, self.gamma) @ s.cc.sect @ s.comul


def check_coring_morphism(m: CoringMorphism) -> list[str]:
    s, t = m.source, m.target
    if m.gamma.shape != (t.dim, s.dim) or m.alpha.shape != (t.algebra.dim, s.algebra.dim):
        raise ValueError("morphism dimensions do not match source and target")
    out = []
    if not is_algebra_map(s.algebra, t.algebra, m.alpha):
        out.append("alpha algebra map")
    if m.gamma @ s.carrier.left != t.carrier.left @ kron(m.alpha, m.gamma):
        out.append("gamma left linear")
    if m.gamma @ s.carrier.right != t.carrier.right @ kron(m.gamma, m.alpha):
        out.append("gamma right linear")
    if m.chi_comul() != t.comul @ m.gamma:
        out.append("comultiplicative")
    if t.counit @ m.gamma != m.alpha @ s.counit:
        out.append("counit")
    return out


def identity_morphism(c: Coring) -> CoringMorphism:
    f = c.field
    return CoringMorphism(c, c, identity(f, c.algebra.dim), identity(f, c.dim), "identity")


def counit_morphism(c: Coring) -> CoringMorphism:
    """``(epsilon : id)`` from C to the trivial coring A."""
    f = c.field
    return CoringMorphism(c, trivial_coring(c.algebra), identity(f, c.algebra.dim), c.counit,
                          "counit")


def find_coring_isomorphism(c: Coring, d: Coring) -> Matrix | None:
    """A bijective ``gamma: C -> D`` over the identity of A, or ``None``.

    The linear conditions (bilinearity, counit) are solved exactly and the
    echelon-minimal solution is then checked for comultiplicativity and rank.
    """
    if c.algebra.dim != d.algebra.dim or c.dim != d.dim:
        return None
    f = c.field
    n = c.algebra.dim
    left_defect = Sandwich.of(right=c.carrier.left) - Sandwich.of(d.carrier.left, None, "left", n)
    right_defect = Sandwich.of(right=c.carrier.right) - Sandwich.of(d.carrier.right, None, "right", n)

    shape = (d.dim, c.dim)
    cons = [
        (matrix_operator(f, left_defect, shape, d.dim * n * c.dim), (0,) * (d.dim * n * c.dim)),
        (matrix_operator(f, right_defect, shape, d.dim * c.dim * n), (0,) * (d.dim * c.dim * n)),
        (matrix_operator(f, Sandwich.of(d.counit), shape, n * c.dim), c.counit.flatten()),
    ]
    sol = solve_affine(cons)
    if sol is None:
        return None
    g = Matrix.unflatten(f, sol, d.dim, c.dim)
    m = CoringMorphism(c, d, identity(f, n), g)
    if check_coring_morphism(m) or rank(g) != c.dim:
        return None
    return g
