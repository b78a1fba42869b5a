"""Entwining structures, the four bow-tie axioms and Doi-Koppinen data."""
from __future__ import annotations

from dataclasses import dataclass

from .algebra import Algebra, check_algebra
from .coalgebra import Coalgebra, check_coalgebra, is_coalgebra_map, verify_grouplike
from .kernel import Matrix, identity, inverse, kron, permute_factors, rank, swap


@dataclass(frozen=True, eq=False)
class Entwining:
    """``psi: C (x) A -> A (x) C`` together with an optional inverse."""

    algebra: Algebra
    coalgebra: Coalgebra
    psi: Matrix
    psi_inverse: Matrix | None = None
    name: str = ""

    def __post_init__(self):
        n, c = self.algebra.dim, self.coalgebra.dim
        if self.psi.shape != (n * c, c * n):
            raise ValueError(f"psi must be {n * c}x{c * n}")
        if self.psi_inverse is not None and self.psi_inverse.shape != (c * n, n * c):
            raise ValueError("psi_inverse has the wrong shape")

    @property
    def field(self):
        return self.algebra.field

    def with_inverse(self) -> "Entwining":
        inv = invert_psi(self)
        return Entwining(self.algebra, self.coalgebra, self.psi, inv, self.name)


BOWTIE_AXIOMS = ("left pentagon", "right pentagon", "left triangle", "right triangle")


def check_bowtie(e: Entwining) -> list[str]:
    """Names of the failing bow-tie conditions (and the inverse pair, when present)."""
    a, c = e.algebra, e.coalgebra
    f = a.field
    n, m = a.dim, c.dim
    ida, idc = identity(f, n), identity(f, m)
    psi = e.psi
    out = []
    lhs = psi @ kron(idc, a.mul)
    rhs = kron(a.mul, idc) @ kron(ida, psi) @ kron(psi, ida)
    if lhs != rhs:
        out.append("left pentagon")
    lhs = kron(ida, c.comul) @ psi
    rhs = kron(psi, idc) @ kron(idc, psi) @ kron(c.comul, ida)
    if lhs != rhs:
        out.append("right pentagon")
    if psi @ kron(idc, a.unit_column) != kron(a.unit_column, idc):
        out.append("left triangle")
    if kron(ida, c.counit) @ psi != kron(c.counit, ida):
        out.append("right triangle")
    if e.psi_inverse is not None:
        one = identity(f, n * m)
        if psi @ e.psi_inverse != one or e.psi_inverse @ psi != one:
            out.append("inverse")
    return out


def invert_psi(e: Entwining) -> Matrix | None:
    return inverse(e.psi)


def flip_entwining(a: Algebra, c: Coalgebra) -> Entwining:
    """The trivial entwining ``c (x) a -> a (x) c``."""
    f = a.field
    flip = swap(f, c.dim, a.dim)
    return Entwining(a, c, flip, swap(f, a.dim, c.dim), "flip")


# Hopf-side data -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HopfAlgebra:
    algebra: Algebra
    coalgebra: Coalgebra
    antipode: Matrix
    antipode_inverse: Matrix | None = None
    name: str = ""

    @property
    def dim(self) -> int:
        return self.algebra.dim

    @property
    def field(self):
        return self.algebra.field

    def unit(self) -> tuple:
        return self.algebra.unit


def check_hopf(h: HopfAlgebra) -> list[str]:
    a, c = h.algebra, h.coalgebra
    f, n = a.field, a.dim
    out = [f"algebra: {x}" for x in check_algebra(a)] + [f"coalgebra: {x}" for x in check_coalgebra(c)]
    idn = identity(f, n)
    mid = kron(kron(idn, swap(f, n, n)), idn)
    if c.comul @ a.mul != kron(a.mul, a.mul) @ mid @ kron(c.comul, c.comul):
        out.append("comul multiplicative")
    if c.comul.apply(a.unit) != tuple(kron(a.unit_column, a.unit_column).col(0)):
        out.append("comul unital")
    if c.counit @ a.mul != kron(c.counit, c.counit):
        out.append("counit multiplicative")
    if c.counit.apply(a.unit) != (1,):
        out.append("counit unital")
    unit_counit = a.unit_column @ c.counit
    if a.mul @ kron(h.antipode, idn) @ c.comul != unit_counit:
        out.append("left antipode")
    if a.mul @ kron(idn, h.antipode) @ c.comul != unit_counit:
        out.append("right antipode")
    if h.antipode_inverse is not None and h.antipode @ h.antipode_inverse != idn:
        out.append("antipode inverse")
    return out


def check_comodule_algebra(h: HopfAlgebra, a: Algebra, coaction: Matrix) -> list[str]:
    """Right H-comodule algebra axioms for ``coaction: A -> A (x) H``."""
    f = a.field
    n, m = a.dim, h.dim
    ida, idh = identity(f, n), identity(f, m)
    out = []
    if coaction.shape != (n * m, n):
        return ["coaction shape"]
    if kron(coaction, idh) @ coaction != kron(ida, h.coalgebra.comul) @ coaction:
        out.append("coaction coassociativity")
    if kron(ida, h.coalgebra.counit) @ coaction != ida:
        out.append("coaction counit")
    mid = kron(kron(ida, swap(f, m, n)), idh)
    if coaction @ a.mul != kron(a.mul, h.algebra.mul) @ mid @ kron(coaction, coaction):
        out.append("coaction multiplicative")
    if coaction.apply(a.unit) != tuple(kron(a.unit_column, h.algebra.unit_column).col(0)):
        out.append("coaction unital")
    return out


def check_module_coalgebra_quotient(h: HopfAlgebra, c: Coalgebra, action: Matrix,
                                    pi: Matrix) -> list[str]:
    """``pi: H -> C`` is a surjective coalgebra map intertwining right H-actions."""
    f = h.field
    out = []
    idc, idh = identity(f, c.dim), identity(f, h.dim)
    if action.shape != (c.dim, c.dim * h.dim):
        return ["action shape"]
    if action @ kron(idc, h.algebra.mul) != action @ kron(action, idh):
        out.append("action associativity")
    if action @ kron(idc, h.algebra.unit_column) != idc:
        out.append("action unit")
    if not is_coalgebra_map(h.coalgebra, c, pi):
        out.append("pi coalgebra map")
    if rank(pi) != c.dim:
        out.append("pi surjective")
    if pi @ h.algebra.mul != action @ kron(pi, idh):
        out.append("pi right H-linear")
    return out


@dataclass(frozen=True, eq=False)
class DoiKoppinen:
    entwining: Entwining
    grouplike: tuple
    psi_inverse_formula: Matrix | None


class PreconditionError(ValueError):
    """A verified hypothesis of a construction does not hold."""


def doi_koppinen(h: HopfAlgebra, a: Algebra, coaction: Matrix, c: Coalgebra, action: Matrix,
                 pi: Matrix) -> DoiKoppinen:
    """Entwining ``c (x) a -> sum a_0 (x) c.a_1`` from a comodule algebra and a quotient.

    Every hypothesis is verified first; ``PreconditionError`` lists failures.
    """
    problems = [f"hopf: {x}" for x in check_hopf(h)]
    problems += [f"comodule algebra: {x}" for x in check_comodule_algebra(h, a, coaction)]
    problems += [f"quotient: {x}" for x in check_module_coalgebra_quotient(h, c, action, pi)]
    if problems:
        raise PreconditionError("; ".join(problems))
    f = a.field
    n, m, d = a.dim, h.dim, c.dim
    # C (x) A -> C (x) A (x) H -> A (x) C (x) H -> A (x) C
    psi = (kron(identity(f, n), action) @ permute_factors(f, [d, n, m], [1, 0, 2])
           @ kron(identity(f, d), coaction))
    s_inv = h.antipode_inverse if h.antipode_inverse is not None else inverse(h.antipode)
    formula = None
    if s_inv is not None:
        # A (x) C -> A (x) H (x) C -> A (x) H (x) C -> C (x) H (x) A -> C (x) A
        formula = (kron(action, identity(f, n)) @ permute_factors(f, [n, m, d], [2, 1, 0])
                   @ kron(kron(identity(f, n), s_inv), identity(f, d))
                   @ kron(coaction, identity(f, d)))
    e = Entwining(a, c, psi, None, "doi-koppinen")
    inv = invert_psi(e)
    if inv is not None and formula is not None and inv != formula:
        raise PreconditionError("generic inverse of psi disagrees with the antipode formula")
    g = pi.apply(h.algebra.unit)
    if not verify_grouplike(c, g):
        raise PreconditionError("image of the unit is not group-like")
    return DoiKoppinen(Entwining(a, c, psi, inv, "doi-koppinen"), g, formula)


def alpha_consistency(e: Entwining) -> bool:
    """psi^{-1} followed by psi is the identity on every basis tensor of A (x) C."""
    if e.psi_inverse is None:
        return False
    return e.psi @ e.psi_inverse == identity(e.field, e.algebra.dim * e.coalgebra.dim)
