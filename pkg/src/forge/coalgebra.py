"""Coalgebras, group-like elements and cointegrals."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .algebra import basis_vector, tensor_vec
from .kernel import Field, Matrix, Sandwich, identity, kron, matrix_operator, solve_affine


@dataclass(frozen=True, eq=False)
class Coalgebra:
    """``comul: C -> C (x) C`` and ``counit: C -> k`` (a 1 x dim matrix)."""

    field: Field
    dim: int
    comul: Matrix
    counit: Matrix
    name: str = ""

    def __post_init__(self):
        if self.comul.shape != (self.dim * self.dim, self.dim):
            raise ValueError(f"comul must be {self.dim * self.dim}x{self.dim}")
        if self.counit.shape != (1, self.dim):
            raise ValueError(f"counit must be 1x{self.dim}")

    def basis(self, i: int) -> tuple:
        return basis_vector(self.dim, i)


def coalgebra_from_table(field: Field, coproducts, counit: Sequence, name: str = "") -> Coalgebra:
    """``coproducts[i]`` is the coordinate vector of Delta(c_i) in C (x) C."""
    n = len(counit)
    comul = Matrix.from_columns(field, n * n, [[field(x) for x in v] for v in coproducts])
    return Coalgebra(field, n, comul, Matrix.from_rows(field, [counit]), name)


def trivial_coalgebra(field: Field) -> Coalgebra:
    return Coalgebra(field, 1, Matrix.identity(field, 1), Matrix.identity(field, 1), "k")


def group_coalgebra(field: Field, order: int, name: str = "") -> Coalgebra:
    """k[Z_n] with every group element group-like."""
    n = order
    coproducts = [basis_vector(n * n, i * n + i) for i in range(n)]
    return coalgebra_from_table(field, coproducts, [1] * n, name or f"k[Z{order}]")


def matrix_coalgebra(field: Field, r: int) -> Coalgebra:
    """M^c(r): basis e_ij (index i*r + j), Delta e_ij = sum_k e_ik (x) e_kj."""
    n = r * r
    coproducts = []
    for i in range(r):
        for j in range(r):
            v = [0] * (n * n)
            for k in range(r):
                v[(i * r + k) * n + (k * r + j)] = 1
            coproducts.append(v)
    counit = [1 if i == j else 0 for i in range(r) for j in range(r)]
    return coalgebra_from_table(field, coproducts, counit, f"M^c({r})")


def check_coalgebra(c: Coalgebra) -> list[str]:
    f, n = c.field, c.dim
    idn = identity(f, n)
    out = []
    if kron(c.comul, idn) @ c.comul != kron(idn, c.comul) @ c.comul:
        out.append("coassociativity")
    if kron(c.counit, idn) @ c.comul != idn:
        out.append("left counit")
    if kron(idn, c.counit) @ c.comul != idn:
        out.append("right counit")
    return out


def verify_grouplike(c: Coalgebra, x: Sequence) -> bool:
    """True iff Delta(x) = x (x) x and counit(x) = 1."""
    x = tuple(x)
    if len(x) != c.dim:
        return False
    return (c.comul.apply(x) == tensor_vec(c.field, x, x)
            and c.counit.apply(x) == (1,))


def is_coalgebra_map(src: Coalgebra, dst: Coalgebra, pi: Matrix) -> bool:
    return (kron(pi, pi) @ src.comul == dst.comul @ pi
            and dst.counit @ pi == src.counit)


@dataclass(frozen=True, eq=False)
class Cointegral:
    """A bilinear form ``delta: C (x) C -> k`` retracting the coproduct."""

    coalgebra: Coalgebra
    delta: Matrix

    def value(self, i: int, j: int):
        return self.delta[0, i * self.coalgebra.dim + j]


def _colinearity_defect(c: Coalgebra, delta: Matrix) -> Matrix:
    """sum c1 delta(c2 (x) c') - sum delta(c (x) c'1) c'2 as a map C (x) C -> C."""
    f, n = c.field, c.dim
    idn = identity(f, n)
    lhs = kron(idn, delta) @ kron(c.comul, idn)
    rhs = kron(delta, idn) @ kron(idn, c.comul)
    return lhs - rhs


def check_cointegral(c: Coalgebra, delta: Matrix) -> list[str]:
    out = []
    if delta @ c.comul != c.counit:
        out.append("delta o comul = counit")
    if not _colinearity_defect(c, delta).is_zero():
        out.append("colinearity")
    return out


def cointegral_system(c: Coalgebra):
    """Both defining conditions as affine constraints on the entries of delta."""
    f, n = c.field, c.dim
    retract = (c.comul.T, c.counit.data[0])
    idn = identity(f, n)
    defect = (Sandwich.of(None, kron(c.comul, idn), "left", n)
              - Sandwich.of(None, kron(idn, c.comul), "right", n))
    colin = matrix_operator(f, defect, (1, n * n), n * n * n)
    return [retract, (colin, (0,) * colin.rows)]


def find_cointegral(c: Coalgebra) -> Cointegral | None:
    """Echelon-minimal cointegral, or ``None`` when the linear system is infeasible."""
    sol = solve_affine(cointegral_system(c))
    if sol is None:
        return None
    return Cointegral(c, Matrix(c.field, [sol], 1, c.dim * c.dim))


@dataclass(frozen=True, eq=False)
class CoalgebraComodule:
    """A comodule over a coalgebra: ``V -> V (x) C`` (right) or ``V -> C (x) V`` (left)."""

    coalgebra: Coalgebra
    side: str
    dim: int
    coaction: Matrix
    name: str = ""


def check_coalgebra_comodule(v: CoalgebraComodule) -> list[str]:
    c = v.coalgebra
    f = c.field
    iv, ic = identity(f, v.dim), identity(f, c.dim)
    rho = v.coaction
    out = []
    if v.side == "right":
        if kron(rho, ic) @ rho != kron(iv, c.comul) @ rho:
            out.append("coassociativity")
        if kron(iv, c.counit) @ rho != iv:
            out.append("counit law")
    else:
        if kron(ic, rho) @ rho != kron(c.comul, iv) @ rho:
            out.append("coassociativity")
        if kron(c.counit, iv) @ rho != iv:
            out.append("counit law")
    return out


def regular_coalgebra_comodule(c: Coalgebra, side: str = "right") -> CoalgebraComodule:
    return CoalgebraComodule(c, side, c.dim, c.comul, "regular")


def zero_coalgebra_comodule(c: Coalgebra, side: str = "right") -> CoalgebraComodule:
    return CoalgebraComodule(c, side, 0, Matrix.zeros(c.field, 0, 0), "zero")
