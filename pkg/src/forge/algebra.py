"""Finite-dimensional algebras, their modules and balanced tensor products."""
from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Sequence

from .kernel import (Field, Matrix, Quotient, Sandwich, Subspace, identity, kron, matrix_operator,
                     null_space, quotient_space, solve_affine, span)


def tensor_vec(field: Field, u: Sequence, v: Sequence) -> tuple:
    p = field.p
    if p:
        return tuple(a * b % p for a in u for b in v)
    return tuple(a * b for a in u for b in v)


def basis_vector(n: int, i: int) -> tuple:
    v = [0] * n
    v[i] = 1
    return tuple(v)


@dataclass(frozen=True, eq=False)
class Algebra:
    """Unital associative algebra given by ``mul: A (x) A -> A`` and a unit vector."""

    field: Field
    dim: int
    mul: Matrix
    unit: tuple
    name: str = ""

    def __post_init__(self):
        if self.mul.shape != (self.dim, self.dim * self.dim):
            raise ValueError(f"mul must be {self.dim}x{self.dim * self.dim}, got {self.mul.shape}")
        if len(self.unit) != self.dim:
            raise ValueError("unit vector has wrong length")

    def product(self, a: Sequence, b: Sequence) -> tuple:
        return self.mul.apply(tensor_vec(self.field, a, b))

    def left_mult(self, a: Sequence) -> Matrix:
        """Matrix of x -> a x."""
        return self.mul @ kron(Matrix.column(self.field, a), identity(self.field, self.dim))

    def right_mult(self, a: Sequence) -> Matrix:
        """Matrix of x -> x a."""
        return self.mul @ kron(identity(self.field, self.dim), Matrix.column(self.field, a))

    @cached_property
    def unit_column(self) -> Matrix:
        return Matrix.column(self.field, self.unit)

    def basis(self, i: int) -> tuple:
        return basis_vector(self.dim, i)

    @cached_property
    def regular(self) -> "Bimodule":
        return Bimodule(self.field, self.dim, self, self.mul, self, self.mul,
                        free_left=1, free_right=1)

    def opposite(self) -> "Algebra":
        from .kernel import swap
        return Algebra(self.field, self.dim, self.mul @ swap(self.field, self.dim, self.dim),
                       self.unit, self.name + "^op")


def field_algebra(field: Field) -> Algebra:
    return Algebra(field, 1, Matrix.identity(field, 1), (1,), "k")


def algebra_from_table(field: Field, table, unit: Sequence, name: str = "") -> Algebra:
    """Build an algebra from ``table[i][j]`` = coordinates of ``b_i b_j``."""
    n = len(unit)
    cols = [table[i][j] for i in range(n) for j in range(n)]
    return Algebra(field, n, Matrix.from_columns(field, n, [[field(x) for x in c] for c in cols]),
                   tuple(field(x) for x in unit), name)


def group_algebra(field: Field, order: int, name: str = "") -> Algebra:
    """k[Z_n] on the basis 1, g, ..., g^{n-1}."""
    table = [[basis_vector(order, (i + j) % order) for j in range(order)] for i in range(order)]
    return algebra_from_table(field, table, basis_vector(order, 0), name or f"k[Z{order}]")


def check_algebra(a: Algebra) -> list[str]:
    """Names of violated axioms, empty when ``a`` is a unital associative algebra."""
    f, n = a.field, a.dim
    out = []
    idn = identity(f, n)
    if a.mul @ kron(a.mul, idn) != a.mul @ kron(idn, a.mul):
        out.append("associativity")
    u = a.unit_column
    if a.mul @ kron(u, idn) != idn:
        out.append("left unit")
    if a.mul @ kron(idn, u) != idn:
        out.append("right unit")
    return out


def is_algebra_map(src: Algebra, dst: Algebra, alpha: Matrix) -> bool:
    if alpha.shape != (dst.dim, src.dim):
        return False
    if alpha.apply(src.unit) != tuple(dst.unit):
        return False
    return alpha @ src.mul == dst.mul @ kron(alpha, alpha)


@dataclass(frozen=True, eq=False)
class Bimodule:
    """A k-space with optional left and right algebra actions.

    ``left`` is ``A (x) X -> X`` and ``right`` is ``X (x) B -> X``.
    ``free_left = d`` records that X = A (x) V with ``dim V = d`` and the
    left action is multiplication on the first factor; ``free_right``
    likewise for X = V (x) B.  These flags only enable faster quotients.
    """

    field: Field
    dim: int
    left_algebra: Algebra | None = None
    left: Matrix | None = None
    right_algebra: Algebra | None = None
    right: Matrix | None = None
    free_left: int | None = None
    free_right: int | None = None

    def left_module(self) -> "AModule":
        return AModule(self.left_algebra, "left", self.dim, self.left, free=self.free_left)

    def right_module(self) -> "AModule":
        return AModule(self.right_algebra, "right", self.dim, self.right, free=self.free_right)

    def act_left(self, a: Sequence, x: Sequence) -> tuple:
        return self.left.apply(tensor_vec(self.field, a, x))

    def act_right(self, x: Sequence, a: Sequence) -> tuple:
        return self.right.apply(tensor_vec(self.field, x, a))

    def restrict(self, left: bool = True, right: bool = True) -> "Bimodule":
        return Bimodule(self.field, self.dim,
                        self.left_algebra if left else None, self.left if left else None,
                        self.right_algebra if right else None, self.right if right else None,
                        self.free_left if left else None, self.free_right if right else None)


def check_bimodule(m: Bimodule) -> list[str]:
    f = m.field
    out = []
    idm = identity(f, m.dim)
    if m.left is not None:
        a = m.left_algebra
        ida = identity(f, a.dim)
        if m.left @ kron(a.mul, idm) != m.left @ kron(ida, m.left):
            out.append("left action associativity")
        if m.left @ kron(a.unit_column, idm) != idm:
            out.append("left action unit")
    if m.right is not None:
        b = m.right_algebra
        idb = identity(f, b.dim)
        if m.right @ kron(idm, b.mul) != m.right @ kron(m.right, idb):
            out.append("right action associativity")
        if m.right @ kron(idm, b.unit_column) != idm:
            out.append("right action unit")
    if m.left is not None and m.right is not None:
        ida = identity(f, m.left_algebra.dim)
        idb = identity(f, m.right_algebra.dim)
        if m.right @ kron(m.left, idb) != m.left @ kron(ida, m.right):
            out.append("bimodule compatibility")
    return out


@dataclass(frozen=True, eq=False)
class AModule:
    """One-sided module: ``action`` is ``M (x) A -> M`` (right) or ``A (x) M -> M`` (left)."""

    algebra: Algebra
    side: str
    dim: int
    action: Matrix
    free: int | None = None

    def __post_init__(self):
        if self.side not in ("left", "right"):
            raise ValueError("side must be 'left' or 'right'")
        n = self.algebra.dim
        if self.action.shape != (self.dim, self.dim * n):
            raise ValueError(f"action must be {self.dim}x{self.dim * n}")

    @property
    def field(self) -> Field:
        return self.algebra.field

    def as_bimodule(self) -> Bimodule:
        if self.side == "right":
            return Bimodule(self.field, self.dim, right_algebra=self.algebra, right=self.action,
                            free_right=self.free)
        return Bimodule(self.field, self.dim, left_algebra=self.algebra, left=self.action,
                        free_left=self.free)

    def act(self, m: Sequence, a: Sequence) -> tuple:
        """m . a for right modules, a . m for left modules."""
        if self.side == "right":
            return self.action.apply(tensor_vec(self.field, m, a))
        return self.action.apply(tensor_vec(self.field, a, m))

    def operator(self, a: Sequence) -> Matrix:
        """The k-linear map of acting by ``a``."""
        f = self.field
        if self.side == "right":
            return self.action @ kron(identity(f, self.dim), Matrix.column(f, a))
        return self.action @ kron(Matrix.column(f, a), identity(f, self.dim))


def check_module(m: AModule) -> list[str]:
    b = m.as_bimodule()
    return check_bimodule(b)


def regular_module(a: Algebra, side: str = "right") -> AModule:
    return AModule(a, side, a.dim, a.mul, free=1)


def free_module(a: Algebra, rank: int, side: str = "right") -> AModule:
    """A^rank with the componentwise action."""
    f = a.field
    if side == "right":
        # (k^r (x) A) (x) A -> k^r (x) A
        act = kron(identity(f, rank), a.mul)
    else:
        # A (x) (A (x) k^r) -> A (x) k^r
        act = kron(a.mul, identity(f, rank))
    return AModule(a, side, rank * a.dim, act, free=rank)


def zero_module(a: Algebra, side: str = "right") -> AModule:
    return AModule(a, side, 0, Matrix.zeros(a.field, 0, 0))


# hom spaces ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class HomSpace:
    """A space of linear maps ``dom -> cod`` with a coordinate system."""

    field: Field
    dom: int
    cod: int
    basis: tuple
    space: Subspace

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, f: Matrix) -> tuple:
        return self.space.coordinates(f.flatten())

    def element(self, coords: Sequence) -> Matrix:
        vec = self.space.basis.apply(coords)
        return Matrix.unflatten(self.field, vec, self.cod, self.dom)

    def contains(self, f: Matrix) -> bool:
        return self.space.contains(f.flatten())


def hom_from_constraints(field: Field, dom: int, cod: int, operators: Sequence) -> HomSpace:
    """Maps ``f`` (``cod x dom``) killed by every linear ``op(f)``.

    Each entry of ``operators`` is ``(fn, out_rows, out_cols)`` with ``fn``
    linear in its matrix argument.
    """
    n = dom * cod
    blocks = []
    for fn, r, c in operators:
        blocks.append(matrix_operator(field, fn, (cod, dom), r * c))
    if blocks:
        stacked = blocks[0]
        for b in blocks[1:]:
            stacked = stacked.vstack(b)
        sub = null_space(stacked)
    else:
        sub = span(field, n, [Matrix.unit(field, cod, dom, j // dom, j % dom).flatten()
                              for j in range(n)])
    basis = tuple(Matrix.unflatten(field, v, cod, dom) for v in sub.vectors())
    return HomSpace(field, dom, cod, basis, sub)


def linearity_operator(m: AModule, n: AModule):
    """``f -> f . act_M - act_N . (f (x) id)`` (or its left-handed twin)."""
    op = Sandwich.of(right=m.action) - Sandwich.of(n.action, None, m.side, m.algebra.dim)
    return op, n.dim, m.dim * m.algebra.dim


def hom_space(m: AModule, n: AModule) -> HomSpace:
    if m.side != n.side:
        raise ValueError("modules on different sides")
    if m.algebra is not n.algebra and (m.algebra.mul != n.algebra.mul):
        raise ValueError("modules over different algebras")
    return hom_from_constraints(m.field, m.dim, n.dim, [linearity_operator(m, n)])


def module_hom(m: AModule, n: AModule) -> list[Matrix]:
    """Basis of Hom_A(M, N) in elimination order."""
    return list(hom_space(m, n).basis)


# balanced tensor products ----------------------------------------------------


@dataclass(frozen=True, eq=False)
class Tensor:
    """A balanced tensor product X_1 (x) ... (x) X_r with projection from the k-tensor."""

    factors: tuple
    kinds: tuple
    proj: Matrix
    sect: Matrix
    module: Bimodule

    @property
    def dim(self) -> int:
        return self.module.dim

    @property
    def ambient(self) -> int:
        return self.proj.cols

    def project(self, vec: Sequence) -> tuple:
        return self.proj.apply(vec)

    def lift(self, vec: Sequence) -> tuple:
        return self.sect.apply(vec)

    @property
    def quotient(self) -> Quotient:
        return Quotient(self.ambient, self.dim, self.proj, self.sect, ())


def _as_bimodule(x) -> Bimodule:
    if isinstance(x, Bimodule):
        return x
    if isinstance(x, AModule):
        return x.as_bimodule()
    if isinstance(x, Algebra):
        return x.regular
    if isinstance(x, Tensor):
        return x.module
    raise TypeError(f"not a module: {x!r}")


def _outer_left(t_proj, t_sect, first: Bimodule, rest: int, field: Field) -> Matrix | None:
    if first.left is None:
        return None
    n = first.left_algebra.dim
    return t_proj @ kron(first.left, identity(field, rest)) @ kron(identity(field, n), t_sect)


def _outer_right(t_proj, t_sect, last: Bimodule, pre: int, field: Field) -> Matrix | None:
    if last.right is None:
        return None
    n = last.right_algebra.dim
    return t_proj @ kron(identity(field, pre), last.right) @ kron(t_sect, identity(field, n))


def _junction(t: Bimodule, y: Bimodule, field: Field):
    """Projection and section of T (x)_A Y from T (x)_k Y, plus a free-left flag."""
    if t.right is None or y.left is None:
        raise ValueError("balanced tensor needs a right action on the left factor "
                         "and a left action on the right factor")
    a = t.right_algebra
    if y.free_left is not None:
        v = y.free_left
        proj = kron(t.right, identity(field, v))
        sect = kron(identity(field, t.dim), kron(a.unit_column, identity(field, v)))
        free = t.free_left * v if t.free_left is not None else None
        return proj, sect, free
    if t.free_right is not None:
        v = t.free_right
        proj = kron(identity(field, v), y.left)
        sect = kron(identity(field, v), kron(a.unit_column, identity(field, y.dim)))
        return proj, sect, None
    rel = kron(t.right, identity(field, y.dim)) - kron(identity(field, t.dim), y.left)
    q = quotient_space(t.dim * y.dim, rel)
    return q.proj, q.sect, None


def tensor(*factors, kinds: Sequence[str] | None = None) -> Tensor:
    """Iterated tensor product; ``kinds[i]`` is ``"A"`` (balanced) or ``"k"``."""
    mods = [_as_bimodule(x) for x in factors]
    if not mods:
        raise ValueError("empty tensor product")
    if kinds is None:
        kinds = ["A"] * (len(mods) - 1)
    kinds = tuple(kinds)
    field = mods[0].field
    cur = mods[0]
    proj = identity(field, cur.dim)
    sect = identity(field, cur.dim)
    full = cur.dim
    for y, kind in zip(mods[1:], kinds):
        if kind == "A":
            p, s, free = _junction(cur, y, field)
        else:
            p = identity(field, cur.dim * y.dim)
            s = p
            free = cur.free_left * y.dim if cur.free_left is not None else None
        new_proj = p @ kron(proj, identity(field, y.dim))
        new_sect = kron(sect, identity(field, y.dim)) @ s
        dim = p.rows
        left = _outer_left(p, s, cur, y.dim, field)
        right = _outer_right(p, s, y, cur.dim, field)
        free_right = None
        if kind == "k" and y.free_right is not None:
            free_right = cur.dim * y.free_right
        cur = Bimodule(field, dim, cur.left_algebra, left, y.right_algebra, right,
                       free_left=free if left is not None else None,
                       free_right=free_right if right is not None else None)
        proj, sect, full = new_proj, new_sect, full * y.dim
    return Tensor(tuple(mods), kinds, proj, sect, cur)


def tensor_over_A(m, n) -> Tensor:
    """M (x)_A N as a quotient of M (x)_k N."""
    return tensor(m, n)


def tensor_maps(src: Tensor, dst: Tensor, maps: Sequence[Matrix]) -> Matrix:
    """The map induced on balanced tensors by factorwise k-linear maps."""
    f = src.module.field
    big = Matrix.identity(f, 1)
    for m in maps:
        big = kron(big, m)
    return dst.proj @ big @ src.sect


# dual bases ------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class DualBasis:
    """Pairs ``e^i in M`` and ``xi^i in M*`` with ``sum e^i xi^i(m) = m``."""

    elements: tuple
    functionals: tuple

    @property
    def count(self) -> int:
        return len(self.elements)


@dataclass(frozen=True, eq=False)
class DualModule:
    """M* = Hom_A(M, A) for a right module M, as a left A-module."""

    source: AModule
    hom: HomSpace
    module: AModule

    @property
    def dim(self) -> int:
        return self.hom.dim

    def functional(self, i: int) -> Matrix:
        return self.hom.basis[i]

    def coordinates(self, xi: Matrix) -> tuple:
        return self.hom.coordinates(xi)


def dual_module(m: AModule) -> DualModule:
    if m.side != "right":
        raise ValueError("dual module is built for right modules")
    a = m.algebra
    hom = hom_space(m, regular_module(a, "right"))
    f = a.field
    cols = []
    # left action (a . xi)(m) = a xi(m), on A (x) M* basis pairs
    for i in range(a.dim):
        la = a.left_mult(a.basis(i))
        for xi in hom.basis:
            cols.append(hom.coordinates(la @ xi))
    action = Matrix.from_columns(f, hom.dim, cols) if cols else Matrix.zeros(f, hom.dim, 0)
    return DualModule(m, hom, AModule(a, "left", hom.dim, action))


def evaluation_operator(m: AModule, xi: Matrix, elem: Sequence) -> Matrix:
    """The endomorphism ``x -> elem . xi(x)`` of M."""
    f = m.field
    # x -> elem (x) xi(x) -> elem . xi(x)
    return m.action @ kron(Matrix.column(f, elem), xi)


def find_dual_basis(m: AModule, dual: DualModule | None = None) -> DualBasis | None:
    """Dual basis of a right module, or ``None`` when M is not f.g. projective.

    The identity of M is sought in the span of the maps ``x -> m_j xi_k(x)``.
    """
    if m.side != "right":
        raise ValueError("dual bases are computed for right modules")
    f = m.field
    dual = dual or dual_module(m)
    d = m.dim
    if d == 0:
        return DualBasis((), ())
    ops = []
    for j in range(d):
        for k in range(dual.dim):
            ops.append(evaluation_operator(m, dual.functional(k), basis_vector(d, j)).flatten())
    if not ops:
        return None
    system = Matrix.from_columns(f, d * d, ops)
    target = identity(f, d).flatten()
    sol = solve_affine([(system, target)])
    if sol is None:
        return None
    elements, functionals = [], []
    for k in range(dual.dim):
        e = [0] * d
        for j in range(d):
            c = sol[j * dual.dim + k]
            if c:
                e[j] = c
        if any(e):
            elements.append(tuple(e))
            functionals.append(dual.functional(k))
    return DualBasis(tuple(elements), tuple(functionals))


def dual_basis_identity(m: AModule, db: DualBasis) -> Matrix:
    """``sum_i e^i xi^i(-)`` as a matrix; equals the identity for a valid dual basis."""
    f = m.field
    total = Matrix.zeros(f, m.dim, m.dim)
    for e, xi in zip(db.elements, db.functionals):
        total = total + evaluation_operator(m, xi, e)
    return total


def subalgebra(a: Algebra, sub: Subspace) -> tuple[Algebra, Matrix]:
    """A subalgebra given by a subspace, in its echelon basis, with its inclusion map."""
    f = a.field
    vecs = sub.vectors()
    d = len(vecs)
    table = [[sub.coordinates(a.product(u, v)) for v in vecs] for u in vecs]
    cols = [table[i][j] for i in range(d) for j in range(d)]
    mul = Matrix.from_columns(f, d, cols) if cols else Matrix.zeros(f, 0, 0)
    incl = sub.basis
    return Algebra(f, d, mul, sub.coordinates(a.unit), a.name + "-sub"), incl


def section_of_action(m: AModule) -> Matrix | None:
    """A module section of the action ``R (x)_k M -> M`` (or ``M (x)_k R -> M``).

    The free module carries the action on its R factor.  ``None`` exactly
    when no such section exists, i.e. when M is not projective.
    """
    r = m.algebra
    f = m.field
    n, d = r.dim, m.dim
    idd = identity(f, d)
    shape = (n * d, d)
    cons = []
    for i in range(n):
        op = m.operator(r.basis(i))
        if m.side == "left":
            big = kron(r.left_mult(r.basis(i)), idd)
        else:
            big = kron(idd, r.right_mult(r.basis(i)))
        cons.append((matrix_operator(f, Sandwich.of(right=op) - Sandwich.of(big), shape,
                                     n * d * d), (0,) * (n * d * d)))
    cons.append((matrix_operator(f, Sandwich.of(m.action), shape, d * d), idd.flatten()))
    sol = solve_affine(cons, n * d * d)
    if sol is None:
        return None
    return Matrix.unflatten(f, sol, n * d, d)
