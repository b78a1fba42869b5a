"""Exact scalars, dense matrices and the linear-algebra primitives.

Everything else in the package reduces to the functions here: rank,
null spaces, affine feasibility, Kronecker products and quotient spaces.
A linear map V -> W is stored as a ``Matrix`` with ``rows = dim W`` and
``cols = dim V`` acting on column vectors.  Tensor bases are always
ordered left factor major: the basis vector ``e_i (x) f_j`` has index
``i * dim F + j``.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Iterable, Sequence

from . import _pykernel

try:
    if os.environ.get("FORGE_PURE_PYTHON"):
        raise ImportError("pure Python backend requested")
    from . import _ckernel as _backend

    BACKEND = "cython"
except ImportError:
    _backend = _pykernel
    BACKEND = "python"

_C_PRIME_LIMIT = 1 << 31


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


class Field:
    """The rationals (``p == 0``) or the prime field F_p."""

    __slots__ = ("p",)

    def __init__(self, p: int = 0):
        if p and not _is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p

    @classmethod
    def rationals(cls) -> "Field":
        return cls(0)

    @classmethod
    def prime(cls, p: int) -> "Field":
        return cls(p)

    @property
    def is_prime_field(self) -> bool:
        return self.p != 0

    @property
    def characteristic(self) -> int:
        return self.p

    def __eq__(self, other):
        return isinstance(other, Field) and other.p == self.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return f"F_{self.p}" if self.p else "Q"

    def __call__(self, x):
        """Coerce an int, Fraction or scalar string into the field."""
        if isinstance(x, str):
            return self.parse(x)
        if self.p:
            if isinstance(x, Fraction):
                return x.numerator * pow(x.denominator, self.p - 2, self.p) % self.p
            return int(x) % self.p
        if isinstance(x, Fraction):
            return x.numerator if x.denominator == 1 else x
        if isinstance(x, int):
            return x
        raise TypeError(f"cannot coerce {x!r} into {self}")

    def parse(self, s: str):
        s = s.strip()
        if "/" in s:
            num, den = s.split("/")
            return self(Fraction(int(num), int(den)))
        return self(int(s))

    def format(self, x) -> str:
        if self.p:
            return str(int(x) % self.p)
        x = Fraction(x)
        if x.denominator == 1:
            return str(x.numerator)
        return f"{x.numerator}/{x.denominator}"

    def reduce(self, x):
        return x % self.p if self.p else x

    def inv(self, x):
        if not x:
            raise ZeroDivisionError("inverse of zero")
        if self.p:
            return pow(int(x), self.p - 2, self.p)
        return 1 / Fraction(x)

    def elements(self):
        """Enumerate a prime field (used by exhaustive oracles)."""
        if not self.p:
            raise ValueError("Q is infinite")
        return range(self.p)


Q = Field(0)


class Matrix:
    """Immutable dense matrix over a ``Field``."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, data: Iterable[Iterable], rows: int | None = None,
                 cols: int | None = None):
        data = tuple(tuple(r) for r in data)
        if rows is None:
            rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if len(data) != rows or any(len(r) != cols for r in data):
            raise ValueError("ragged matrix data")
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    @classmethod
    def _trusted(cls, field: Field, data, rows: int, cols: int) -> "Matrix":
        """Skip the shape check for data produced by the kernel itself."""
        m = object.__new__(cls)
        m.field, m.rows, m.cols = field, rows, cols
        m.data = tuple(map(tuple, data))
        return m

    # construction -----------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        return cls(field, [[field(x) for x in r] for r in rows], len(rows), cols)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, [[0] * cols for _ in range(rows)], rows, cols)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        return cls(field, [[1 if i == j else 0 for j in range(n)] for i in range(n)], n, n)

    @classmethod
    def from_columns(cls, field: Field, nrows: int, columns: Sequence[Sequence]) -> "Matrix":
        return cls(field, [[col[i] for col in columns] for i in range(nrows)], nrows, len(columns))

    @classmethod
    def column(cls, field: Field, vec: Sequence) -> "Matrix":
        return cls(field, [[x] for x in vec], len(vec), 1)

    @classmethod
    def unflatten(cls, field: Field, vec: Sequence, rows: int, cols: int) -> "Matrix":
        return cls(field, [vec[i * cols:(i + 1) * cols] for i in range(rows)], rows, cols)

    @classmethod
    def unit(cls, field: Field, rows: int, cols: int, i: int, j: int) -> "Matrix":
        data = [[0] * cols for _ in range(rows)]
        data[i][j] = 1
        return cls(field, data, rows, cols)

    # access -----------------------------------------------------------------

    @property
    def shape(self):
        return (self.rows, self.cols)

    def col(self, j: int) -> tuple:
        return tuple(r[j] for r in self.data)

    def columns(self) -> list[tuple]:
        return [self.col(j) for j in range(self.cols)]

    def flatten(self) -> tuple:
        return tuple(x for r in self.data for x in r)

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.data)
        return f"Matrix<{self.field}>({self.rows}x{self.cols})[{body}]"

    def __eq__(self, other):
        return (isinstance(other, Matrix) and self.shape == other.shape
                and self.data == other.data)

    def __hash__(self):
        return hash((self.shape, self.data))

    def is_zero(self) -> bool:
        return not any(x for r in self.data for x in r)

    # arithmetic -------------------------------------------------------------

    def _same(self, other: "Matrix"):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        p = self.field.p
        if p:
            data = [[(a + b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        else:
            data = [[a + b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Matrix._trusted(self.field, data, self.rows, self.cols)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same(other)
        p = self.field.p
        if p:
            data = [[(a - b) % p for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        else:
            data = [[a - b for a, b in zip(r, s)] for r, s in zip(self.data, other.data)]
        return Matrix._trusted(self.field, data, self.rows, self.cols)

    def __neg__(self) -> "Matrix":
        red = self.field.reduce
        return Matrix(self.field, [[red(-a) for a in r] for r in self.data], self.rows, self.cols)

    def scale(self, c) -> "Matrix":
        red = self.field.reduce
        return Matrix(self.field, [[red(c * a) for a in r] for r in self.data], self.rows, self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"cannot compose {self.shape} with {other.shape}")
        n = other.cols
        left = [[(k, a) for k, a in enumerate(r) if a] for r in self.data]
        if sum(map(len, left)) > other.rows:
            # dense left factor: index the nonzeros of the right factor once
            right = [[(j, b) for j, b in enumerate(row) if b] for row in other.data]
        else:
            right = None
        p = self.field.p
        out = []
        odata = other.data
        for r in left:
            acc = [0] * n
            for k, a in r:
                if right is None:
                    for j, b in enumerate(odata[k]):
                        if b:
                            acc[j] += a * b
                else:
                    for j, b in right[k]:
                        acc[j] += a * b
            if p:
                acc = [x % p for x in acc]
            out.append(acc)
        return Matrix._trusted(self.field, out, self.rows, n)

    def apply(self, vec: Sequence) -> tuple:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        p = self.field.p
        nz = [(j, b) for j, b in enumerate(vec) if b]
        out = []
        for r in self.data:
            s = 0
            for j, b in nz:
                a = r[j]
                if a:
                    s += a * b
            out.append(s % p if p else s)
        return tuple(out)

    @property
    def T(self) -> "Matrix":
        data = list(zip(*self.data)) if self.rows else [()] * self.cols
        return Matrix(self.field, data, self.cols, self.rows)

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row mismatch in hstack")
        return Matrix(self.field, [a + b for a, b in zip(self.data, other.data)],
                      self.rows, self.cols + other.cols)

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column mismatch in vstack")
        return Matrix(self.field, self.data + other.data, self.rows + other.rows, self.cols)

    def select_columns(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [[r[j] for j in idx] for r in self.data], self.rows, len(idx))

    def select_rows(self, idx: Sequence[int]) -> "Matrix":
        return Matrix(self.field, [self.data[i] for i in idx], len(idx), self.cols)

    def to_strings(self) -> list[list[str]]:
        fmt = self.field.format
        return [[fmt(x) for x in r] for r in self.data]


LinearMap = Matrix


def vstack_all(field: Field, mats: Sequence[Matrix], cols: int) -> Matrix:
    data = []
    for m in mats:
        if m.cols != cols:
            raise ValueError("column mismatch in vstack")
        data.extend(m.data)
    return Matrix(field, data, len(data), cols)


def hstack_all(field: Field, mats: Sequence[Matrix], rows: int) -> Matrix:
    data = [() for _ in range(rows)]
    ncols = 0
    for m in mats:
        if m.rows != rows:
            raise ValueError("row mismatch in hstack")
        data = [a + b for a, b in zip(data, m.data)]
        ncols += m.cols
    return Matrix(field, data, rows, ncols)


# elimination ----------------------------------------------------------------


def rref_rows(field: Field, rows: Sequence[Sequence], ncols: int):
    """Reduced echelon form of a list of rows: ``(nonzero rows, pivot columns)``."""
    if not rows or not ncols:
        return [], []
    if field.p:
        if BACKEND == "cython" and field.p < _C_PRIME_LIMIT:
            return _backend.rref_modp(rows, ncols, field.p)
        return _pykernel.rref_modp(rows, ncols, field.p)
    return _backend.rref_q(rows, ncols)


def rref(m: Matrix):
    return rref_rows(m.field, m.data, m.cols)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of the null space, one per free column."""
    red, pivots = rref(m)
    field = m.field
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    cols = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for row, pc in zip(red, pivots):
            if row[f]:
                v[pc] = field.reduce(-row[f])
        cols.append(v)
    return Matrix.from_columns(field, m.cols, cols)


def solve_affine(constraints: Sequence[tuple[Matrix, Sequence]], unknowns: int | None = None):
    """Simultaneous solution of ``A_k x = b_k`` or ``None`` when infeasible.

    Free variables are set to zero, so the returned solution is the one
    read off the reduced echelon form (the echelon-minimal solution).
    """
    if not constraints:
        if unknowns is None:
            raise ValueError("no constraints and no unknown count")
        return tuple([0] * unknowns)
    field = constraints[0][0].field
    n = constraints[0][0].cols if unknowns is None else unknowns
    aug = []
    for a, b in constraints:
        if a.cols != n:
            raise ValueError(f"constraint has {a.cols} unknowns, expected {n}")
        if len(b) != a.rows:
            raise ValueError("target length does not match constraint rows")
        for r, t in zip(a.data, b):
            aug.append(list(r) + [t])
    red, pivots = rref_rows(field, aug, n + 1)
    if pivots and pivots[-1] == n:
        return None
    x = [0] * n
    for row, pc in zip(red, pivots):
        x[pc] = row[n]
    return tuple(x)


def infeasibility_certificate(constraints: Sequence[tuple[Matrix, Sequence]]) -> dict:
    """Ranks of the stacked system with and without the target column."""
    field = constraints[0][0].field
    n = constraints[0][0].cols
    plain, aug = [], []
    for a, b in constraints:
        for r, t in zip(a.data, b):
            plain.append(list(r))
            aug.append(list(r) + [t])
    return {"rank": len(rref_rows(field, plain, n)[1]),
            "augmented_rank": len(rref_rows(field, aug, n + 1)[1])}


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Matrix of ``a (x) b`` in the left-factor-major tensor basis."""
    p = a.field.p
    zero = (0,) * b.cols
    data = []
    for ra in a.data:
        for rb in b.data:
            row = []
            for x in ra:
                if not x:
                    row.extend(zero)
                elif x == 1:
                    row.extend(rb)
                else:
                    row.extend([(x * y % p if p else x * y) if y else 0 for y in rb])
            data.append(row)
    return Matrix._trusted(a.field, data, a.rows * b.rows, a.cols * b.cols)


def kron_all(field: Field, mats: Sequence[Matrix]) -> Matrix:
    out = Matrix.identity(field, 1)
    for m in mats:
        out = kron(out, m)
    return out


def identity(field: Field, n: int) -> Matrix:
    return Matrix.identity(field, n)


def permute_factors(field: Field, dims: Sequence[int], order: Sequence[int]) -> Matrix:
    """Map V_0 (x) ... (x) V_{r-1} -> V_{order[0]} (x) ... (x) V_{order[r-1]}."""
    dims = list(dims)
    new_dims = [dims[i] for i in order]
    total = 1
    for d in dims:
        total *= d
    data = [[0] * total for _ in range(total)]
    for src in range(total):
        idx = []
        rem = src
        for d in reversed(dims):
            idx.append(rem % d)
            rem //= d
        idx.reverse()
        dst = 0
        for k, i in enumerate(order):
            dst = dst * new_dims[k] + idx[i]
        data[dst][src] = 1
    return Matrix(field, data, total, total)


def swap(field: Field, m: int, n: int) -> Matrix:
    """The flip M (x) N -> N (x) M."""
    return permute_factors(field, [m, n], [1, 0])


def linear_operator(field: Field, fn: Callable[[int], Sequence], unknowns: int, rows: int) -> Matrix:
    """Matrix of a linear map given by its values on unit vectors."""
    cols = []
    for j in range(unknowns):
        v = tuple(fn(j))
        if len(v) != rows:
            raise ValueError("operator output length mismatch")
        cols.append(v)
    return Matrix.from_columns(field, rows, cols)


@dataclass(frozen=True)
class Sandwich:
    """A linear map ``X -> sum of +/- L T(X) R`` with ``T(X)`` one of
    ``X``, ``X (x) I_k`` or ``I_k (x) X``.

    Callable like the lambda it replaces, but ``matrix_operator`` builds
    its matrix from Kronecker products instead of probing unit matrices.
    A missing ``L`` or ``R`` means the identity.
    """

    terms: tuple

    @classmethod
    def of(cls, left=None, right=None, pad: str = "", k: int = 1) -> "Sandwich":
        return cls(((1, left, right, pad, k),))

    def __add__(self, other: "Sandwich") -> "Sandwich":
        return Sandwich(self.terms + other.terms)

    def __sub__(self, other: "Sandwich") -> "Sandwich":
        return Sandwich(self.terms + tuple((-t[0],) + t[1:] for t in other.terms))

    def __neg__(self) -> "Sandwich":
        return Sandwich(tuple((-t[0],) + t[1:] for t in self.terms))

    def __call__(self, x: Matrix) -> Matrix:
        total = None
        for sign, left, right, pad, k in self.terms:
            y = x
            if pad == "right":
                y = kron(y, Matrix.identity(x.field, k))
            elif pad == "left":
                y = kron(Matrix.identity(x.field, k), y)
            if right is not None:
                y = y @ right
            if left is not None:
                y = left @ y
            if sign < 0:
                y = -y
            total = y if total is None else total + y
        return total

    def operator(self, field: Field, shape: tuple[int, int]) -> Matrix:
        """Assemble the matrix term by term, touching only nonzero entries."""
        r, c = shape
        acc = None
        for sign, left, right, pad, k in self.terms:
            if not pad:
                k = 1
            rows, cols = r * k, c * k
            lm = left if left is not None else Matrix.identity(field, rows)
            rm = right if right is not None else Matrix.identity(field, cols)
            if lm.cols != rows or rm.rows != cols:
                raise ValueError("sandwich factor shape mismatch")
            width = rm.cols
            if acc is None:
                acc = [dict() for _ in range(lm.rows * width)]
            elif len(acc) != lm.rows * width:
                raise ValueError("sandwich terms disagree on the output size")
            # (block, j) of each row of T(X) (x) ... and of each column entry of R
            if pad == "left":
                split_row = [divmod(t, r) for t in range(rows)]
                split_col = [divmod(t, c) for t in range(cols)]
            else:
                split_row = [divmod(t, k)[::-1] for t in range(rows)]
                split_col = [divmod(t, k)[::-1] for t in range(cols)]
            rgroups = [[[] for _ in range(k)] for _ in range(width)]
            for t, row in enumerate(rm.data):
                blk, j = split_col[t]
                for v, b in enumerate(row):
                    if b:
                        rgroups[v][blk].append((j, b))
            for u, row in enumerate(lm.data):
                base = u * width
                for t, a in enumerate(row):
                    if not a:
                        continue
                    blk, i = split_row[t]
                    a = a if sign > 0 else -a
                    off = i * c
                    for v in range(width):
                        target = acc[base + v]
                        for j, b in rgroups[v][blk]:
                            key = off + j
                            target[key] = target.get(key, 0) + a * b
        red = field.reduce
        n = r * c
        data = []
        for entries in acc:
            row = [0] * n
            for key, val in entries.items():
                row[key] = red(val)
            data.append(row)
        return Matrix(field, data, len(acc), n)


def matrix_operator(field: Field, fn: Callable[[Matrix], Matrix], shape: tuple[int, int],
                    out_size: int) -> Matrix:
    """Linearise ``X -> fn(X)`` over ``shape`` matrices (row-major vectorisation)."""
    r, c = shape
    if isinstance(fn, Sandwich):
        op = fn.operator(field, shape)
        if op.rows != out_size:
            raise ValueError("operator output length mismatch")
        return op

    def on_unit(j):
        return fn(Matrix.unit(field, r, c, j // c, j % c)).flatten()

    return linear_operator(field, on_unit, r * c, out_size)


# quotients and subspaces -----------------------------------------------------


@dataclass(frozen=True)
class Quotient:
    """A quotient V/W with its projection and a canonical section.

    The quotient basis is indexed by the non-pivot coordinates of the
    reduced echelon form of W, so ``proj @ sect`` is the identity and the
    kernel of ``proj`` is exactly W.
    """

    ambient: int
    dim: int
    proj: Matrix
    sect: Matrix
    kept: tuple

    def project(self, vec: Sequence) -> tuple:
        return self.proj.apply(vec)

    def lift(self, vec: Sequence) -> tuple:
        return self.sect.apply(vec)


def quotient_space(ambient_dim: int, relations: Matrix) -> Quotient:
    field = relations.field
    if relations.rows != ambient_dim:
        raise ValueError("relations must live in the ambient space")
    red, pivots = rref_rows(field, relations.T.data, ambient_dim)
    pivset = set(pivots)
    kept = [j for j in range(ambient_dim) if j not in pivset]
    index = {j: q for q, j in enumerate(kept)}
    proj = [[0] * ambient_dim for _ in kept]
    for q, j in enumerate(kept):
        proj[q][j] = 1
    for row, pc in zip(red, pivots):
        for j in kept:
            if row[j]:
                proj[index[j]][pc] = field.reduce(-row[j])
    sect = [[0] * len(kept) for _ in range(ambient_dim)]
    for q, j in enumerate(kept):
        sect[j][q] = 1
    return Quotient(ambient_dim, len(kept), Matrix(field, proj, len(kept), ambient_dim),
                    Matrix(field, sect, ambient_dim, len(kept)), tuple(kept))


def trivial_quotient(field: Field, n: int) -> Quotient:
    return quotient_space(n, Matrix.zeros(field, n, 0))


@dataclass(frozen=True)
class Subspace:
    """A subspace given by an echelon basis; ``coords @ basis`` is the identity."""

    ambient: int
    basis: Matrix
    coords: Matrix
    pivots: tuple = ()

    @property
    def dim(self) -> int:
        return self.basis.cols

    def contains(self, vec: Sequence) -> bool:
        if len(self.pivots) == self.dim:
            c = tuple(vec[j] for j in self.pivots)
        else:
            c = self.coords.apply(vec)
        return tuple(self.basis.apply(c)) == tuple(vec)

    def coordinates(self, vec: Sequence) -> tuple:
        if not self.contains(vec):
            raise ValueError("vector is not in the subspace")
        return self.coords.apply(vec)

    def vectors(self) -> list[tuple]:
        return self.basis.columns()


def span(field: Field, ambient: int, vectors: Sequence[Sequence]) -> Subspace:
    """Echelon basis of the span of ``vectors``."""
    red, pivots = rref_rows(field, [list(v) for v in vectors], ambient) if vectors else ([], [])
    basis = Matrix.from_columns(field, ambient, red)
    coords = Matrix(field, [[1 if j == pc else 0 for j in range(ambient)] for pc in pivots],
                    len(pivots), ambient)
    return Subspace(ambient, basis, coords, tuple(pivots))


def column_space(m: Matrix) -> Subspace:
    return span(m.field, m.rows, m.columns())


def null_space(m: Matrix) -> Subspace:
    k = kernel_basis(m)
    return span(m.field, m.cols, k.columns())


def inverse(m: Matrix) -> Matrix | None:
    """Exact inverse, or ``None`` for a singular or non-square matrix."""
    if m.rows != m.cols:
        return None
    n = m.rows
    aug = [list(r) + [1 if i == j else 0 for j in range(n)] for i, r in enumerate(m.data)]
    red, pivots = rref_rows(m.field, aug, 2 * n)
    if len(pivots) < n or pivots[n - 1] != n - 1:
        return None
    return Matrix(m.field, [row[n:] for row in red[:n]], n, n)
