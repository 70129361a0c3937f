"""Exact linear and bilinear algebra on a fixed ordered basis.

Vectors are tuples of scalars. ``LinearOperator`` stores a square matrix
whose column ``j`` is the image of ``e_j``. ``BilinearProduct`` stores
structure constants ``c[i][j][k]`` with ``mu(e_i, e_j) = sum_k c[i][j][k] e_k``.
Both are immutable.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from itertools import product as _iproduct
from operator import add, neg, sub
from typing import Iterable, Iterator, Sequence

from .errors import DimensionMismatch, FieldMismatch, NotBijectiveError
from .scalars import Field, Scalar, field_of

Vector = tuple


# -- vectors -----------------------------------------------------------------

def basis_vector(field: Field, dim: int, i: int) -> Vector:
    zero, one = field.zero, field.one
    return tuple(one if k == i else zero for k in range(dim))


def zero_vector(field: Field, dim: int) -> Vector:
    return (field.zero,) * dim


def vec_add(x: Vector, y: Vector) -> Vector:
    if len(x) != len(y):
        raise DimensionMismatch(f"{len(x)} vs {len(y)}")
    return tuple(map(add, x, y))


def vec_sub(x: Vector, y: Vector) -> Vector:
    if len(x) != len(y):
        raise DimensionMismatch(f"{len(x)} vs {len(y)}")
    return tuple(map(sub, x, y))


def vec_scale(c: Scalar, x: Vector) -> Vector:
    return tuple(c * a for a in x)


def vec_neg(x: Vector) -> Vector:
    return tuple(map(neg, x))


def vec_sum(vectors: Iterable[Vector]) -> Vector:
    it = iter(vectors)
    acc = next(it)
    for v in it:
        acc = vec_add(acc, v)
    return acc


def is_zero_vector(x: Vector) -> bool:
    return not any(x)


# -- operators ---------------------------------------------------------------

def _check_square(rows) -> int:
    n = len(rows)
    if n == 0:
        raise DimensionMismatch("empty matrix")
    for r in rows:
        if len(r) != n:
            raise DimensionMismatch("matrix is not square")
    return n


@dataclass(frozen=True)
class LinearOperator:
    field: Field
    rows: tuple
    # nonzero (j, a) pairs per row, and whether this is the identity; derived caches
    _sparse: tuple = dc_field(init=False, repr=False, compare=False)
    _ident: bool = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        rows = tuple(tuple(self.field(x) for x in r) for r in self.rows)
        n = _check_square(rows)
        object.__setattr__(self, "rows", rows)
        sparse = tuple(tuple((j, a) for j, a in enumerate(r) if a) for r in rows)
        object.__setattr__(self, "_sparse", sparse)
        object.__setattr__(self, "_ident", all(
            len(sparse[i]) == 1 and sparse[i][0][0] == i and sparse[i][0][1] == 1 for i in range(n)))

    @classmethod
    def identity(cls, dim: int, field: Field) -> "LinearOperator":
        return cls(field, tuple(tuple(int(i == j) for j in range(dim)) for i in range(dim)))

    @classmethod
    def zero(cls, dim: int, field: Field) -> "LinearOperator":
        return cls(field, ((0,) * dim,) * dim)

    @classmethod
    def diag(cls, values: Sequence, field: Field) -> "LinearOperator":
        n = len(values)
        return cls(field, tuple(tuple(values[i] if i == j else 0 for j in range(n)) for i in range(n)))

    @classmethod
    def from_columns(cls, columns: Sequence[Sequence], field: Field) -> "LinearOperator":
        n = len(columns)
        return cls(field, tuple(tuple(columns[j][i] for j in range(n)) for i in range(n)))

    @property
    def dim(self) -> int:
        return len(self.rows)

    def column(self, j: int) -> Vector:
        return tuple(r[j] for r in self.rows)

    def __call__(self, v: Vector) -> Vector:
        if len(v) != self.dim:
            raise DimensionMismatch(f"operator dim {self.dim} applied to vector of length {len(v)}")
        if self._ident:
            return tuple(v)
        zero = self.field.zero
        out = []
        for r in self._sparse:
            acc = zero
            for j, a in r:
                b = v[j]
                if b:
                    acc = acc + a * b
            out.append(acc)
        return tuple(out)

    def __matmul__(self, other: "LinearOperator") -> "LinearOperator":
        return op_compose(self, other)

    def __add__(self, other: "LinearOperator") -> "LinearOperator":
        _check_compatible(self, other)
        return LinearOperator(self.field, tuple(
            tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def __sub__(self, other: "LinearOperator") -> "LinearOperator":
        _check_compatible(self, other)
        return LinearOperator(self.field, tuple(
            tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows)))

    def scale(self, c) -> "LinearOperator":
        c = self.field(c)
        return LinearOperator(self.field, tuple(tuple(c * a for a in r) for r in self.rows))

    def inverse(self) -> "LinearOperator":
        return op_inverse(self)

    def is_identity(self) -> bool:
        return self._ident

    def is_invertible(self) -> bool:
        try:
            op_inverse(self)
        except NotBijectiveError:
            return False
        return True

    def commutes_with(self, other: "LinearOperator") -> bool:
        return op_compose(self, other) == op_compose(other, self)

    def power(self, n: int) -> "LinearOperator":
        if n < 0:
            return op_inverse(self).power(-n)
        out = LinearOperator.identity(self.dim, self.field)
        for _ in range(n):
            out = op_compose(self, out)
        return out


def _check_compatible(f, g) -> None:
    if f.field != g.field:
        raise FieldMismatch(f"{f.field} vs {g.field}")
    if f.dim != g.dim:
        raise DimensionMismatch(f"{f.dim} vs {g.dim}")


def op_compose(f: LinearOperator, g: LinearOperator) -> LinearOperator:
    """Matrix of ``f o g`` (``g`` is applied first)."""
    _check_compatible(f, g)
    if f._ident:
        return g
    if g._ident:
        return f
    n = f.dim
    zero = f.field.zero
    rows = []
    for i in range(n):
        fr = f.rows[i]
        row = []
        for j in range(n):
            acc = zero
            for k in range(n):
                a = fr[k]
                if a:
                    b = g.rows[k][j]
                    if b:
                        acc = acc + a * b
            row.append(acc)
        rows.append(tuple(row))
    return LinearOperator(f.field, tuple(rows))


def op_inverse(f: LinearOperator) -> LinearOperator:
    """Exact Gauss-Jordan inverse.

    Pivot: first nonzero entry at or below the diagonal (lowest row index).
    Raises ``NotBijectiveError`` on a singular matrix.
    """
    n = f.dim
    one, zero = f.field.one, f.field.zero
    a = [list(r) for r in f.rows]
    b = [[one if i == j else zero for j in range(n)] for i in range(n)]
    for col in range(n):
        pivot = next((r for r in range(col, n) if a[r][col]), None)
        if pivot is None:
            raise NotBijectiveError("operator is not bijective (singular matrix)")
        if pivot != col:
            a[col], a[pivot] = a[pivot], a[col]
            b[col], b[pivot] = b[pivot], b[col]
        inv = one / a[col][col]
        a[col] = [x * inv for x in a[col]]
        b[col] = [x * inv for x in b[col]]
        for r in range(n):
            if r != col and a[r][col]:
                factor = a[r][col]
                a[r] = [x - factor * y for x, y in zip(a[r], a[col])]
                b[r] = [x - factor * y for x, y in zip(b[r], b[col])]
    return LinearOperator(f.field, tuple(tuple(r) for r in b))


# -- bilinear products -------------------------------------------------------

@dataclass(frozen=True)
class BilinearProduct:
    field: Field
    coeffs: tuple
    # nonzero (k, c) pairs for each (i, j); derived cache
    _sparse: tuple = dc_field(init=False, repr=False, compare=False)

    def __post_init__(self):
        n = len(self.coeffs)
        if n == 0:
            raise DimensionMismatch("empty structure-constant tensor")
        c = []
        for i in range(n):
            if len(self.coeffs[i]) != n:
                raise DimensionMismatch("structure-constant tensor is not n x n x n")
            row = []
            for j in range(n):
                if len(self.coeffs[i][j]) != n:
                    raise DimensionMismatch("structure-constant tensor is not n x n x n")
                row.append(tuple(self.field(x) for x in self.coeffs[i][j]))
            c.append(tuple(row))
        object.__setattr__(self, "coeffs", tuple(c))
        object.__setattr__(self, "_sparse", tuple(
            tuple(tuple((k, v) for k, v in enumerate(cij) if v) for cij in ci) for ci in c))

    @classmethod
    def zero(cls, dim: int, field: Field) -> "BilinearProduct":
        return cls(field, tuple(tuple((0,) * dim for _ in range(dim)) for _ in range(dim)))

    @classmethod
    def from_table(cls, dim: int, field: Field, table) -> "BilinearProduct":
        """Build from ``{(i, j): {k: c}}`` or an iterable of ``(i, j, k, c)``."""
        c = [[[0] * dim for _ in range(dim)] for _ in range(dim)]
        if isinstance(table, dict):
            items = ((i, j, k, v) for (i, j), out in table.items() for k, v in out.items())
        else:
            items = table
        for i, j, k, v in items:
            c[i][j][k] = c[i][j][k] + field(v)
        return cls(field, tuple(tuple(tuple(z) for z in y) for y in c))

    @property
    def dim(self) -> int:
        return len(self.coeffs)

    def __call__(self, x: Vector, y: Vector) -> Vector:
        return apply_product(self, x, y)

    def on_basis(self, i: int, j: int) -> Vector:
        return self.coeffs[i][j]

    def entries(self) -> Iterator[tuple]:
        """Nonzero ``(i, j, k, c)`` quadruples in lexicographic order."""
        n = self.dim
        for i, j, k in _iproduct(range(n), repeat=3):
            v = self.coeffs[i][j][k]
            if v:
                yield i, j, k, v

    def transpose(self) -> "BilinearProduct":
        """The opposite product ``(x, y) -> mu(y, x)``."""
        n = self.dim
        return BilinearProduct(self.field, tuple(
            tuple(self.coeffs[j][i] for j in range(n)) for i in range(n)))

    def __add__(self, other: "BilinearProduct") -> "BilinearProduct":
        _check_compatible(self, other)
        return BilinearProduct(self.field, tuple(
            tuple(vec_add(a, b) for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)))

    def __sub__(self, other: "BilinearProduct") -> "BilinearProduct":
        _check_compatible(self, other)
        return BilinearProduct(self.field, tuple(
            tuple(vec_sub(a, b) for a, b in zip(r, s)) for r, s in zip(self.coeffs, other.coeffs)))

    def scale(self, c) -> "BilinearProduct":
        c = self.field(c)
        return BilinearProduct(self.field, tuple(
            tuple(vec_scale(c, a) for a in r) for r in self.coeffs))

    def with_entry(self, i: int, j: int, k: int, value) -> "BilinearProduct":
        c = [[list(z) for z in y] for y in self.coeffs]
        c[i][j][k] = self.field(value)
        return BilinearProduct(self.field, tuple(tuple(tuple(z) for z in y) for y in c))

    def is_zero(self) -> bool:
        return next(self.entries(), None) is None


def apply_product(m: BilinearProduct, x: Vector, y: Vector) -> Vector:
    """``sum_{i,j} x_i y_j c[i][j][:]``, exactly."""
    n = m.dim
    if len(x) != n or len(y) != n:
        raise DimensionMismatch(f"product dim {n} applied to vectors of length {len(x)}, {len(y)}")
    if not all(map(m.field.contains, x + y)):
        bad = next(s for s in x + y if not m.field.contains(s))
        raise FieldMismatch(f"vector entry {bad!r} is not in {m.field}")
    acc = [m.field.zero] * n
    sparse = m._sparse
    for i in range(n):
        xi = x[i]
        if not xi:
            continue
        ci = sparse[i]
        for j in range(n):
            yj = y[j]
            if not yj:
                continue
            cij = ci[j]
            if not cij:
                continue
            w = xi * yj
            for k, c in cij:
                acc[k] = acc[k] + w * c
    return tuple(acc)


def conjugate_product_by_maps(m: BilinearProduct, f: LinearOperator, g: LinearOperator) -> BilinearProduct:
    """The product ``(x, y) -> m(f(x), g(y))``."""
    _check_compatible(m, f)
    _check_compatible(m, g)
    n = m.dim
    return BilinearProduct(m.field, tuple(
        tuple(apply_product(m, f.column(i), g.column(j)) for j in range(n)) for i in range(n)))


def push_forward(f: LinearOperator, m: BilinearProduct) -> BilinearProduct:
    """The product ``(x, y) -> f(m(x, y))``."""
    _check_compatible(m, f)
    return BilinearProduct(m.field, tuple(tuple(f(v) for v in r) for r in m.coeffs))


__all__ = [
    "Vector", "LinearOperator", "BilinearProduct",
    "basis_vector", "zero_vector", "vec_add", "vec_sub", "vec_scale", "vec_neg", "vec_sum",
    "is_zero_vector", "op_compose", "op_inverse", "apply_product",
    "conjugate_product_by_maps", "push_forward", "field_of",
]
