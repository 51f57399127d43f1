"""Dense exact matrices: rref, kernels, Kronecker products, quotient splits.

Matrices are immutable, store a row-major tuple of scalars and carry their
field descriptor.  Pivoting is deterministic (first nonzero in column
order) so every derived basis is byte-stable across runs.

Vectors are plain tuples of scalars.  ``vec_matrix`` is the column-stacking
coordinate map: for an r x c matrix ``m``, ``vec(m)[i*r + j] = m[j, i]``.
On square matrices this realizes the matrix-coefficient convention used by
the diagram layer (coordinate (i, j) multiplies the unit sending basis
vector i to basis vector j), and it satisfies the standard identity
``vec(A @ T @ B) = kron(B^t, A) @ vec(T)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import ShapeError
from .fields import Field, Scalar, same_field

Vector = tuple


class Matrix:
    """An immutable dense matrix over an exact field."""

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, field: Field, rows: int, cols: int, entries: Sequence):
        if rows < 0 or cols < 0:
            raise ShapeError(f"negative matrix shape {rows}x{cols}")
        entries = tuple(field.coerce(x) for x in entries)
        if len(entries) != rows * cols:
            raise ShapeError(
                f"{rows}x{cols} matrix needs {rows * cols} entries, got {len(entries)}"
            )
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", entries)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows: Iterable[Iterable]) -> "Matrix":
        rows = [list(r) for r in rows]
        ncols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != ncols:
                raise ShapeError("ragged rows")
        return cls(field, len(rows), ncols, [x for r in rows for x in r])

    @classmethod
    def from_cols(cls, field: Field, cols: Sequence[Sequence]) -> "Matrix":
        cols = [tuple(c) for c in cols]
        nrows = len(cols[0]) if cols else 0
        for c in cols:
            if len(c) != nrows:
                raise ShapeError("ragged columns")
        entries = [cols[j][i] for i in range(nrows) for j in range(len(cols))]
        return cls(field, nrows, len(cols), entries)

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        one, zero = field.one, field.zero
        return cls(field, n, n, [one if i == j else zero for i in range(n) for j in range(n)])

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [field.zero] * (rows * cols))

    # -- access ------------------------------------------------------------

    def __getitem__(self, key) -> Scalar:
        i, j = key
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(f"({i}, {j}) out of range for {self.rows}x{self.cols}")
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> Vector:
        return self.entries[i * self.cols : (i + 1) * self.cols]

    def col(self, j: int) -> Vector:
        return tuple(self.entries[i * self.cols + j] for i in range(self.rows))

    def col_terms(self, j: int) -> list:
        """Nonzero (row, value) pairs of column j."""
        zero = self.field.zero
        return [
            (i, self.entries[i * self.cols + j])
            for i in range(self.rows)
            if self.entries[i * self.cols + j] != zero
        ]

    def row_list(self) -> list:
        return [list(self.row(i)) for i in range(self.rows)]

    # -- arithmetic --------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.entries == other.entries
        )

    def __hash__(self):
        return hash((self.field, self.rows, self.cols, self.entries))

    def __add__(self, other: "Matrix") -> "Matrix":
        f = same_field(self.field, other.field)
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ShapeError("matrix addition shape mismatch")
        add = f.add
        return Matrix(f, self.rows, self.cols,
                      [add(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __neg__(self) -> "Matrix":
        neg = self.field.neg
        return Matrix(self.field, self.rows, self.cols, [neg(a) for a in self.entries])

    def scale(self, s) -> "Matrix":
        s = self.field.coerce(s)
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols, [mul(s, a) for a in self.entries])

    def __mul__(self, other: "Matrix") -> "Matrix":
        f = same_field(self.field, other.field)
        if self.cols != other.rows:
            raise ShapeError(
                f"cannot multiply {self.rows}x{self.cols} by {other.rows}x{other.cols}"
            )
        add, mul, zero = f.add, f.mul, f.zero
        n, m, k = self.rows, other.cols, self.cols
        a, b = self.entries, other.entries
        out = []
        for i in range(n):
            arow = a[i * k : (i + 1) * k]
            for j in range(m):
                acc = zero
                for l in range(k):
                    x = arow[l]
                    if x != zero:
                        acc = add(acc, mul(x, b[l * m + j]))
                out.append(acc)
        return Matrix(f, n, m, out)

    def apply(self, v: Sequence) -> Vector:
        """Matrix-vector product as a tuple."""
        if len(v) != self.cols:
            raise ShapeError(f"vector of length {len(v)} against {self.rows}x{self.cols}")
        add, mul, zero = self.field.add, self.field.mul, self.field.zero
        out = []
        for i in range(self.rows):
            acc = zero
            base = i * self.cols
            for j, x in enumerate(v):
                if x != zero:
                    acc = add(acc, mul(self.entries[base + j], x))
            out.append(acc)
        return tuple(out)

    def transpose(self) -> "Matrix":
        return Matrix(
            self.field,
            self.cols,
            self.rows,
            [self.entries[j * self.cols + i] for i in range(self.cols) for j in range(self.rows)],
        )

    def is_zero(self) -> bool:
        zero = self.field.zero
        return all(x == zero for x in self.entries)

    def __repr__(self):
        body = "; ".join(
            " ".join(self.field.render(x) for x in self.row(i)) for i in range(self.rows)
        )
        return f"Matrix({self.rows}x{self.cols} [{body}])"


# -- elimination -----------------------------------------------------------


def rref(m: Matrix):
    """Reduced row echelon form.

    Returns ``(reduced, pivot_columns, rank)``.  The result is the unique
    rref of ``m``; pivots are chosen as the first nonzero entry scanning
    columns left to right.
    """
    f = m.field
    zero = f.zero
    rows = [list(m.row(i)) for i in range(m.rows)]
    pivots = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, m.rows):
            if rows[i][c] != zero:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv_p = f.inv(rows[r][c])
        rows[r] = [f.mul(inv_p, x) for x in rows[r]]
        for i in range(m.rows):
            if i != r and rows[i][c] != zero:
                factor = rows[i][c]
                rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == m.rows:
            break
    reduced = Matrix(f, m.rows, m.cols, [x for row in rows for x in row])
    return reduced, tuple(pivots), len(pivots)


def rank(m: Matrix) -> int:
    return rref(m)[2]


def kernel_basis(m: Matrix) -> list:
    """Exact basis of the right null space; size = cols - rank."""
    f = m.field
    reduced, pivots, rk = rref(m)
    pivot_set = set(pivots)
    free = [c for c in range(m.cols) if c not in pivot_set]
    basis = []
    for fc in free:
        v = [f.zero] * m.cols
        v[fc] = f.one
        for r, pc in enumerate(pivots):
            v[pc] = f.neg(reduced[r, fc])
        basis.append(tuple(v))
    return basis


def solve(m: Matrix, b: Sequence):
    """One exact solution of ``m @ x = b`` (free variables set to zero).

    Returns the solution tuple, or None if the system is inconsistent.
    """
    if len(b) != m.rows:
        raise ShapeError("right-hand side length mismatch")
    f = m.field
    aug = Matrix(
        f,
        m.rows,
        m.cols + 1,
        [x for i in range(m.rows) for x in (*m.row(i), b[i])],
    )
    reduced, pivots, _ = rref(aug)
    if m.cols in pivots:
        return None
    x = [f.zero] * m.cols
    for r, pc in enumerate(pivots):
        x[pc] = reduced[r, m.cols]
    return tuple(x)


def left_inverse(m: Matrix):
    """A matrix L with ``L @ m = I`` for full-column-rank m, else None."""
    f = m.field
    n = m.cols
    aug = Matrix(
        f,
        m.rows,
        n + m.rows,
        [
            x
            for i in range(m.rows)
            for x in (*m.row(i), *(f.one if j == i else f.zero for j in range(m.rows)))
        ],
    )
    reduced, pivots, _ = rref(aug)
    if pivots[:n] != tuple(range(n)):
        return None
    return Matrix(f, n, m.rows, [x for i in range(n) for x in reduced.row(i)[n:]])


def inverse(m: Matrix) -> Matrix:
    """Exact inverse of a square matrix; raises ShapeError when singular."""
    if m.rows != m.cols:
        raise ShapeError("only square matrices can be inverted")
    f = m.field
    n = m.rows
    ident = Matrix.identity(f, n)
    aug = Matrix(
        f, n, 2 * n, [x for i in range(n) for x in (*m.row(i), *ident.row(i))]
    )
    reduced, pivots, rk = rref(aug)
    if rk < n or any(p >= n for p in pivots):
        raise ShapeError("matrix is singular")
    return Matrix(f, n, n, [x for i in range(n) for x in reduced.row(i)[n:]])


# -- tensor structure ------------------------------------------------------


def kron(a: Matrix, b: Matrix) -> Matrix:
    """Kronecker product, block-row-major:

    entry ((i*rows_b + k), (j*cols_b + l)) = a[i, j] * b[k, l].
    """
    f = same_field(a.field, b.field)
    mul, zero = f.mul, f.zero
    rows, cols = a.rows * b.rows, a.cols * b.cols
    out = [zero] * (rows * cols)
    for i in range(a.rows):
        for j in range(a.cols):
            x = a[i, j]
            if x == zero:
                continue
            for k in range(b.rows):
                base = (i * b.rows + k) * cols + j * b.cols
                brow = k * b.cols
                for l in range(b.cols):
                    out[base + l] = mul(x, b.entries[brow + l])
    return Matrix(f, rows, cols, out)


def kron_vec(u: Sequence, v: Sequence, field: Field) -> Vector:
    """Tensor coordinates of two vectors: (u (x) v)[r*len(v) + s] = u[r]*v[s]."""
    mul, zero = field.mul, field.zero
    n = len(v)
    out = [zero] * (len(u) * n)
    for r, x in enumerate(u):
        if x == zero:
            continue
        base = r * n
        for s, y in enumerate(v):
            if y != zero:
                out[base + s] = mul(x, y)
    return tuple(out)


def vec_matrix(m: Matrix) -> Vector:
    """Column-stacking coordinates: vec(m)[i*rows + j] = m[j, i]."""
    return tuple(m[j, i] for i in range(m.cols) for j in range(m.rows))


def unvec_matrix(field: Field, v: Sequence, rows: int, cols: int) -> Matrix:
    """Inverse of :func:`vec_matrix`."""
    if len(v) != rows * cols:
        raise ShapeError(f"vector of length {len(v)} is not {rows}x{cols}")
    return Matrix(field, rows, cols, [v[i * rows + j] for j in range(rows) for i in range(cols)])


# -- quotient spaces -------------------------------------------------------


@dataclass(frozen=True)
class QuotientSplit:
    """A projection/section pair splitting an ambient space by a subspace.

    The quotient basis is indexed by the non-pivot coordinates of the rref
    of the subspace; the section maps quotient basis vector a to the
    ambient coordinate vector of its non-pivot column.
    """

    ambient_dim: int
    subspace_basis: tuple
    projection: Matrix
    section: Matrix

    @property
    def quotient_dim(self) -> int:
        return self.projection.rows


def quotient_split(field: Field, ambient_dim: int, subspace_basis: Iterable) -> QuotientSplit:
    """Split ``k^ambient_dim`` by the span of the given vectors."""
    vecs = [tuple(field.coerce(x) for x in v) for v in subspace_basis]
    for v in vecs:
        if len(v) != ambient_dim:
            raise ShapeError(f"subspace vector of length {len(v)} in dim {ambient_dim}")
    sub = Matrix(field, len(vecs), ambient_dim, [x for v in vecs for x in v])
    reduced, pivots, rk = rref(sub)
    pivot_set = set(pivots)
    free = [c for c in range(ambient_dim) if c not in pivot_set]
    q = len(free)
    zero, one, neg = field.zero, field.one, field.neg
    proj = [zero] * (q * ambient_dim)
    for a, fc in enumerate(free):
        proj[a * ambient_dim + fc] = one
        for r, pc in enumerate(pivots):
            proj[a * ambient_dim + pc] = neg(reduced[r, fc])
    sect = [zero] * (ambient_dim * q)
    for a, fc in enumerate(free):
        sect[fc * q + a] = one
    return QuotientSplit(
        ambient_dim=ambient_dim,
        subspace_basis=tuple(vecs),
        projection=Matrix(field, q, ambient_dim, proj),
        section=Matrix(field, ambient_dim, q, sect),
    )


# -- span bookkeeping ------------------------------------------------------


class VectorSpan:
    """A growing span of vectors kept in reduced echelon form."""

    def __init__(self, field: Field, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self._rows = []  # echelon rows
        self._pivots = []  # pivot column of each row

    @property
    def dim(self) -> int:
        return len(self._rows)

    def basis(self) -> list:
        return [tuple(r) for r in self._rows]

    def _reduce(self, v: Sequence) -> list:
        f = self.field
        zero = f.zero
        v = list(v)
        for row, p in zip(self._rows, self._pivots):
            if v[p] != zero:
                factor = v[p]
                v = [f.sub(x, f.mul(factor, y)) for x, y in zip(v, row)]
        return v

    def contains(self, v: Sequence) -> bool:
        zero = self.field.zero
        return all(x == zero for x in self._reduce(v))

    def add(self, v: Sequence) -> bool:
        """Insert a vector; returns True when it enlarged the span."""
        if len(v) != self.ambient_dim:
            raise ShapeError("vector has the wrong ambient dimension")
        f = self.field
        zero = f.zero
        v = self._reduce(v)
        pivot = next((i for i, x in enumerate(v) if x != zero), None)
        if pivot is None:
            return False
        inv_p = f.inv(v[pivot])
        v = [f.mul(inv_p, x) for x in v]
        for i, (row, p) in enumerate(zip(self._rows, self._pivots)):
            if row[pivot] != zero:
                factor = row[pivot]
                self._rows[i] = [f.sub(x, f.mul(factor, y)) for x, y in zip(row, v)]
        at = next((i for i, p in enumerate(self._pivots) if p > pivot), len(self._pivots))
        self._rows.insert(at, v)
        self._pivots.insert(at, pivot)
        return True
