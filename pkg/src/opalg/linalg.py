"""Dense exact linear algebra: matrices, reduced row echelon form and
canonical subspaces.

Matrices are immutable row-major grids of field scalars. Subspaces are
always stored with their reduced row-echelon basis, so two subspaces are
equal exactly when their basis grids are equal; every set-of-subspaces
comparison in the package relies on this canonical form.

`SpanBuilder` is the mutable workhorse behind the closures: an
incrementally maintained RREF span with sparse rows. Everything public is
immutable after construction and safe to share between threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import ValidationError
from .fields import Field


@dataclass(frozen=True)
class Matrix:
    """An exact rows x cols matrix over a fixed field."""

    field: Field
    rows: int
    cols: int
    entries: tuple

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValidationError("negative matrix dimensions")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValidationError("matrix entry grid does not match its dimensions")

    @classmethod
    def from_rows(cls, field: Field, rows) -> Matrix:
        grid = tuple(tuple(field.coerce(x) for x in row) for row in rows)
        ncols = len(grid[0]) if grid else 0
        return cls(field, len(grid), ncols, grid)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> Matrix:
        z = field.zero
        return cls(field, rows, cols, tuple((z,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, field: Field, n: int) -> Matrix:
        z, o = field.zero, field.one
        return cls(field, n, n, tuple(tuple(o if i == j else z for j in range(n)) for i in range(n)))

    @classmethod
    def from_vec(cls, field: Field, rows: int, cols: int, flat) -> Matrix:
        flat = tuple(flat)
        if len(flat) != rows * cols:
            raise ValidationError("flat entry count does not match matrix dimensions")
        return cls(field, rows, cols, tuple(flat[i * cols:(i + 1) * cols] for i in range(rows)))

    def vec(self) -> tuple:
        """Row-major flattening."""
        return tuple(x for row in self.entries for x in row)

    def __matmul__(self, other: Matrix) -> Matrix:
        if self.cols != other.rows or self.field != other.field:
            raise ValidationError("matrix product shape mismatch")
        F = self.field
        add, mul, zero = F.add, F.mul, F.zero
        out = []
        for arow in self.entries:
            orow = [zero] * other.cols
            for t, c in enumerate(arow):
                if c:
                    brow = other.entries[t]
                    for j, b in enumerate(brow):
                        if b:
                            orow[j] = add(orow[j], mul(c, b))
            out.append(tuple(orow))
        return Matrix(F, self.rows, other.cols, tuple(out))

    def __add__(self, other: Matrix) -> Matrix:
        if (self.rows, self.cols) != (other.rows, other.cols) or self.field != other.field:
            raise ValidationError("matrix sum shape mismatch")
        add = self.field.add
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(add(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)))

    def __sub__(self, other: Matrix) -> Matrix:
        sub = self.field.sub
        if (self.rows, self.cols) != (other.rows, other.cols) or self.field != other.field:
            raise ValidationError("matrix difference shape mismatch")
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(sub(a, b) for a, b in zip(r1, r2))
                            for r1, r2 in zip(self.entries, other.entries)))

    def __neg__(self) -> Matrix:
        neg = self.field.neg
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(neg(a) for a in r) for r in self.entries))

    def scale(self, c) -> Matrix:
        mul = self.field.mul
        return Matrix(self.field, self.rows, self.cols,
                      tuple(tuple(mul(c, a) for a in r) for r in self.entries))

    def apply(self, vector) -> tuple:
        """Matrix-vector product."""
        if len(vector) != self.cols:
            raise ValidationError("matrix-vector shape mismatch")
        F = self.field
        add, mul, zero = F.add, F.mul, F.zero
        out = []
        for row in self.entries:
            s = zero
            for a, v in zip(row, vector):
                if a and v:
                    s = add(s, mul(a, v))
            out.append(s)
        return tuple(out)

    def transpose(self) -> Matrix:
        return Matrix(self.field, self.cols, self.rows, tuple(zip(*self.entries)) if self.rows else tuple(() for _ in range(self.cols)))

    def trace(self):
        if self.rows != self.cols:
            raise ValidationError("trace of a non-square matrix")
        F = self.field
        s = F.zero
        for i in range(self.rows):
            s = F.add(s, self.entries[i][i])
        return s

    def power(self, k: int) -> Matrix:
        if self.rows != self.cols:
            raise ValidationError("power of a non-square matrix")
        if k < 0:
            raise ValidationError("negative matrix power")
        result = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                result = result @ base
            base = base @ base if k > 1 else base
            k >>= 1
        return result

    def is_zero(self) -> bool:
        return all(not x for row in self.entries for x in row)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        one = self.field.one
        return all((x == one if i == j else not x) for i, row in enumerate(self.entries) for j, x in enumerate(row))

    def rref(self) -> tuple[Matrix, tuple[int, ...]]:
        """Reduced row-echelon form and pivot columns; the shape and the
        row space are preserved (zero rows stay in place at the bottom)."""
        F = self.field
        sub, mul, inv = F.sub, F.mul, F.inv
        m = [list(row) for row in self.entries]
        pivots = []
        r = 0
        for c in range(self.cols):
            sel = None
            for i in range(r, self.rows):
                if m[i][c]:
                    sel = i
                    break
            if sel is None:
                continue
            m[r], m[sel] = m[sel], m[r]
            p = inv(m[r][c])
            m[r] = [mul(p, x) for x in m[r]]
            for i in range(self.rows):
                if i != r and m[i][c]:
                    f = m[i][c]
                    m[i] = [sub(x, mul(f, y)) for x, y in zip(m[i], m[r])]
            pivots.append(c)
            r += 1
            if r == self.rows:
                break
        return Matrix(F, self.rows, self.cols, tuple(tuple(row) for row in m)), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def inverse(self) -> Matrix | None:
        """The inverse, or None when singular."""
        if self.rows != self.cols:
            return None
        n = self.rows
        F = self.field
        aug = Matrix(F, n, 2 * n, tuple(row + irow for row, irow in
                                        zip(self.entries, Matrix.identity(F, n).entries)))
        red, pivots = aug.rref()
        if tuple(pivots[:n]) != tuple(range(n)) or len(pivots) < n:
            return None
        return Matrix(F, n, n, tuple(row[n:] for row in red.entries))

    def kernel(self) -> "Subspace":
        """Right null space as a canonical subspace of F^cols."""
        red, pivots = self.rref()
        pivot_set = set(pivots)
        free = [c for c in range(self.cols) if c not in pivot_set]
        F = self.field
        vecs = []
        for f in free:
            v = [F.zero] * self.cols
            v[f] = F.one
            for i, p in enumerate(pivots):
                v[p] = F.neg(red.entries[i][f])
            vecs.append(v)
        return Subspace.from_vectors(F, self.cols, vecs)

    def __str__(self):
        fmt = self.field.format
        return "[" + "; ".join(", ".join(fmt(x) for x in row) for row in self.entries) + "]"


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Module-level alias for `Matrix.rref`."""
    return m.rref()


class SpanBuilder:
    """Incrementally maintained RREF span of vectors of a fixed width.

    Rows are stored sparsely as {column: value} dicts with pivot value 1,
    kept in full reduced form (each pivot column is zero in every other
    row). Insertion order never affects the resulting canonical basis.
    """

    __slots__ = ("field", "width", "rows", "pivots")

    def __init__(self, field: Field, width: int):
        self.field = field
        self.width = width
        self.rows: list[dict] = []
        self.pivots: list[int] = []

    @property
    def dim(self) -> int:
        return len(self.rows)

    def _reduce(self, v: list) -> list:
        sub, mul = self.field.sub, self.field.mul
        for p, row in zip(self.pivots, self.rows):
            c = v[p]
            if c:
                for col, val in row.items():
                    v[col] = sub(v[col], mul(c, val))
        return v

    def residual(self, vector) -> list:
        """The remainder of a vector after reduction by the span."""
        if len(vector) != self.width:
            raise ValidationError("vector width mismatch")
        return self._reduce(list(vector))

    def contains(self, vector) -> bool:
        return not any(self.residual(vector))

    def insert(self, vector) -> bool:
        """Add a vector to the span; returns True when the span grew."""
        v = self.residual(vector)
        piv = None
        for i, x in enumerate(v):
            if x:
                piv = i
                break
        if piv is None:
            return False
        F = self.field
        mul = F.mul
        c = F.inv(v[piv])
        new_row = {i: mul(c, x) for i, x in enumerate(v) if x}
        sub = F.sub
        for row in self.rows:
            f = row.get(piv)
            if f:
                for col, val in new_row.items():
                    cur = row.get(col, F.zero)
                    nv = sub(cur, mul(f, val))
                    if nv:
                        row[col] = nv
                    else:
                        row.pop(col, None)
        at = 0
        while at < len(self.pivots) and self.pivots[at] < piv:
            at += 1
        self.pivots.insert(at, piv)
        self.rows.insert(at, new_row)
        return True

    def to_subspace(self) -> "Subspace":
        z = self.field.zero
        basis = []
        for row in self.rows:
            dense = [z] * self.width
            for col, val in row.items():
                dense[col] = val
            basis.append(tuple(dense))
        return Subspace(self.field, self.width, tuple(basis), tuple(self.pivots))


@dataclass(frozen=True)
class Subspace:
    """A subspace of F^n held by its canonical RREF basis.

    Basis rows are nonzero with strictly increasing pivot columns, pivot
    entries equal to 1, and pivot columns zero in all other rows. Equality
    of subspaces is plain structural equality of the basis grids.
    """

    field: Field
    ambient_dim: int
    basis: tuple
    pivots: tuple

    def __post_init__(self):
        one = self.field.one
        if len(self.basis) != len(self.pivots):
            raise ValidationError("basis/pivot length mismatch")
        last = -1
        for row, p in zip(self.basis, self.pivots):
            if len(row) != self.ambient_dim:
                raise ValidationError("basis row width mismatch")
            if p <= last or row[p] != one or any(row[c] for c in range(p)):
                raise ValidationError("basis is not in reduced row-echelon form")
            last = p
        for i, row in enumerate(self.basis):
            for j, p in enumerate(self.pivots):
                if i != j and row[p]:
                    raise ValidationError("pivot column not cleared in other rows")

    @classmethod
    def from_vectors(cls, field: Field, ambient_dim: int, vectors) -> Subspace:
        sb = SpanBuilder(field, ambient_dim)
        for v in vectors:
            sb.insert(v)
        return sb.to_subspace()

    @classmethod
    def zero(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, (), ())

    @classmethod
    def full(cls, field: Field, ambient_dim: int) -> Subspace:
        return cls(field, ambient_dim, Matrix.identity(field, ambient_dim).entries,
                   tuple(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def is_zero(self) -> bool:
        return not self.basis

    def residual(self, vector) -> list:
        if len(vector) != self.ambient_dim:
            raise ValidationError("vector width mismatch")
        F = self.field
        sub, mul = F.sub, F.mul
        v = list(vector)
        for p, row in zip(self.pivots, self.basis):
            c = v[p]
            if c:
                v = [sub(x, mul(c, y)) for x, y in zip(v, row)]
        return v

    def contains_vector(self, vector) -> bool:
        return not any(self.residual(vector))

    def contains(self, other: Subspace) -> bool:
        if other.ambient_dim != self.ambient_dim:
            raise ValidationError("ambient dimension mismatch")
        return all(self.contains_vector(row) for row in other.basis)

    def coords_of(self, vector) -> tuple | None:
        """Coordinates in the canonical basis, or None if not a member."""
        if not self.contains_vector(vector):
            return None
        return tuple(vector[p] for p in self.pivots)

    def add(self, other: Subspace) -> Subspace:
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise ValidationError("ambient dimension mismatch")
        return Subspace.from_vectors(self.field, self.ambient_dim, self.basis + other.basis)

    def intersect(self, other: Subspace) -> Subspace:
        """Zassenhaus-style intersection via the kernel of the stacked system."""
        if other.ambient_dim != self.ambient_dim or other.field != self.field:
            raise ValidationError("ambient dimension mismatch")
        n = self.ambient_dim
        F = self.field
        z = F.zero
        stacked = [row + row for row in self.basis]
        stacked += [row + (z,) * n for row in other.basis]
        if not stacked:
            return Subspace.zero(F, n)
        m = Matrix(F, len(stacked), 2 * n, tuple(stacked))
        red, _ = m.rref()
        vecs = [row[n:] for row in red.entries if not any(row[:n]) and any(row[n:])]
        return Subspace.from_vectors(F, n, vecs)

    def complement_positions(self) -> tuple[int, ...]:
        """Ambient coordinates not used as pivots (a complement basis)."""
        pivot_set = set(self.pivots)
        return tuple(c for c in range(self.ambient_dim) if c not in pivot_set)

    def basis_matrices(self, rows: int, cols: int) -> tuple[Matrix, ...]:
        """Reinterpret the basis rows as matrices (for operator subspaces)."""
        if rows * cols != self.ambient_dim:
            raise ValidationError("matrix shape does not match ambient dimension")
        return tuple(Matrix.from_vec(self.field, rows, cols, row) for row in self.basis)

    def sort_key(self):
        return (self.dim, self.pivots, self.basis)

    def __str__(self):
        fmt = self.field.format
        return "span{" + "; ".join(", ".join(fmt(x) for x in row) for row in self.basis) + "}"


class SubspacePair(NamedTuple):
    sum: Subspace
    intersection: Subspace
    contains: bool


def subspace_ops(a: Subspace, b: Subspace) -> SubspacePair:
    """Sum, intersection, and the containment flag (does a contain b)."""
    if a.ambient_dim != b.ambient_dim or a.field != b.field:
        raise ValidationError("ambient dimension mismatch")
    inter = a.intersect(b)
    return SubspacePair(a.add(b), inter, inter == b)


def stacked_kernel(field: Field, matrices, n: int) -> Subspace:
    """Common kernel {v : M v = 0 for every M} of a family of n-column
    matrices; the full space when the family is empty."""
    rows = [row for m in matrices for row in m.entries]
    if not rows:
        return Subspace.full(field, n)
    return Matrix(field, len(rows), n, tuple(rows)).kernel()


def linear_map_matrix(field: Field, images, dim_out: int) -> Matrix:
    """The matrix whose j-th column is the given image of basis vector j."""
    cols = list(images)
    return Matrix(field, dim_out, len(cols),
                  tuple(tuple(col[i] for col in cols) for i in range(dim_out)))
