"""Sparse exact linear algebra over the Gaussian rationals.

Everything here is tolerance-free: ranks come from Gaussian elimination
with exact pivots, span comparison keeps a fully reduced echelon basis,
and orthonormalization refuses to proceed when a squared norm is not a
perfect square (the only case where QQ(i) lacks the needed square root).

Vectors are dicts mapping an index key to a nonzero scalar; matrices keep
a row-major dict-of-dicts so that products of the partial-permutation
matrices produced by path embeddings stay near-linear.
"""

from __future__ import annotations

from .errors import IntertwinerError
from .scalars import GaussianRational, exact_sqrt

ONE = GaussianRational(1)


def _coerce(value) -> GaussianRational:
    if isinstance(value, GaussianRational):
        return value
    return GaussianRational(value)


def vec_axpy(target: dict, coeff: GaussianRational, source: dict) -> None:
    """In place: target += coeff * source, dropping zeros."""
    if coeff.is_zero():
        return
    for k, v in source.items():
        s = target.get(k)
        s = coeff * v if s is None else s + coeff * v
        if s.is_zero():
            target.pop(k, None)
        else:
            target[k] = s


def vec_dot(a: dict, b: dict) -> GaussianRational:
    """Hermitian inner product, conjugating the first argument."""
    total = GaussianRational(0)
    if len(a) <= len(b):
        for k, v in a.items():
            w = b.get(k)
            if w is not None:
                total = total + v.conjugate() * w
    else:
        for k, w in b.items():
            v = a.get(k)
            if v is not None:
                total = total + v.conjugate() * w
    return total


class SpanBasis:
    """A fully reduced echelon basis of sparse vectors over orderable keys.

    Rows are kept Gauss-Jordan reduced with pivot coefficient 1, so two
    spans are equal exactly when they produce the same reduced rows.
    """

    def __init__(self, key_sort=None):
        self._key_sort = key_sort or (lambda k: k)
        self._rows: dict = {}        # pivot key -> reduced row

    def _pivot_of(self, vec):
        return min(vec, key=self._key_sort)

    def reduce(self, vec: dict) -> dict:
        """Residual of ``vec`` after elimination against the basis."""
        residual = dict(vec)
        while residual:
            pivot = self._pivot_of(residual)
            row = self._rows.get(pivot)
            if row is None:
                return residual
            vec_axpy(residual, -residual[pivot], row)
        return residual

    def insert(self, vec: dict) -> bool:
        """Add a vector; True when it enlarged the span."""
        residual = self.reduce(vec)
        if not residual:
            return False
        pivot = self._pivot_of(residual)
        coeff = residual[pivot]
        row = {k: v / coeff for k, v in residual.items()}
        for other in self._rows.values():
            c = other.get(pivot)
            if c is not None:
                vec_axpy(other, -c, row)
        self._rows[pivot] = row
        return True

    def contains(self, vec: dict) -> bool:
        return not self.reduce(vec)

    @property
    def dim(self) -> int:
        return len(self._rows)

    def rows(self):
        return [dict(self._rows[p]) for p in sorted(self._rows, key=self._key_sort)]

    def __eq__(self, other):
        if not isinstance(other, SpanBasis):
            return NotImplemented
        return self._rows == other._rows


def nullspace(rows: list[dict], num_unknowns: int) -> list[dict]:
    """Exact nullspace basis of a sparse homogeneous system.

    ``rows`` are constraint vectors over unknowns ``0..num_unknowns-1``.
    Returns one sparse solution vector per free unknown, each normalized
    with a 1 in its free coordinate, ordered by that coordinate.
    """
    basis = SpanBasis()
    for row in rows:
        if row:
            basis.insert(dict(row))
    pivots = dict(basis._rows)
    free = [j for j in range(num_unknowns) if j not in pivots]
    solutions = []
    for f in free:
        sol = {f: ONE}
        for pivot, row in pivots.items():
            c = row.get(f)
            if c is not None:
                sol[pivot] = -c
        solutions.append(sol)
    return solutions


class SparseMat:
    """A sparse matrix over the Gaussian rationals."""

    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows=None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows: dict = rows if rows is not None else {}

    @classmethod
    def zeros(cls, nrows, ncols):
        return cls(nrows, ncols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def from_entries(cls, nrows, ncols, entries):
        m = cls(nrows, ncols)
        for (i, j), v in entries.items():
            m.put(i, j, _coerce(v))
        return m

    def put(self, i, j, value):
        if not (0 <= i < self.nrows and 0 <= j < self.ncols):
            raise IndexError("entry (%d,%d) outside %dx%d" % (i, j, self.nrows, self.ncols))
        value = _coerce(value)
        row = self.rows.setdefault(i, {})
        if value.is_zero():
            row.pop(j, None)
            if not row:
                self.rows.pop(i, None)
        else:
            row[j] = value

    def entry(self, i, j) -> GaussianRational:
        return self.rows.get(i, {}).get(j, GaussianRational(0))

    def add_to(self, i, j, value):
        self.put(i, j, self.entry(i, j) + _coerce(value))

    def nnz(self) -> int:
        return sum(len(r) for r in self.rows.values())

    def is_zero(self) -> bool:
        return not self.rows

    def copy(self) -> "SparseMat":
        return SparseMat(self.nrows, self.ncols,
                         {i: dict(r) for i, r in self.rows.items()})

    def __eq__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        return (self.nrows, self.ncols) == (other.nrows, other.ncols) \
            and self.rows == other.rows

    def __add__(self, other):
        self._same_shape(other)
        out = self.copy()
        for i, row in other.rows.items():
            for j, v in row.items():
                out.add_to(i, j, v)
        return out

    def __sub__(self, other):
        self._same_shape(other)
        out = self.copy()
        for i, row in other.rows.items():
            for j, v in row.items():
                out.add_to(i, j, -v)
        return out

    def __neg__(self):
        return self.scale(GaussianRational(-1))

    def scale(self, coeff) -> "SparseMat":
        coeff = _coerce(coeff)
        out = SparseMat(self.nrows, self.ncols)
        if coeff.is_zero():
            return out
        for i, row in self.rows.items():
            out.rows[i] = {j: coeff * v for j, v in row.items()}
        return out

    def __mul__(self, other):
        if not isinstance(other, SparseMat):
            return NotImplemented
        if self.ncols != other.nrows:
            raise ValueError("cannot multiply %dx%d by %dx%d"
                             % (self.nrows, self.ncols, other.nrows, other.ncols))
        out = SparseMat(self.nrows, other.ncols)
        for i, row in self.rows.items():
            acc: dict = {}
            for k, a in row.items():
                brow = other.rows.get(k)
                if brow:
                    for j, b in brow.items():
                        c = acc.get(j)
                        c = a * b if c is None else c + a * b
                        acc[j] = c
            acc = {j: v for j, v in acc.items() if not v.is_zero()}
            if acc:
                out.rows[i] = acc
        return out

    def conj_t(self) -> "SparseMat":
        out = SparseMat(self.ncols, self.nrows)
        for i, row in self.rows.items():
            for j, v in row.items():
                out.rows.setdefault(j, {})[i] = v.conjugate()
        return out

    def column(self, j) -> dict:
        return {i: row[j] for i, row in self.rows.items() if j in row}

    def trace(self) -> GaussianRational:
        total = GaussianRational(0)
        for i in range(min(self.nrows, self.ncols)):
            total = total + self.entry(i, i)
        return total

    def rank(self) -> int:
        """Exact rank by sparse Gaussian elimination on the rows."""
        basis = SpanBasis()
        for row in self.rows.values():
            basis.insert(dict(row))
        return basis.dim

    def is_identity(self) -> bool:
        if self.nrows != self.ncols:
            return False
        return self == SparseMat.identity(self.nrows)

    def _same_shape(self, other):
        if (self.nrows, self.ncols) != (other.nrows, other.ncols):
            raise ValueError("shape mismatch %dx%d vs %dx%d"
                             % (self.nrows, self.ncols, other.nrows, other.ncols))

    def __repr__(self):
        return "SparseMat(%d, %d, nnz=%d)" % (self.nrows, self.ncols, self.nnz())


class BlockMatrix:
    """A block-diagonal matrix, one square sparse block per vertex."""

    __slots__ = ("blocks",)

    def __init__(self, blocks):
        self.blocks = tuple(blocks)

    @classmethod
    def zeros(cls, sizes):
        return cls(SparseMat.zeros(s, s) for s in sizes)

    @classmethod
    def identity(cls, sizes):
        return cls(SparseMat.identity(s) for s in sizes)

    @property
    def block_sizes(self):
        return tuple(b.nrows for b in self.blocks)

    def _check_compatible(self, other):
        if self.block_sizes != other.block_sizes:
            raise ValueError("block sizes differ: %s vs %s"
                             % (self.block_sizes, other.block_sizes))

    def __add__(self, other):
        self._check_compatible(other)
        return BlockMatrix(a + b for a, b in zip(self.blocks, other.blocks))

    def __sub__(self, other):
        self._check_compatible(other)
        return BlockMatrix(a - b for a, b in zip(self.blocks, other.blocks))

    def __mul__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        self._check_compatible(other)
        return BlockMatrix(a * b for a, b in zip(self.blocks, other.blocks))

    def scale(self, coeff):
        return BlockMatrix(b.scale(coeff) for b in self.blocks)

    def conj_t(self):
        return BlockMatrix(b.conj_t() for b in self.blocks)

    def is_zero(self):
        return all(b.is_zero() for b in self.blocks)

    def is_identity(self):
        return all(b.is_identity() for b in self.blocks)

    def __eq__(self, other):
        if not isinstance(other, BlockMatrix):
            return NotImplemented
        return self.blocks == other.blocks

    def __repr__(self):
        return "BlockMatrix(sizes=%s)" % (self.block_sizes,)


def orthonormal_column_basis(mat: SparseMat, expected_rank=None) -> list[dict]:
    """Exact orthonormal basis of the column space, by Gram-Schmidt.

    Columns are processed in index order.  Raises
    :class:`IntertwinerError` when a squared norm is not a perfect square,
    i.e. when the column space has no orthonormal basis over QQ(i).
    """
    basis: list[dict] = []
    for j in range(mat.ncols):
        vec = mat.column(j)
        for u in basis:
            c = vec_dot(u, vec)
            if not c.is_zero():
                vec_axpy(vec, -c, u)
        if not vec:
            continue
        norm2 = GaussianRational(0)
        for v in vec.values():
            norm2 = norm2 + GaussianRational(v.abs2())
        root = exact_sqrt(norm2.re)
        if root is None:
            raise IntertwinerError(
                "column space is not exactly orthonormalizable over the "
                "Gaussian rationals (squared norm %s)" % norm2.re)
        inv = GaussianRational(1) / GaussianRational(root)
        basis.append({k: inv * v for k, v in vec.items()})
        if expected_rank is not None and len(basis) == expected_rank:
            break
    if expected_rank is not None and len(basis) != expected_rank:
        raise IntertwinerError("column space rank %d, expected %d"
                               % (len(basis), expected_rank))
    return basis
