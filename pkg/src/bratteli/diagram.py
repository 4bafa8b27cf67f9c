"""Exact data model for truncated Bratteli diagrams.

A diagram is a leveled directed multigraph: level ``n`` carries vertices
``(n, 1), ..., (n, p_n)`` with positive integer sizes, and the map between
level ``n`` and ``n + 1`` is a nonnegative integer matrix whose ``(i, j)``
entry counts the parallel edges from source vertex ``j`` to target vertex
``i``.  All levels and vertex indices are 1-based throughout the package.

The *slack* of a vertex measures how much of its size is not consumed by
the edges arriving from the previous level; level-1 slack is the size
itself by convention.  Diagrams are immutable values and every operation
here is a pure function on exact integers.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Optional, Sequence

from .errors import InvalidDiagram, NoTail

IntMatrix = tuple[tuple[int, ...], ...]
PointSet = frozenset[tuple[int, int]]


def as_matrix(rows) -> IntMatrix:
    """Coerce an iterable of rows to a rectangular tuple-of-tuples of ints."""
    mat = tuple(tuple(int(x) for x in row) for row in rows)
    if mat and any(len(row) != len(mat[0]) for row in mat):
        raise ValueError("ragged matrix rows")
    return mat


def mat_mul(a: IntMatrix, b: IntMatrix) -> IntMatrix:
    if not a or not b or len(a[0]) != len(b):
        raise ValueError("matrix shapes %s and %s do not compose"
                         % (_shape(a), _shape(b)))
    cols = len(b[0])
    return tuple(
        tuple(sum(arow[k] * b[k][j] for k in range(len(b))) for j in range(cols))
        for arow in a
    )


def mat_vec(a: IntMatrix, v: Sequence[int]) -> tuple[int, ...]:
    if not a or len(a[0]) != len(v):
        raise ValueError("matrix shape %s does not apply to vector of length %d"
                         % (_shape(a), len(v)))
    return tuple(sum(row[j] * v[j] for j in range(len(v))) for row in a)


def identity_matrix(n: int) -> IntMatrix:
    return tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))


def _shape(m):
    return (len(m), len(m[0]) if m else 0)


@dataclass(frozen=True)
class ValidationIssue:
    """First violated invariant: a machine kind, a location, and prose."""

    kind: str        # dimension_mismatch | zero_column | negative_slack | empty_level
    where: str       # e.g. "level 2", "map 1", "vertex (2,1)"
    message: str

    def __str__(self):
        return "%s at %s: %s" % (self.kind, self.where, self.message)


@dataclass(frozen=True)
class ValidationResult:
    ok: bool
    issue: Optional[ValidationIssue] = None

    def raise_if_invalid(self):
        if not self.ok:
            raise InvalidDiagram(self.issue)


@dataclass(frozen=True)
class BratteliDiagram:
    """A finite truncation, optionally repeating forever via ``tail``.

    ``levels[n-1]`` holds the sizes of level ``n``; ``maps[n-1]`` connects
    level ``n`` to level ``n + 1`` (rows = targets, columns = sources).
    When ``tail`` is present the last level continues indefinitely with
    that square connecting matrix; :func:`extend` materializes any finite
    number of its repetitions.
    """

    levels: tuple[tuple[int, ...], ...]
    maps: tuple[IntMatrix, ...]
    tail: Optional[IntMatrix] = None

    @classmethod
    def from_data(cls, levels, maps=(), tail=None) -> "BratteliDiagram":
        lv = tuple(tuple(int(s) for s in sizes) for sizes in levels)
        mp = tuple(as_matrix(m) for m in maps)
        tl = as_matrix(tail) if tail is not None else None
        return cls(lv, mp, tl)

    @property
    def num_levels(self) -> int:
        return len(self.levels)

    def sizes(self, n: int) -> tuple[int, ...]:
        if not 1 <= n <= self.num_levels:
            raise IndexError("level %d out of range 1..%d" % (n, self.num_levels))
        return self.levels[n - 1]

    def num_vertices(self, n: int) -> int:
        return len(self.sizes(n))

    def size(self, n: int, i: int) -> int:
        sizes = self.sizes(n)
        if not 1 <= i <= len(sizes):
            raise IndexError("vertex (%d,%d) out of range" % (n, i))
        return sizes[i - 1]

    def map_from(self, n: int) -> IntMatrix:
        """The multiplicity matrix connecting level ``n`` to ``n + 1``."""
        if not 1 <= n <= self.num_levels - 1:
            raise IndexError("no map out of level %d" % n)
        return self.maps[n - 1]

    def multiplicity(self, n: int, target_i: int, source_j: int) -> int:
        """Number of parallel edges from ``(n, source_j)`` to ``(n+1, target_i)``."""
        return self.map_from(n)[target_i - 1][source_j - 1]

    def has_vertex(self, n: int, i: int) -> bool:
        return 1 <= n <= self.num_levels and 1 <= i <= len(self.levels[n - 1])

    def vertices(self) -> Iterator[tuple[int, int]]:
        for n, sizes in enumerate(self.levels, start=1):
            for i in range(1, len(sizes) + 1):
                yield (n, i)

    def in_degree(self, n: int, i: int) -> int:
        """Total number of edges (counting parallels) arriving at ``(n, i)``."""
        if n == 1:
            return 0
        return sum(self.map_from(n - 1)[i - 1])

    def in_degree_total(self, n: int) -> int:
        """Number of edges (counting parallels) arriving at level ``n``."""
        if n == 1:
            return 0
        return sum(sum(row) for row in self.map_from(n - 1))

    def __repr__(self):
        return "BratteliDiagram(levels=%r, maps=%r, tail=%r)" % (
            self.levels, self.maps, self.tail)


def validate(diagram: BratteliDiagram) -> ValidationResult:
    """Check every structural invariant; report the first violation.

    Checks, in order: level shape, map count, map dimensions, column
    injectivity (every source vertex must emit at least one edge, since
    connecting homomorphisms are injective), nonnegative slack, and the
    tail's consistency when declared.
    """
    def bad(kind, where, message):
        return ValidationResult(False, ValidationIssue(kind, where, message))

    if not diagram.levels:
        return bad("empty_level", "diagram", "a diagram needs at least one level")
    for n, sizes in enumerate(diagram.levels, start=1):
        if len(sizes) == 0:
            return bad("empty_level", "level %d" % n, "level has no vertices")
        for i, s in enumerate(sizes, start=1):
            if s < 1:
                return bad("empty_level", "vertex (%d,%d)" % (n, i),
                           "vertex size %d is not positive" % s)

    if len(diagram.maps) != diagram.num_levels - 1:
        return bad("dimension_mismatch", "maps",
                   "%d maps for %d levels (need levels - 1)"
                   % (len(diagram.maps), diagram.num_levels))

    for n, mat in enumerate(diagram.maps, start=1):
        rows, cols = _shape(mat)
        want_rows = len(diagram.levels[n])
        want_cols = len(diagram.levels[n - 1])
        if (rows, cols) != (want_rows, want_cols):
            return bad("dimension_mismatch", "map %d" % n,
                       "map is %dx%d but levels demand %dx%d"
                       % (rows, cols, want_rows, want_cols))
        for row in mat:
            for x in row:
                if x < 0:
                    return bad("dimension_mismatch", "map %d" % n,
                               "negative multiplicity %d" % x)
        for j in range(cols):
            if all(mat[i][j] == 0 for i in range(rows)):
                return bad("zero_column", "map %d, source vertex %d" % (n, j + 1),
                           "vertex (%d,%d) emits no edges; the connecting "
                           "homomorphism would not be injective" % (n, j + 1))

    profile = _slack_unchecked(diagram)
    for n, sigmas in enumerate(profile, start=1):
        for i, s in enumerate(sigmas, start=1):
            if s < 0:
                return bad("negative_slack", "vertex (%d,%d)" % (n, i),
                           "size %d is smaller than the %d consumed by "
                           "incoming embeddings" % (diagram.size(n, i),
                                                    diagram.size(n, i) - s))

    if diagram.tail is not None:
        p = diagram.num_vertices(diagram.num_levels)
        rows, cols = _shape(diagram.tail)
        if (rows, cols) != (p, p):
            return bad("dimension_mismatch", "tail",
                       "tail is %dx%d but the last level has %d vertices"
                       % (rows, cols, p))
        for j in range(p):
            if all(diagram.tail[i][j] == 0 for i in range(p)):
                return bad("zero_column", "tail, source vertex %d" % (j + 1),
                           "tail column %d is zero" % (j + 1))
        grown = mat_vec(diagram.tail, diagram.sizes(diagram.num_levels))
        for i, s in enumerate(grown, start=1):
            if s < 1:
                return bad("negative_slack", "tail, target vertex %d" % i,
                           "tail repetition produces a size-%d vertex" % s)

    return ValidationResult(True)


def _slack_unchecked(diagram: BratteliDiagram) -> tuple[tuple[int, ...], ...]:
    profile = [diagram.levels[0]]
    for n in range(2, diagram.num_levels + 1):
        consumed = mat_vec(diagram.maps[n - 2], diagram.levels[n - 2])
        sizes = diagram.levels[n - 1]
        profile.append(tuple(sizes[i] - consumed[i] for i in range(len(sizes))))
    return tuple(profile)


def slack(diagram: BratteliDiagram) -> tuple[tuple[int, ...], ...]:
    """Per-level slack profile.

    Level-1 slack equals the sizes themselves; for ``n > 1`` the slack of
    vertex ``(n, i)`` is its size minus the sizes of the previous level
    weighted by the edge multiplicities into ``(n, i)``.
    """
    validate(diagram).raise_if_invalid()
    return _slack_unchecked(diagram)


def telescope(diagram: BratteliDiagram, from_level: int, to_level: int) -> IntMatrix:
    """Exact product of the connecting matrices from one level to another.

    Returns the multiplicity matrix of the composite embedding
    ``from_level -> to_level``; with ``to_level == from_level + 1`` this is
    just the single connecting matrix.
    """
    if not (1 <= from_level < to_level <= diagram.num_levels):
        raise IndexError("telescope range %d..%d outside 1..%d"
                         % (from_level, to_level, diagram.num_levels))
    product = diagram.map_from(from_level)
    for n in range(from_level + 1, to_level):
        product = mat_mul(diagram.map_from(n), product)
    return product


def extend(diagram: BratteliDiagram, count: int) -> BratteliDiagram:
    """Materialize ``count`` repetitions of the periodic tail.

    Each appended level has sizes obtained by applying the tail matrix to
    the previous sizes, and is connected by the tail matrix itself.  The
    tail declaration is kept, so further extension remains possible.
    """
    if count < 0:
        raise ValueError("cannot extend by a negative count")
    if diagram.tail is None:
        raise NoTail("diagram declares no tail")
    levels = list(diagram.levels)
    maps = list(diagram.maps)
    for _ in range(count):
        grown = mat_vec(diagram.tail, levels[-1])
        maps.append(diagram.tail)
        levels.append(grown)
    out = BratteliDiagram(tuple(levels), tuple(maps), diagram.tail)
    validate(out).raise_if_invalid()
    return out


def check_points(diagram: BratteliDiagram, points: PointSet) -> None:
    """Raise if any pointed vertex does not exist in the diagram."""
    for (n, i) in points:
        if not diagram.has_vertex(n, i):
            raise InvalidDiagram(ValidationIssue(
                "dimension_mismatch", "point (%d,%d)" % (n, i),
                "pointed vertex does not exist"))
