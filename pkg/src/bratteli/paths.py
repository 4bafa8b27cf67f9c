"""Finite paths from the pointed vertices, their counts and enumeration.

A path starts at a pointed vertex and walks edges level by level; the
zero-length path at a pointed vertex counts too.  The number of paths
arriving at each vertex satisfies the dynamic program

    paths(n+1, i) = sum_j multiplicity(n, i, j) * paths(n, j) + [ (n+1,i) pointed ]

seeded by ``paths(1, i) = [ (1,i) pointed ]``.  On a diagram normalized
and pointed by either strategy the counts reproduce the vertex sizes,
which is what :func:`verify_path_counts` checks.

Counting uses exact big integers and is never capped; explicit
enumeration is desk-scale only and guarded by a cap.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .diagram import BratteliDiagram, PointSet, check_points, validate
from .errors import CapExceeded
from .verification import VerificationItem

DEFAULT_CAP = 100000


@dataclass(frozen=True)
class EdgeId:
    """One of the parallel edges from ``(level, source)`` to ``(level+1, target)``."""

    level: int
    source: int
    target: int
    copy: int

    def key(self):
        return (self.source, self.target, self.copy)


@dataclass(frozen=True)
class Path:
    """A composable edge sequence starting at a pointed vertex.

    ``origin`` is the (level, vertex) pair the path starts from; an empty
    edge tuple is the zero-length path sitting at its origin.
    """

    origin: tuple[int, int]
    edges: tuple[EdgeId, ...] = field(default=())

    def __post_init__(self):
        level, vertex = self.origin
        for e in self.edges:
            if e.level != level or e.source != vertex:
                raise ValueError("edge %r does not continue (%d,%d)"
                                 % (e, level, vertex))
            level, vertex = level + 1, e.target

    @property
    def range_level(self) -> int:
        return self.origin[0] + len(self.edges)

    @property
    def range_vertex(self) -> int:
        return self.edges[-1].target if self.edges else self.origin[1]

    @property
    def range(self) -> tuple[int, int]:
        return (self.range_level, self.range_vertex)

    def extended(self, edge: EdgeId) -> "Path":
        return Path(self.origin, self.edges + (edge,))

    def continuation_from(self, prefix: "Path"):
        """The edge tuple ``eps`` with ``self == prefix . eps``, else None."""
        if self.origin != prefix.origin:
            return None
        k = len(prefix.edges)
        if len(self.edges) < k or self.edges[:k] != prefix.edges:
            return None
        return self.edges[k:]

    def sort_key(self):
        # zero-length paths first, then origin level ascending, then the
        # edge sequence lexicographically by (source, target, copy)
        return (1 if self.edges else 0, self.origin,
                tuple(e.key() for e in self.edges))

    def __str__(self):
        if not self.edges:
            return "(%d,%d)" % self.origin
        hops = ".".join("%d:%d" % (e.target, e.copy) for e in self.edges)
        return "(%d,%d)->%s" % (self.origin[0], self.origin[1], hops)


def count_paths(diagram: BratteliDiagram, points: PointSet,
                up_to: int | None = None) -> tuple[tuple[int, ...], ...]:
    """Exact per-vertex path counts for levels ``1..up_to``."""
    validate(diagram).raise_if_invalid()
    check_points(diagram, points)
    top = diagram.num_levels if up_to is None else up_to
    if not 1 <= top <= diagram.num_levels:
        raise IndexError("level %d out of range 1..%d" % (top, diagram.num_levels))
    counts = [tuple(1 if (1, i) in points else 0
                    for i in range(1, diagram.num_vertices(1) + 1))]
    for n in range(1, top):
        mat = diagram.map_from(n)
        prev = counts[-1]
        counts.append(tuple(
            sum(mat[i][j] * prev[j] for j in range(len(prev)))
            + (1 if (n + 1, i + 1) in points else 0)
            for i in range(diagram.num_vertices(n + 1))))
    return tuple(counts)


def enumerate_paths(diagram: BratteliDiagram, points: PointSet,
                    level: int, vertex: int,
                    cap: int = DEFAULT_CAP) -> tuple[Path, ...]:
    """All paths into ``(level, vertex)`` in canonical order.

    The order puts the zero-length path first, then sorts by origin level
    and lexicographically by the edge sequence.  Raises
    :class:`CapExceeded` when the exact count already exceeds ``cap``.
    """
    counts = count_paths(diagram, points, up_to=level)
    if not 1 <= vertex <= diagram.num_vertices(level):
        raise IndexError("vertex (%d,%d) out of range" % (level, vertex))
    if counts[level - 1][vertex - 1] > cap:
        raise CapExceeded("%d paths into (%d,%d) exceed the cap %d"
                          % (counts[level - 1][vertex - 1], level, vertex, cap))
    cache: dict[tuple[int, int], tuple[Path, ...]] = {}

    def build(n, i):
        key = (n, i)
        if key in cache:
            return cache[key]
        found = []
        if (n, i) in points:
            found.append(Path((n, i)))
        if n > 1:
            mat = diagram.map_from(n - 1)
            for j in range(1, diagram.num_vertices(n - 1) + 1):
                k = mat[i - 1][j - 1]
                if k == 0:
                    continue
                for p in build(n - 1, j):
                    for copy in range(1, k + 1):
                        found.append(p.extended(EdgeId(n - 1, j, i, copy)))
        found.sort(key=Path.sort_key)
        cache[key] = tuple(found)
        return cache[key]

    result = build(level, vertex)
    assert len(result) == counts[level - 1][vertex - 1]
    return result


def verify_path_counts(diagram: BratteliDiagram, points: PointSet) -> VerificationItem:
    """Check that path counts equal vertex sizes at every truncated level."""
    counts = count_paths(diagram, points)
    for n in range(1, diagram.num_levels + 1):
        sizes = diagram.sizes(n)
        got = counts[n - 1]
        for i in range(len(sizes)):
            if got[i] != sizes[i]:
                return VerificationItem(
                    check="path_counts_match_sizes", ok=False,
                    details={"level": n, "vertex": i + 1,
                             "count": got[i], "size": sizes[i]})
    return VerificationItem(check="path_counts_match_sizes", ok=True,
                            details={"levels": diagram.num_levels})
