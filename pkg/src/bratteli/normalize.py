"""Diagram surgery that limits slack, and the matching pointing rules.

Two strategies produce a pointed diagram whose path counts reproduce the
vertex sizes:

* ``drinen``: prepend a size-1 level if needed, then repeatedly insert a
  level that absorbs one unit of slack from every offending vertex, until
  all slack beyond level 1 is at most 1.  Point the slack-1 vertices plus
  the top vertex.
* ``kumjian``: for every vertex carrying slack, add a size-1 source vertex
  to the previous level with as many parallel edges as the slack (level-1
  slack is served by a brand-new first level).  Point exactly the added
  vertices.

Both strategies are pure functions; equal inputs give identical outputs,
including vertex order.
"""

from __future__ import annotations

from .diagram import (BratteliDiagram, PointSet, identity_matrix, slack,
                      validate)
from .errors import NoExcessSlack, NotNormalized

STRATEGIES = ("drinen", "kumjian")


def prepend_unit_level(diagram: BratteliDiagram) -> BratteliDiagram:
    """Give the diagram a single size-1 top vertex.

    If level 1 already is a single vertex of size 1 the diagram is
    returned unchanged.  Otherwise a new first level ``(1)`` is added and
    connected by the unique unital map: row ``i`` of the new matrix is the
    old level-1 size of vertex ``i``.
    """
    validate(diagram).raise_if_invalid()
    if diagram.levels[0] == (1,):
        return diagram
    new_map = tuple((s,) for s in diagram.levels[0])
    out = BratteliDiagram(((1,),) + diagram.levels,
                          (new_map,) + diagram.maps,
                          diagram.tail)
    validate(out).raise_if_invalid()
    return out


def insert_slack_level(diagram: BratteliDiagram, n: int) -> BratteliDiagram:
    """Insert a slack-absorbing level in front of level ``n``.

    The new level copies level ``n`` but shrinks every vertex whose slack
    exceeds 1 by exactly one; it receives the old incoming map unchanged
    and feeds level ``n`` through the identity (the inclusion of the
    shrunken summands).  Each offending vertex loses one unit of slack and
    the displaced vertex keeps slack 1.
    """
    if not 2 <= n <= diagram.num_levels:
        raise IndexError("cannot insert at level %d of %d"
                         % (n, diagram.num_levels))
    profile = slack(diagram)
    sigmas = profile[n - 1]
    if all(s <= 1 for s in sigmas):
        raise NoExcessSlack("every slack at level %d is already <= 1" % n)
    sizes = diagram.levels[n - 1]
    new_sizes = tuple(sizes[i] - 1 if sigmas[i] > 1 else sizes[i]
                      for i in range(len(sizes)))
    eye = identity_matrix(len(sizes))
    levels = diagram.levels[:n - 1] + (new_sizes,) + diagram.levels[n - 1:]
    maps = diagram.maps[:n - 1] + (eye,) + diagram.maps[n - 1:]
    out = BratteliDiagram(levels, maps, diagram.tail)
    validate(out).raise_if_invalid()
    return out


def normalize(diagram: BratteliDiagram, strategy: str = "drinen") -> BratteliDiagram:
    """Normalize the diagram under the chosen strategy."""
    return normalize_with_positions(diagram, strategy)[0]


def normalize_with_positions(diagram: BratteliDiagram, strategy: str = "drinen"):
    """Normalize and also report where the original levels ended up.

    Returns ``(normalized, positions)`` where ``positions[m-1]`` is the
    level of the normalized diagram holding original level ``m``.  The
    positions witness the telescoping property: composing the normalized
    maps over the stretch between two consecutive original levels
    reproduces the original connecting matrix.
    """
    if strategy not in STRATEGIES:
        raise ValueError("unknown strategy %r (expected one of %s)"
                         % (strategy, ", ".join(STRATEGIES)))
    validate(diagram).raise_if_invalid()
    if strategy == "drinen":
        return _normalize_drinen(diagram)
    return _augment_sources(diagram)


def _normalize_drinen(diagram):
    positions = list(range(1, diagram.num_levels + 1))
    out = prepend_unit_level(diagram)
    if out.num_levels != diagram.num_levels:
        positions = [p + 1 for p in positions]
    while True:
        profile = slack(out)
        offending = [n for n in range(2, out.num_levels + 1)
                     if any(s > 1 for s in profile[n - 1])]
        if not offending:
            break
        n = offending[0]
        out = insert_slack_level(out, n)
        positions = [p + 1 if p >= n else p for p in positions]
    return out, tuple(positions)


def _augment_sources(diagram):
    """Kumjian-style source augmentation.

    For every vertex ``(n, i)`` with positive slack, a size-1 vertex is
    appended to level ``n - 1`` with ``slack`` parallel edges into
    ``(n, i)``; level-1 slack is always positive, so the output always
    gains a fresh first level made of the level-0 sources.  Added vertices
    come after the pre-existing ones, one per slack-carrying target.
    """
    profile = slack(diagram)
    n_old = diagram.num_levels
    # added[m] lists (target_index, slack) for sources placed at old level m
    added = {m: [] for m in range(0, n_old)}
    for n in range(1, n_old + 1):
        for i, s in enumerate(profile[n - 1], start=1):
            if s > 0:
                added[n - 1].append((i, s))

    levels = [tuple(1 for _ in added[0])]
    for m in range(1, n_old + 1):
        extra = added.get(m, [])
        levels.append(diagram.levels[m - 1] + tuple(1 for _ in extra))

    maps = []
    for m in range(0, n_old - 1 + 1):
        # connects new level m+1 (old level m plus its sources) to new level m+2
        old_rows = diagram.num_vertices(m + 1) if m + 1 <= n_old else 0
        src_old = diagram.num_vertices(m) if m >= 1 else 0
        src_extra = added[m]
        rows = []
        for i in range(1, old_rows + 1):
            base = list(diagram.maps[m - 1][i - 1]) if m >= 1 else []
            base += [s if t == i else 0 for (t, s) in src_extra]
            rows.append(tuple(base))
        for _ in added.get(m + 1, []):
            rows.append(tuple(0 for _ in range(src_old + len(src_extra))))
        maps.append(tuple(rows))

    out = BratteliDiagram(tuple(levels), tuple(maps), diagram.tail)
    validate(out).raise_if_invalid()
    positions = tuple(m + 1 for m in range(1, n_old + 1))
    return out, positions


def compute_point_set(diagram: BratteliDiagram, strategy: str = "drinen") -> PointSet:
    """Distinguished vertices for a diagram normalized under ``strategy``.

    ``drinen``: all slack-1 vertices together with the top vertex.
    ``kumjian``: the augmentation sources, recognizable as the slack-1
    vertices (augmentation drives every other slack to zero); they must
    have no incoming edges.
    """
    if strategy not in STRATEGIES:
        raise ValueError("unknown strategy %r" % (strategy,))
    profile = slack(diagram)
    for n, sigmas in enumerate(profile, start=1):
        for i, s in enumerate(sigmas, start=1):
            if s > 1:
                raise NotNormalized("slack %d at vertex (%d,%d) exceeds 1"
                                    % (s, n, i))
    pointed = {(n, i)
               for n, sigmas in enumerate(profile, start=1)
               for i, s in enumerate(sigmas, start=1) if s == 1}
    if strategy == "drinen":
        return frozenset(pointed | {(1, 1)})
    for (n, i) in pointed:
        if diagram.in_degree(n, i) != 0:
            raise NotNormalized(
                "slack vertex (%d,%d) has incoming edges; the diagram was "
                "not produced by source augmentation" % (n, i))
    return frozenset(pointed)
