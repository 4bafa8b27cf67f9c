"""DOT output: one rank per level, multiplicities as edge labels."""

from __future__ import annotations

from .diagram import BratteliDiagram, PointSet, validate


def to_dot(diagram: BratteliDiagram, points: PointSet | None = None) -> str:
    """Render the diagram as deterministic Graphviz text.

    Vertices are labelled ``v{level}.{index} [{size}]``; pointed vertices
    are drawn double-circled; parallel edges collapse to one edge with the
    multiplicity as its label (omitted when it is 1).
    """
    validate(diagram).raise_if_invalid()
    points = points or frozenset()
    lines = ["digraph bratteli {", "  rankdir=LR;", "  node [shape=circle];"]
    for n in range(1, diagram.num_levels + 1):
        names = " ".join('"v%d.%d";' % (n, i)
                         for i in range(1, diagram.num_vertices(n) + 1))
        lines.append("  { rank=same; %s }" % names)
    for n in range(1, diagram.num_levels + 1):
        for i in range(1, diagram.num_vertices(n) + 1):
            shape = ', shape=doublecircle' if (n, i) in points else ""
            lines.append('  "v%d.%d" [label="v%d.%d [%d]"%s];'
                         % (n, i, n, i, diagram.size(n, i), shape))
    for n in range(1, diagram.num_levels):
        mat = diagram.map_from(n)
        for j in range(1, diagram.num_vertices(n) + 1):
            for i in range(1, diagram.num_vertices(n + 1) + 1):
                k = mat[i - 1][j - 1]
                if k == 0:
                    continue
                label = ' [label="%d"]' % k if k > 1 else ""
                lines.append('  "v%d.%d" -> "v%d.%d"%s;'
                             % (n, j, n + 1, i, label))
    if diagram.tail is not None:
        lines.append("  // tail: " + " ; ".join(
            " ".join(str(x) for x in row) for row in diagram.tail))
    lines.append("}")
    return "\n".join(lines) + "\n"
