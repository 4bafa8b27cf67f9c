"""The bd1 text format: a line-oriented description of a pointed diagram.

Grammar (``#`` starts a comment, blank lines are ignored)::

    bd1
    sizes: 3 5
    k: 1 1 ; 0 2
    sizes: 11 10
    k: 1 1 ; 1 1
    sizes: 21 21
    tail: 1 0 ; 0 1      # optional, square
    point: 1:1 3:1       # optional, 1-based level:vertex pairs

``sizes:`` and ``k:`` lines alternate; a ``k:`` matrix is written row by
row with ``;`` separators, rows indexing the vertices of the *next*
``sizes:`` line and columns those of the previous one.  Exactly one fewer
``k:`` line than ``sizes:`` lines must appear.  Parsing and serializing
round-trip the model exactly; serializing normalizes whitespace and drops
comments.
"""

from __future__ import annotations

from .diagram import BratteliDiagram, PointSet, validate
from .errors import Bd1SemanticError, Bd1SyntaxError

HEADER = "bd1"


def _meaningful_lines(text):
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if line:
            yield lineno, line


def _parse_ints(lineno, what, tokens, minimum):
    values = []
    for tok in tokens:
        try:
            v = int(tok)
        except ValueError:
            raise Bd1SyntaxError(lineno, "expected an integer in %s, got %r"
                                 % (what, tok))
        if v < minimum:
            raise Bd1SyntaxError(lineno, "%s entries must be >= %d, got %d"
                                 % (what, minimum, v))
        values.append(v)
    if not values:
        raise Bd1SyntaxError(lineno, "empty %s" % what)
    return tuple(values)


def _parse_matrix(lineno, what, body, minimum=0):
    rows = []
    for chunk in body.split(";"):
        rows.append(_parse_ints(lineno, what + " row", chunk.split(), minimum))
    width = len(rows[0])
    for row in rows:
        if len(row) != width:
            raise Bd1SyntaxError(lineno, "ragged %s: rows of length %d and %d"
                                 % (what, width, len(row)))
    return tuple(rows)


def parse(text: str):
    """Parse bd1 text into ``(diagram, points_or_None)``.

    Structural problems raise :class:`Bd1SyntaxError` with the offending
    line; a well-formed file describing an invalid diagram raises
    :class:`Bd1SemanticError` carrying the validation verdict.
    """
    entries = []   # (lineno, kind, payload)
    lines = list(_meaningful_lines(text))
    if not lines:
        raise Bd1SyntaxError(1, "empty document, expected '%s' header" % HEADER)
    lineno, first = lines[0]
    if first != HEADER:
        raise Bd1SyntaxError(lineno, "expected '%s' header, got %r"
                             % (HEADER, first))
    for lineno, line in lines[1:]:
        if ":" not in line:
            raise Bd1SyntaxError(lineno, "expected 'keyword: ...', got %r" % line)
        keyword, _, body = line.partition(":")
        keyword = keyword.strip()
        body = body.strip()
        if keyword == "sizes":
            entries.append((lineno, "sizes",
                            _parse_ints(lineno, "sizes", body.split(), 1)))
        elif keyword == "k":
            entries.append((lineno, "k", _parse_matrix(lineno, "k matrix", body)))
        elif keyword == "tail":
            entries.append((lineno, "tail",
                            _parse_matrix(lineno, "tail matrix", body)))
        elif keyword == "point":
            pairs = []
            for tok in body.split():
                bits = tok.split(":")
                if len(bits) != 2:
                    raise Bd1SyntaxError(lineno, "expected level:vertex, got %r"
                                         % tok)
                n = _parse_ints(lineno, "point level", bits[:1], 1)[0]
                i = _parse_ints(lineno, "point vertex", bits[1:], 1)[0]
                pairs.append((n, i))
            entries.append((lineno, "point", tuple(pairs)))
        else:
            raise Bd1SyntaxError(lineno, "unknown keyword %r (expected sizes, "
                                 "k, tail or point)" % keyword)

    levels = []      # (lineno, sizes)
    maps = []        # (lineno, matrix)
    tail = None
    points = None
    idx = 0
    if idx >= len(entries) or entries[idx][1] != "sizes":
        where = entries[idx][0] if idx < len(entries) else lines[-1][0]
        raise Bd1SyntaxError(where, "expected a 'sizes:' line first")
    levels.append((entries[idx][0], entries[idx][2]))
    idx += 1
    while idx < len(entries) and entries[idx][1] == "k":
        k_line, _, k_mat = entries[idx]
        idx += 1
        if idx >= len(entries) or entries[idx][1] != "sizes":
            raise Bd1SyntaxError(k_line, "'k:' line must be followed by a "
                                 "'sizes:' line")
        s_line, _, sizes = entries[idx]
        idx += 1
        if len(k_mat) != len(sizes):
            raise Bd1SyntaxError(k_line, "k: has %d rows but sizes: at line %d "
                                 "declares %d vertices"
                                 % (len(k_mat), s_line, len(sizes)))
        prev_line, prev_sizes = levels[-1]
        if len(k_mat[0]) != len(prev_sizes):
            raise Bd1SyntaxError(k_line, "k: has %d columns but sizes: at "
                                 "line %d declares %d vertices"
                                 % (len(k_mat[0]), prev_line, len(prev_sizes)))
        maps.append((k_line, k_mat))
        levels.append((s_line, sizes))
    if idx < len(entries) and entries[idx][1] == "tail":
        t_line, _, t_mat = entries[idx]
        idx += 1
        p = len(levels[-1][1])
        if len(t_mat) != p or len(t_mat[0]) != p:
            raise Bd1SyntaxError(t_line, "tail must be %dx%d to match the last "
                                 "sizes: line %d" % (p, p, levels[-1][0]))
        tail = t_mat
    if idx < len(entries) and entries[idx][1] == "point":
        p_line, _, pairs = entries[idx]
        idx += 1
        points = (p_line, pairs)
    if idx < len(entries):
        raise Bd1SyntaxError(entries[idx][0], "unexpected '%s:' line here"
                             % entries[idx][1])

    diagram = BratteliDiagram(tuple(s for _, s in levels),
                              tuple(m for _, m in maps), tail)
    verdict = validate(diagram)
    if not verdict.ok:
        raise Bd1SemanticError(str(verdict.issue))
    point_set = None
    if points is not None:
        p_line, pairs = points
        for (n, i) in pairs:
            if not diagram.has_vertex(n, i):
                raise Bd1SemanticError(
                    "line %d: pointed vertex %d:%d does not exist" % (p_line, n, i))
        point_set = frozenset(pairs)
    return diagram, point_set


def serialize(diagram: BratteliDiagram, points: PointSet | None = None) -> str:
    """Canonical bd1 text: normalized whitespace, no comments."""
    out = [HEADER]
    for n in range(1, diagram.num_levels + 1):
        out.append("sizes: " + " ".join(str(s) for s in diagram.sizes(n)))
        if n < diagram.num_levels:
            out.append("k: " + _matrix_text(diagram.map_from(n)))
    if diagram.tail is not None:
        out.append("tail: " + _matrix_text(diagram.tail))
    if points is not None:
        out.append("point: " + " ".join("%d:%d" % p for p in sorted(points)))
    return "\n".join(out) + "\n"


def _matrix_text(mat) -> str:
    return " ; ".join(" ".join(str(x) for x in row) for row in mat)
