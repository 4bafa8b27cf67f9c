"""Assembly of the machine-readable verification report.

The report is a plain dict of JSON-compatible values: exact integers,
booleans, strings and nested lists.  It contains no timestamps and is
rendered with sorted keys, so identical inputs produce byte-identical
output.  Algebra and diagonal checks are only run at levels whose path
counts fit under the enumeration cap; skipped levels are recorded rather
than silently dropped.
"""

from __future__ import annotations

import hashlib
import json

from . import __version__
from .algebra import MatrixRealization, verify_tower
from .bd1 import serialize
from .diagram import BratteliDiagram, PointSet, slack
from .diagonal import verify_diagonal_level
from .normalize import compute_point_set
from .paths import DEFAULT_CAP, count_paths, verify_path_counts

SCHEMA = "bratteli-report/1"


def build_report(diagram: BratteliDiagram, points: PointSet | None,
                 levels: int | None = None, cap: int = DEFAULT_CAP,
                 strategy: str = "drinen") -> dict:
    """Run every verification on a diagram and collect exact evidence.

    ``points`` may be None, in which case the point set is derived from
    the slack profile under ``strategy``.  ``levels`` truncates or (via
    the declared tail) extends the working diagram first.
    """
    from .diagram import extend

    work = diagram
    if levels is not None and levels != diagram.num_levels:
        if levels < diagram.num_levels:
            work = BratteliDiagram(diagram.levels[:levels],
                                   diagram.maps[:levels - 1], None)
        else:
            work = extend(diagram, levels - diagram.num_levels)
    elif levels is None and diagram.tail is not None:
        work = extend(diagram, 3)

    points_source = "file"
    if points is None:
        points = compute_point_set(work, strategy)
        points_source = "computed:%s" % strategy

    digest = hashlib.sha256(serialize(work, points).encode()).hexdigest()
    counts = count_paths(work, points)
    numpaths = verify_path_counts(work, points)

    checkable = work.num_levels
    skipped = []
    for n in range(1, work.num_levels + 1):
        if any(c > cap for c in counts[n - 1]):
            checkable = n - 1
            skipped = list(range(n, work.num_levels + 1))
            break

    tower = verify_tower(work, points, up_to=checkable, cap=cap) \
        if checkable >= 1 else None
    diagonal_levels = []
    for n in range(1, checkable):
        real_n = MatrixRealization(work, points, n, cap)
        real_n1 = MatrixRealization(work, points, n + 1, cap)
        diagonal_levels.append(
            verify_diagonal_level(work, points, n, cap, (real_n, real_n1)))

    tower_ok = bool(tower.ok) if tower is not None else True
    diagonal_ok = all(lv["ok"] for lv in diagonal_levels)
    overall = numpaths.ok and tower_ok and diagonal_ok

    return {
        "schema": SCHEMA,
        "tool": {"name": "bratteli", "version": __version__},
        "input": {
            "digest": "sha256:" + digest,
            "levels": work.num_levels,
            "sizes": [list(s) for s in work.levels],
            "maps": [[list(row) for row in m] for m in work.maps],
            "tail": [list(row) for row in work.tail] if work.tail else None,
        },
        "points": {
            "source": points_source,
            "vertices": [list(p) for p in sorted(points)],
        },
        "slack": [list(s) for s in slack(work)],
        "path_counts": [list(c) for c in counts],
        "numpaths": numpaths.as_dict(),
        "numpaths_ok": numpaths.ok,
        "tower": tower.as_dict() if tower is not None else None,
        "tower_ok": tower_ok,
        "diagonal": diagonal_levels,
        "masa_ok": diagonal_ok,
        "cap": cap,
        "levels_checked": checkable,
        "levels_skipped_over_cap": skipped,
        "ok": overall,
    }


def render_json(report: dict) -> str:
    """Canonical textual form: sorted keys, two-space indent, newline."""
    return json.dumps(report, sort_keys=True, indent=2) + "\n"
