"""Command-line surface tying the library together.

Exit codes: 0 when every requested check passes, 1 when a verification
fails, 2 for usage, syntax or semantic errors in the input.
"""

from __future__ import annotations

import argparse
import sys

from .algebra import verify_tower
from .bd1 import parse, serialize
from .diagram import BratteliDiagram, extend, slack, validate
from .diagonal import verify_diagonal_level
from .errors import BratteliError, Bd1SemanticError, Bd1SyntaxError
from .normalize import STRATEGIES, compute_point_set, normalize
from .paths import DEFAULT_CAP, count_paths, verify_path_counts
from .render import to_dot
from .report import build_report, render_json


def _build_parser():
    parser = argparse.ArgumentParser(
        prog="bratteli",
        description="Exact verification toolkit for pointed Bratteli diagrams")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, help_text, levels=False, cap=False, strategy=False, out=False):
        p = sub.add_parser(name, help=help_text)
        p.add_argument("file", help="bd1 input file")
        if levels:
            p.add_argument("--levels", type=int, default=None,
                           help="truncate or tail-extend to this many levels")
        if cap:
            p.add_argument("--cap", type=int, default=DEFAULT_CAP,
                           help="path enumeration cap (default %d)" % DEFAULT_CAP)
        if strategy:
            p.add_argument("--strategy", choices=STRATEGIES, default="drinen")
        if out:
            p.add_argument("-o", "--output", default=None,
                           help="write to this file instead of stdout")
        return p

    add("validate", "check the structural invariants")
    add("normalize", "limit the slack and emit the pointed diagram",
        strategy=True, out=True)
    add("point", "print the distinguished vertex set", strategy=True)
    add("counts", "compare path counts against sizes", levels=True)
    add("algebra", "verify the matrix-unit tower", levels=True, cap=True)
    add("diagonal", "verify the diagonal tower and MASA property",
        levels=True, cap=True)
    render = add("render", "emit Graphviz text")
    render.add_argument("--dot", action="store_true", required=True,
                        help="select DOT output (the only renderer)")
    report = add("report", "full machine-readable verification report",
                 levels=True, cap=True, strategy=True)
    report.add_argument("--json", action="store_true", required=True,
                        help="select JSON output (the only format)")
    return parser


class _UnreadableFile(Exception):
    pass


def _read_text(path):
    try:
        with open(path, encoding="utf-8") as handle:
            return handle.read()
    except OSError as exc:
        raise _UnreadableFile("cannot read %s: %s" % (path, exc))


def _load(path):
    return parse(_read_text(path))


def _working_diagram(diagram, levels):
    if levels is None:
        if diagram.tail is not None:
            return extend(diagram, 3)
        return diagram
    if levels < 1:
        raise Bd1SemanticError("--levels must be at least 1")
    if levels <= diagram.num_levels:
        return BratteliDiagram(diagram.levels[:levels],
                               diagram.maps[:levels - 1], None)
    return extend(diagram, levels - diagram.num_levels)


def _points_for(diagram, points, strategy="drinen"):
    if points is not None:
        return points
    return compute_point_set(diagram, strategy)


def _emit(text, output):
    if output:
        with open(output, "w", encoding="utf-8") as handle:
            handle.write(text)
    else:
        sys.stdout.write(text)


def _cmd_validate(args):
    text = _read_text(args.file)
    try:
        diagram, _ = parse(text)
    except Bd1SemanticError as exc:
        # show the verdict but count it as a failed check, not a usage error
        print("INVALID %s" % exc)
        return 1
    verdict = validate(diagram)
    if verdict.ok:
        print("OK %d levels" % diagram.num_levels)
        return 0
    print("INVALID %s" % verdict.issue)
    return 1


def _cmd_normalize(args):
    diagram, _ = _load(args.file)
    normalized = normalize(diagram, args.strategy)
    points = compute_point_set(normalized, args.strategy)
    _emit(serialize(normalized, points), args.output)
    return 0


def _cmd_point(args):
    diagram, _ = _load(args.file)
    points = compute_point_set(diagram, args.strategy)
    print("point: " + " ".join("%d:%d" % p for p in sorted(points)))
    return 0


def _cmd_counts(args):
    diagram, points = _load(args.file)
    work = _working_diagram(diagram, args.levels)
    points = _points_for(work, points)
    counts = count_paths(work, points)
    failed = False
    print("level vertex paths size ok")
    for n in range(1, work.num_levels + 1):
        sizes = work.sizes(n)
        for i in range(1, len(sizes) + 1):
            good = counts[n - 1][i - 1] == sizes[i - 1]
            failed = failed or not good
            print("%d %d %d %d %s" % (n, i, counts[n - 1][i - 1],
                                      sizes[i - 1], "yes" if good else "NO"))
    item = verify_path_counts(work, points)
    print(str(item))
    return 0 if item.ok and not failed else 1


def _cmd_algebra(args):
    diagram, points = _load(args.file)
    work = _working_diagram(diagram, args.levels)
    points = _points_for(work, points)
    item = verify_tower(work, points, cap=args.cap)
    for level in item.details["levels"]:
        flags = " ".join("%s=%s" % (k, v) for k, v in sorted(level.items())
                         if k.endswith("_ok"))
        print("level %d dim %d %s" % (level["level"], level["dim"], flags))
    print(str(VerificationSummary(item.ok)))
    return 0 if item.ok else 1


def _cmd_diagonal(args):
    diagram, points = _load(args.file)
    work = _working_diagram(diagram, args.levels)
    points = _points_for(work, points)
    ok = True
    for n in range(1, work.num_levels):
        result = verify_diagonal_level(work, points, n, cap=args.cap)
        ok = ok and result["ok"]
        print("level %d dim_masa %d recursion=%s masa=%s expectation=%s"
              % (result["level"], result["dim_masa"], result["recursion_ok"],
                 result["masa_ok"], result["expectation_ok"]))
    print(str(VerificationSummary(ok)))
    return 0 if ok else 1


def _cmd_render(args):
    diagram, points = _load(args.file)
    sys.stdout.write(to_dot(diagram, points))
    return 0


def _cmd_report(args):
    diagram, points = _load(args.file)
    data = build_report(diagram, points, levels=args.levels, cap=args.cap,
                        strategy=args.strategy)
    sys.stdout.write(render_json(data))
    return 0 if data["ok"] else 1


class VerificationSummary:
    def __init__(self, ok):
        self.ok = ok

    def __str__(self):
        return "ALL CHECKS PASS" if self.ok else "VERIFICATION FAILED"


_COMMANDS = {
    "validate": _cmd_validate,
    "normalize": _cmd_normalize,
    "point": _cmd_point,
    "counts": _cmd_counts,
    "algebra": _cmd_algebra,
    "diagonal": _cmd_diagonal,
    "render": _cmd_render,
    "report": _cmd_report,
}


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return exc.code if isinstance(exc.code, int) else 2
    try:
        return _COMMANDS[args.command](args)
    except (_UnreadableFile, Bd1SyntaxError, Bd1SemanticError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except BratteliError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 1


def entry():
    raise SystemExit(main())


if __name__ == "__main__":
    entry()
