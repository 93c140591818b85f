"""``fourecc`` command-line tool.

Exit codes: 0 success, 1 usage, 2 unreadable or malformed input, 3 failed
precondition (not 3-edge-connected, or too large for the oracle), 4 the fast
path disagrees with the oracle.
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from typing import Sequence

from .cuts import Cut3, EnumStats, NotThreeEdgeConnectedError, all_3cuts
from .decompose import is_3ec, kecc
from .graph import GraphFormatError, Multigraph, format_graph, generate_3ec_graph, generate_random_graph, parse_graph
from .oracle import OracleSizeError, brute_3cuts, kecc_partition_oracle

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_PARSE = 2
EXIT_PRECONDITION = 3
EXIT_MISMATCH = 4

# kecc_partition_oracle runs O(n^2) max-flows; beyond this it is too slow to be useful
ORACLE_MAX_VERTICES = 200


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):
        raise _UsageError(f"{self.prog}: error: {message}")


class _InputError(Exception):
    pass


def _load(path: str) -> Multigraph:
    try:
        with open(path, "rb") as fh:
            data = fh.read()
    except OSError as exc:
        raise _InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_graph(data)
    except GraphFormatError as exc:
        raise _InputError(f"{path}: {exc}") from None


def _cut_line(c: Cut3) -> str:
    return f"cut type={c.cut_type} edges={','.join(map(str, c.edges))}"


def _sorted_cuts(cuts: list[Cut3]) -> list[Cut3]:
    return sorted(cuts, key=lambda c: (c.cut_type, c.edges))


def _report(path: str, g: Multigraph, cuts: list[Cut3], stats: EnumStats, timings: bool) -> dict:
    by_type = {str(t): sum(1 for c in cuts if c.cut_type == t) for t in (1, 2, 3)}
    report = {
        "schema": 1,
        "input": {"path": path, "n": g.n, "m": g.m},
        "cuts": [{"type": c.cut_type, "edges": list(c.edges)} for c in cuts],
        "partitions": {str(k): kecc(g, k).classes for k in (1, 2, 3, 4)},
        "counters": {
            "cuts": len(cuts),
            "cuts_by_type": by_type,
            "contraction_rounds": stats.rounds,
            "round_vertices": stats.round_vertices,
            "walk_steps": dict(sorted(stats.walk_steps.items())),
            "cursor_advances": stats.cursor_advances,
            "back_edges": stats.back_edges,
        },
    }
    if timings:
        report["timings_ms"] = {k: round(v * 1000, 3) for k, v in sorted(stats.timings.items())}
    return report


def _cmd_cuts(args, out) -> int:
    g = _load(args.file)
    stats = EnumStats()
    try:
        cuts = _sorted_cuts(all_3cuts(g, stats=stats))
    except NotThreeEdgeConnectedError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PRECONDITION
    if args.json:
        json.dump(_report(args.file, g, cuts, stats, args.timings), out, indent=2)
        out.write("\n")
    else:
        for c in cuts:
            out.write(_cut_line(c) + "\n")
    return EXIT_OK


def _cmd_components(args, out) -> int:
    g = _load(args.file)
    for i, cls in enumerate(kecc(g, args.k).classes, 1):
        out.write(f"component {i}: {' '.join(map(str, cls))}\n")
    return EXIT_OK


def _partition_mismatch(g: Multigraph, got, want) -> str | None:
    if got.classes == want.classes:
        return None
    for a in range(1, g.n + 1):
        for b in range(a + 1, g.n + 1):
            same_got = got.class_of[a] == got.class_of[b]
            same_want = want.class_of[a] == want.class_of[b]
            if same_got != same_want:
                return f"vertices {a} and {b}: fast path says {'same' if same_got else 'different'}, oracle says {'same' if same_want else 'different'}"
    return "partitions differ"


def _cmd_verify(args, out) -> int:
    g = _load(args.file)
    if g.n > ORACLE_MAX_VERTICES:
        print(f"error: oracle limited to n <= {ORACLE_MAX_VERTICES}", file=sys.stderr)
        return EXIT_PRECONDITION
    problems = []
    if is_3ec(g)[0]:
        try:
            want = brute_3cuts(g)
        except OracleSizeError as exc:
            print(f"error: {exc}", file=sys.stderr)
            return EXIT_PRECONDITION
        got = {c.edges for c in all_3cuts(g)}
        extra = sorted(got - want)
        missing = sorted(want - got)
        if extra:
            problems.append(f"cuts: {','.join(map(str, extra[0]))} reported but not a cut ({len(extra)} total)")
        if missing:
            problems.append(f"cuts: {','.join(map(str, missing[0]))} missed ({len(missing)} total)")
    for k in (1, 2, 3, 4):
        diff = _partition_mismatch(g, kecc(g, k), kecc_partition_oracle(g, k))
        if diff:
            problems.append(f"{k}-edge-connected components: {diff}")
    if problems:
        for p in problems:
            out.write(f"MISMATCH {p}\n")
        return EXIT_MISMATCH
    out.write("OK\n")
    return EXIT_OK


def _cmd_gen(args, out) -> int:
    try:
        if args.general:
            g = generate_random_graph(args.n, args.m, args.seed)
        else:
            g = generate_3ec_graph(args.n, args.m, args.seed)
    except ValueError as exc:
        raise _UsageError(f"gen: {exc}") from None
    kind = "general" if args.general else "3-edge-connected"
    out.write(format_graph(g, comment=f"{kind} n={args.n} m={args.m} seed={args.seed}"))
    return EXIT_OK


def _cmd_bench(args, out) -> int:
    try:
        sizes = [int(s) for s in args.sizes.split(",") if s.strip()]
    except ValueError:
        raise _UsageError("bench: --sizes must be a comma-separated list of integers") from None
    if not sizes or min(sizes) < 2:
        raise _UsageError("bench: sizes must be >= 2")
    out.write("n,m,phase,millis\n")
    shrinkage = []
    for n in sizes:
        m = 2 * n
        g = generate_3ec_graph(n, m, args.seed)
        stats = EnumStats()
        start = time.perf_counter()
        all_3cuts(g, check=True, stats=stats)
        total = time.perf_counter() - start
        for phase, secs in sorted(stats.timings.items()):
            out.write(f"{n},{m},{phase},{secs * 1000:.3f}\n")
        out.write(f"{n},{m},total,{total * 1000:.3f}\n")
        shrinkage.append(f"# shrinkage n={n} rounds={stats.rounds} vertices={'>'.join(map(str, stats.round_vertices))}")
    for line in shrinkage:
        out.write(line + "\n")
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="fourecc", description="3-edge cuts and 4-edge-connected components of multigraphs")
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("cuts", help="list every 3-edge cut of a 3-edge-connected graph")
    p.add_argument("file")
    p.add_argument("--json", action="store_true", help="emit a JSON report")
    p.add_argument("--timings", action="store_true", help="include per-phase timings in the JSON report")
    p.set_defaults(run=_cmd_cuts)

    p = sub.add_parser("components", help="print the k-edge-connected components")
    p.add_argument("--k", type=int, required=True, choices=(1, 2, 3, 4))
    p.add_argument("file")
    p.set_defaults(run=_cmd_components)

    p = sub.add_parser("verify", help="compare against the brute-force oracle")
    p.add_argument("file")
    p.set_defaults(run=_cmd_verify)

    p = sub.add_parser("gen", help="write a random graph file")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--general", action="store_true", help="arbitrary multigraph instead of a 3-edge-connected one")
    p.set_defaults(run=_cmd_gen)

    p = sub.add_parser("bench", help="time cut enumeration on generated graphs with m = 2n")
    p.add_argument("--sizes", required=True, help="comma-separated vertex counts")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(run=_cmd_bench)
    return parser


def run_cli(argv: Sequence[str] | None = None, out=None) -> int:
    out = out if out is not None else sys.stdout
    try:
        args = build_parser().parse_args(argv)
        return args.run(args, out)
    except _UsageError as exc:
        print(exc, file=sys.stderr)
        return EXIT_USAGE
    except _InputError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
