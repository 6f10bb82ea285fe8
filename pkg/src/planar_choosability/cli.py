"""Command line: color, check, verify, gen, fuzz and oracle.

Exit codes: 0 success, 1 negative answer (check/verify/oracle/fuzz found
problems), 2 unmet precondition, 3 internal proof violation, 4 malformed
input file, 5 oracle budget exhausted.
"""

from __future__ import annotations

import argparse
import csv
import io as _stdio
import json
import sys
from pathlib import Path

from . import io
from .errors import CapExceeded, ChoosabilityError, FormatError, InternalProofViolation
from .fuzz import MODES, fuzz
from .gen import GenSpec, ListMode, generate
from .graph import rooted
from .lists import check_separation, check_valid, verify_coloring
from .oracle import DEFAULT_BUDGET, Status, brute_force_color, enumerate_all
from .report import coverage_figure, search_figure
from .solver import solve, solve_rooted

EXIT_OK = 0
EXIT_NO = 1
EXIT_PRECONDITION = 2
EXIT_PROOF = 3
EXIT_FORMAT = 4
EXIT_ABORTED = 5


def _emit(text: str, path: str | None) -> None:
    if path:
        io.write_text(path, text)
    else:
        sys.stdout.write(text)


def _load(args):
    g = io.loads_graph(io.read_text(args.graph))
    lists = io.loads_lists(io.read_text(args.lists))
    return g, lists


def cmd_color(args) -> int:
    g, lists = _load(args)
    try:
        if lists.is_rooted:
            if check_separation(g, lists, 2):
                print("lists are not a (4,2)-assignment", file=sys.stderr)
                return EXIT_PRECONDITION
            inst = rooted(g, lists.root, check=True)
            report = check_valid(inst, lists)
            if not report.valid:
                print(f"invalid rooted assignment: {list(report.violations)}", file=sys.stderr)
                return EXIT_PRECONDITION
            f, trace = solve_rooted(inst, lists)
        else:
            f, trace = solve(g, lists)
    except InternalProofViolation as e:
        print(f"internal proof violation: {e}", file=sys.stderr)
        if e.trace is not None and args.trace:
            io.write_text(args.trace, io.dumps_records(e.trace.to_records()))
        return EXIT_PROOF
    except ChoosabilityError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    _emit(io.dumps_coloring(f), args.out)
    if args.trace:
        io.write_text(args.trace, io.dumps_records(trace.to_records()))
    return EXIT_OK


def cmd_check(args) -> int:
    g, lists = _load(args)
    bad = check_separation(g, lists, args.s)
    out = {"separation_violations": [list(e) for e in bad]}
    clean = not bad
    if lists.is_rooted:
        try:
            inst = rooted(g, lists.root, check=True)
        except ChoosabilityError as e:
            out["validity"] = {"verdict": "Invalid", "violations": [[type(e).__name__, [], str(e)]]}
            clean = False
        else:
            rep = check_valid(inst, lists)
            out["validity"] = {
                "verdict": str(rep.verdict),
                "v_star": rep.v_star,
                "good_neighbour": rep.good_neighbour,
                "violations": [[v.kind, list(v.vertices), v.detail] for v in rep.violations],
            }
            clean = clean and rep.valid
    sys.stdout.write(json.dumps(out) + "\n")
    return EXIT_OK if clean else EXIT_NO


def cmd_verify(args) -> int:
    g, lists = _load(args)
    f = io.loads_coloring(io.read_text(args.coloring))
    issues = verify_coloring(g, lists, f)
    for issue in issues:
        print(f"{type(issue).__name__} {tuple(issue)}")
    return EXIT_OK if not issues else EXIT_NO


def cmd_gen(args) -> int:
    mode = MODES[args.mode]
    if args.list_size is not None:
        mode = ListMode(mode.kind, k=args.list_size, s=mode.s, t=mode.t)
    spec = GenSpec(args.kind, n=args.n, k=args.k, m=args.m, seed=args.seed,
                   list_mode=mode, palette_size=args.palette, flips=args.flips)
    try:
        g, lists = generate(spec)
    except ChoosabilityError as e:
        print(f"{type(e).__name__}: {e}", file=sys.stderr)
        return EXIT_PRECONDITION
    io.write_text(f"{args.out_prefix}.graph.json", io.dumps_graph(g))
    io.write_text(f"{args.out_prefix}.lists.json", io.dumps_lists(lists))
    return EXIT_OK


def _records_tsv(records: list[dict]) -> str:
    cols = ["id", "kind", "vertices", "outcome", "steps", "nodes", "seconds"]
    buf = _stdio.StringIO()
    w = csv.writer(buf, delimiter="\t", lineterminator="\n")
    present = [c for c in cols if c in ("id", "kind") or any(c in r for r in records)]
    w.writerow(present)
    for r in records:
        row = {**r, "kind": r["spec"]["kind"]}
        w.writerow([row.get(c, "") for c in present])
    return buf.getvalue()


def cmd_fuzz(args) -> int:
    report = fuzz(args.mode, args.count, args.seed, jobs=args.jobs, budget=args.budget,
                  timings=args.timings)
    text = json.dumps(report.to_doc(), indent=1) + "\n"
    if args.out:
        out = Path(args.out)
        out.mkdir(parents=True, exist_ok=True)
        io.write_text(out / "report.json", text)
        io.write_text(out / "records.tsv", _records_tsv(report.records))
        for i, (graph, lists) in report.dumps.items():
            io.write_text(out / f"counterexample-{i}.graph.json", graph)
            io.write_text(out / f"counterexample-{i}.lists.json", lists)
        if not args.no_figures:
            title = f"mode {args.mode}, seed {args.seed}, {args.count} instances"
            if args.mode == "4-2":
                coverage_figure(report.histogram, out / "coverage.png", title)
            else:
                search_figure(report.records, out / "search.png", title)
        sys.stdout.write(json.dumps(report.counters) + "\n")
    else:
        sys.stdout.write(text)
    return EXIT_OK if report.ok else EXIT_NO


def cmd_oracle(args) -> int:
    g, lists = _load(args)
    if args.enumerate:
        try:
            cols, capped = enumerate_all(g, lists, args.cap), False
        except CapExceeded as e:
            cols, capped = e.partial, True
        doc = {"count": len(cols), "capped": capped,
               "colorings": [{str(v): f[v] for v in sorted(f)} for f in cols]}
        sys.stdout.write(json.dumps(doc) + "\n")
        return EXIT_OK if cols else EXIT_NO
    res = brute_force_color(g, lists, args.budget)
    doc = {"status": str(res.status), "nodes": res.nodes_explored,
           "coloring": {str(v): res.coloring[v] for v in sorted(res.coloring)} if res.coloring else None}
    sys.stdout.write(json.dumps(doc) + "\n")
    return {Status.FOUND: EXIT_OK, Status.INFEASIBLE: EXIT_NO, Status.ABORTED: EXIT_ABORTED}[res.status]


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="planar-choosability",
                                description="List coloring of planar graphs from (4,2)-assignments.")
    sub = p.add_subparsers(dest="command", required=True)

    def files(sp, coloring=False):
        sp.add_argument("--graph", required=True, help="graph file (rotation system)")
        sp.add_argument("--lists", required=True, help="list assignment file")
        if coloring:
            sp.add_argument("--coloring", required=True, help="coloring file")

    sp = sub.add_parser("color", help="color a graph from its lists")
    files(sp)
    sp.add_argument("--out", help="write the coloring here instead of stdout")
    sp.add_argument("--trace", help="write the case trace here")
    sp.set_defaults(func=cmd_color)

    sp = sub.add_parser("check", help="check separation and rooted validity")
    files(sp)
    sp.add_argument("--s", type=int, default=2, help="max shared colors on an edge (default 2)")
    sp.set_defaults(func=cmd_check)

    sp = sub.add_parser("verify", help="verify a coloring")
    files(sp, coloring=True)
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("gen", help="generate a graph and lists")
    sp.add_argument("--kind", choices=["stacked", "polygon", "wheel"], required=True)
    sp.add_argument("--n", type=int, default=0, help="vertices (stacked)")
    sp.add_argument("--k", type=int, default=0, help="boundary length (polygon, wheel)")
    sp.add_argument("--m", type=int, default=0, help="interior vertices (polygon)")
    sp.add_argument("--flips", type=int, default=0, help="random interior edge flips (polygon)")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--mode", choices=sorted(MODES), default="4-2")
    sp.add_argument("--list-size", type=int, help="override the mode's list size")
    sp.add_argument("--palette", type=int, default=9, help="initial palette size")
    sp.add_argument("--out-prefix", required=True)
    sp.set_defaults(func=cmd_gen)

    sp = sub.add_parser("fuzz", help="run a seeded corpus")
    sp.add_argument("--count", type=int, default=1000)
    sp.add_argument("--seed", type=int, default=1)
    sp.add_argument("--mode", choices=sorted(MODES), default="4-2")
    sp.add_argument("--jobs", type=int, default=1, help="worker processes")
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET, help="oracle node budget")
    sp.add_argument("--timings", action="store_true",
                    help="add wall-clock seconds to records (reports stop being reproducible)")
    sp.add_argument("--out", help="directory for report.json, records.tsv, figures, counterexamples")
    sp.add_argument("--no-figures", action="store_true")
    sp.set_defaults(func=cmd_fuzz)

    sp = sub.add_parser("oracle", help="brute-force search")
    files(sp)
    sp.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    sp.add_argument("--enumerate", action="store_true", help="list every coloring")
    sp.add_argument("--cap", type=int, default=100_000, help="enumeration cap")
    sp.set_defaults(func=cmd_oracle)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except FormatError as e:
        print(f"malformed input: {e}", file=sys.stderr)
        return EXIT_FORMAT
    except OSError as e:
        print(f"cannot read input: {e}", file=sys.stderr)
        return EXIT_FORMAT


if __name__ == "__main__":
    sys.exit(main())
