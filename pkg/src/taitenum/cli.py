"""Command-line front end.

Subcommands: partition, colorings, hamilton, oracle, check, bench, gen.
Exit codes: 0 success, 1 usage error, 2 invalid input graph, 3 internal
invariant failure.  Long enumerations (projected branch nodes above the
threshold) are refused without --allow-long so CI cannot wander into a
multi-minute run by accident; TAITENUM_LONG_THRESHOLD overrides the gate.
"""

from __future__ import annotations

import argparse
import json
import os
import statistics
import sys
import time
from multiprocessing import Pool

from . import __version__
from .coloring import Color, SearchStats, count_colorings, enumerate_colorings, enumerate_prefixed
from .cycles import enumerate_hamiltonian
from .fastcount import fast_count
from .graphs import (
    CubicGraph,
    EdgeListSyntaxError,
    GenerationError,
    InvalidGraphError,
    builtin,
    builtin_names,
    parse_edge_list,
    random_cubic,
    serialize_edge_list,
)
from .oracle import ORACLE_CAP, brute_colorings, brute_hamiltonian
from .partition import InternalInvariantError, SchedulePlan, build_schedule, verify_schedule

DEFAULT_LONG_THRESHOLD = 2**30
CHUNK_TAIL_DEPTH = 24  # subtree depth left unsplit when chunking long runs

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_BAD_GRAPH = 2
EXIT_INTERNAL = 3


class UsageError(ValueError):
    pass


# ---------------------------------------------------------------------------
# Argument parsing
# ---------------------------------------------------------------------------

def _add_graph_source(p: argparse.ArgumentParser) -> None:
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", choices=builtin_names(), help="built-in graph")
    src.add_argument("--file", help="EDGE LIST file")
    src.add_argument("--stdin", action="store_true", help="read EDGE LIST from stdin")


def _add_run_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--json", action="store_true", help="emit a JSON report on stdout")
    p.add_argument("--limit", type=int, help="stop after this many results")
    p.add_argument("--jobs", type=int, default=1, help="parallel workers for --count")
    p.add_argument("--allow-long", action="store_true", help="permit runs above the long threshold")
    p.add_argument("--long-threshold", type=int, help=f"override the gate (default {DEFAULT_LONG_THRESHOLD})")
    p.add_argument("--progress-interval", type=float, default=10.0,
                   help="seconds between progress lines on stderr for chunked runs")
    p.add_argument("--no-jit", action="store_true", help="force the pure-Python counting path")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="taitenum",
                                     description="enumerate 3-edge colorings and Hamiltonian cycles of cubic graphs")
    parser.add_argument("--version", action="version", version=f"taitenum {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("partition", help="print the rigid/soft split and edge schedule")
    _add_graph_source(p)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("colorings", help="count or list proper 3-edge colorings")
    _add_graph_source(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true", help="stats only (default)")
    mode.add_argument("--list", action="store_true", help="stream colorings as `edge u v color` lines")
    p.add_argument("--prefix", help="branch choices (e.g. AAB) pinning the first soft vertices")
    _add_run_flags(p)

    p = sub.add_parser("hamilton", help="count or list Hamiltonian cycles")
    _add_graph_source(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--list", action="store_true", help="one cycle per line, `0-1-...-0 (red-blue)`")
    _add_run_flags(p)

    p = sub.add_parser("oracle", help="brute-force reference enumeration (small graphs)")
    p.add_argument("what", choices=("colorings", "hamilton"))
    _add_graph_source(p)
    mode = p.add_mutually_exclusive_group()
    mode.add_argument("--count", action="store_true")
    mode.add_argument("--list", action="store_true")
    p.add_argument("--json", action="store_true")
    p.add_argument("--cap", type=int, default=ORACLE_CAP, help="vertex cap")

    p = sub.add_parser("check", help="differential test: pipeline vs brute force")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", choices=builtin_names())
    src.add_argument("--file")
    src.add_argument("--stdin", action="store_true")
    src.add_argument("--random", type=int, metavar="N", help="check N seeded random graphs")
    p.add_argument("--max-n", type=int, default=14, help="largest random graph size")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--json", action="store_true")

    p = sub.add_parser("bench", help="repeat a counting run and report the median wall time")
    _add_graph_source(p)
    p.add_argument("--repeat", type=int, default=5)
    p.add_argument("--hamilton", action="store_true", help="include the 2-factor connectivity check")
    p.add_argument("--json", action="store_true")
    p.add_argument("--allow-long", action="store_true")
    p.add_argument("--long-threshold", type=int)
    p.add_argument("--no-jit", action="store_true")

    p = sub.add_parser("gen", help="emit a graph in EDGE LIST format")
    src = p.add_mutually_exclusive_group(required=True)
    src.add_argument("--graph", choices=builtin_names())
    src.add_argument("--random", type=int, metavar="N", help="random cubic multigraph on N vertices")
    p.add_argument("--seed", type=int, default=0)

    return parser


# ---------------------------------------------------------------------------
# Helpers
# ---------------------------------------------------------------------------

def _load_graph(args) -> CubicGraph:
    if getattr(args, "graph", None):
        return builtin(args.graph)
    if getattr(args, "file", None):
        with open(args.file, encoding="utf-8") as fh:
            return parse_edge_list(fh.read())
    return parse_edge_list(sys.stdin.read())


def _long_threshold(args) -> int:
    if getattr(args, "long_threshold", None):
        return args.long_threshold
    env = os.environ.get("TAITENUM_LONG_THRESHOLD")
    if env:
        return int(env)
    return DEFAULT_LONG_THRESHOLD


def _gate_long_run(args, plan: SchedulePlan) -> None:
    projected = 2 ** (plan.soft_count + 1)
    threshold = _long_threshold(args)
    if projected > threshold and not args.allow_long:
        raise UsageError(
            f"projected search width 2^{plan.soft_count + 1} exceeds the long-run "
            f"threshold {threshold}; pass --allow-long to proceed"
        )


def _graph_summary(g: CubicGraph) -> dict:
    return {"n": g.n, "m": g.m, "girth": g.girth, "simple": g.is_simple()}


def _plan_summary(g: CubicGraph, plan: SchedulePlan) -> dict:
    snap = plan.snapshot
    return {
        "rigid_count": len(plan.rigid),
        "soft_count": plan.soft_count,
        "snapshot": {
            "soft": snap.soft,
            "unidentified": snap.unidentified,
            "rigid": snap.rigid,
            "inequality_2s_le_u_plus_r": snap.inequality_ok,
        },
    }


def _bounds_report(g: CubicGraph, plan: SchedulePlan) -> dict:
    snap = plan.snapshot
    return {
        "snapshot_soft_le_n_over_3": 3 * snap.soft <= g.n,
        "final_soft_le_n_over_2": (2 * plan.soft_count <= g.n) if g.girth >= 4 else None,
        "girth_bound_exponent": g.n * (g.girth + 2) / (3 * g.girth),
    }


def _stats_dict(stats: SearchStats, with_cycles: bool) -> dict:
    out = {
        "soft_count": stats.soft_count,
        "bound_exponent": stats.bound_exponent,
        "decision_nodes": stats.decision_nodes,
        "backtracks": stats.backtracks,
        "conflicts": stats.conflicts,
        "colorings_found": stats.colorings_found,
    }
    if with_cycles:
        out["cycles_found"] = stats.cycles_found
    out["elapsed_seconds"] = stats.elapsed_seconds
    return out


def _report(args, command: str, g: CubicGraph, plan: SchedulePlan, stats: SearchStats,
            with_cycles: bool, extra: dict | None = None) -> dict:
    report = {
        "schema": "taitenum.run/1",
        "command": command,
        "graph": _graph_summary(g),
        "plan": _plan_summary(g, plan),
        "bounds": _bounds_report(g, plan),
        "stats": _stats_dict(stats, with_cycles),
    }
    if extra:
        report.update(extra)
    return report


def _emit_json(doc: dict) -> None:
    json.dump(doc, sys.stdout, indent=2)
    sys.stdout.write("\n")


def _print_stats_human(stats: SearchStats, with_cycles: bool) -> None:
    print(f"soft vertices:   {stats.soft_count} (search width <= 2^{stats.bound_exponent})")
    print(f"decision nodes:  {stats.decision_nodes}")
    print(f"backtracks:      {stats.backtracks}")
    print(f"conflicts:       {stats.conflicts}")
    print(f"colorings:       {stats.colorings_found}")
    if with_cycles:
        print(f"hamiltonian:     {stats.cycles_found}")
    print(f"elapsed seconds: {stats.elapsed_seconds:.3f}")


# ---------------------------------------------------------------------------
# Chunked / parallel counting
# ---------------------------------------------------------------------------

_WORKER_STATE: dict = {}


def _worker_init(n: int, edges: list) -> None:
    from .graphs import from_edge_pairs

    g = from_edge_pairs(n, edges)
    _WORKER_STATE["graph"] = g
    _WORKER_STATE["plan"] = build_schedule(g)


def _worker_count(task) -> tuple:
    prefix, check_cycles, force_python = task
    s = fast_count(_WORKER_STATE["graph"], _WORKER_STATE["plan"], prefix=prefix,
                   check_cycles=check_cycles, force_python=force_python)
    return (s.colorings_found, s.cycles_found, s.decision_nodes, s.backtracks, s.conflicts)


def _count_with_chunks(args, g: CubicGraph, plan: SchedulePlan, check_cycles: bool) -> SearchStats:
    """Counting dispatcher: single kernel call, or prefix-split chunks with
    progress reporting when the tree is deep or --jobs asks for workers."""
    force_python = bool(getattr(args, "no_jit", False))
    jobs = max(1, getattr(args, "jobs", 1))
    depth = 0
    if plan.soft_count > CHUNK_TAIL_DEPTH:
        depth = min(plan.soft_count - CHUNK_TAIL_DEPTH, 10)
    if jobs > 1:
        depth = max(depth, min(plan.soft_count, (2 * jobs - 1).bit_length()))
    if depth == 0:
        return fast_count(g, plan, check_cycles=check_cycles, force_python=force_python)

    prefixes = [format(i, f"0{depth}b") for i in range(2**depth)] if depth else [""]
    prefixes = [p.replace("0", "A").replace("1", "B") for p in prefixes]
    total = SearchStats(soft_count=plan.soft_count)
    start = time.perf_counter()
    last_report = start
    interval = getattr(args, "progress_interval", 10.0)

    def note_progress(done: int) -> None:
        nonlocal last_report
        now = time.perf_counter()
        if now - last_report >= interval:
            last_report = now
            print(
                f"progress: {done}/{len(prefixes)} subtrees, "
                f"colorings={total.colorings_found}, decisions={total.decision_nodes}, "
                f"elapsed={now - start:.0f}s",
                file=sys.stderr,
            )

    tasks = [(p, check_cycles, force_python) for p in prefixes]
    if jobs == 1:
        for done, task in enumerate(tasks, 1):
            part = fast_count(g, plan, prefix=task[0], check_cycles=check_cycles,
                              force_python=force_python)
            total = total.merged_with(part)
            note_progress(done)
    else:
        with Pool(jobs, initializer=_worker_init, initargs=(g.n, list(g.edges))) as pool:
            for done, row in enumerate(pool.imap_unordered(_worker_count, tasks), 1):
                part = SearchStats(plan.soft_count, row[2], row[3], row[4], row[0], row[1])
                total = total.merged_with(part)
                note_progress(done)
    total.elapsed_seconds = time.perf_counter() - start
    return total


# ---------------------------------------------------------------------------
# Subcommands
# ---------------------------------------------------------------------------

def _cmd_partition(args) -> int:
    g = _load_graph(args)
    plan = build_schedule(g)
    report = verify_schedule(g, plan)
    if not report.ok:
        raise InternalInvariantError("; ".join(report.violations))
    if args.json:
        doc = {
            "schema": "taitenum.partition/1",
            "graph": _graph_summary(g),
            "rigid": sorted(plan.rigid),
            "soft": list(plan.soft),
            "snapshot": _plan_summary(g, plan)["snapshot"],
            "schedule": [
                {
                    "edge": e.edge_id,
                    "u": g.edges[e.edge_id][0],
                    "v": g.edges[e.edge_id][1],
                    "role": e.role.value,
                    "owner": e.owner,
                }
                for e in plan.schedule
            ],
        }
        _emit_json(doc)
        return EXIT_OK
    print("rigid:", " ".join(str(v) for v in sorted(plan.rigid)))
    print("soft: ", " ".join(str(v) for v in plan.soft))
    snap = plan.snapshot
    print(f"cover snapshot: soft={snap.soft} unidentified={snap.unidentified} rigid={snap.rigid}")
    print("schedule:")
    for i, e in enumerate(plan.schedule):
        u, v = g.edges[e.edge_id]
        owner = "" if e.owner is None else f" owner={e.owner}"
        print(f"  {i:3d}: edge {e.edge_id} [{u},{v}] {e.role.value}{owner}")
    return EXIT_OK


def _cmd_colorings(args) -> int:
    g = _load_graph(args)
    plan = build_schedule(g)
    listing = args.list
    if not listing and args.limit is None:
        _gate_long_run(args, plan)

    if listing or args.limit is not None:
        rows: list[list[str]] = []

        def visit(coloring) -> bool:
            rows.append([coloring[e].label for e in range(g.m)])
            return True

        if args.prefix:
            stats = enumerate_prefixed(g, plan, args.prefix, visit, args.limit)
        else:
            stats = enumerate_colorings(g, plan, visit, args.limit)
        if args.json:
            doc = _report(args, "colorings", g, plan, stats, False)
            if listing:
                doc["colorings"] = rows
            _emit_json(doc)
        else:
            if listing:
                for i, row in enumerate(rows, 1):
                    print(f"# coloring {i}")
                    for e, label in enumerate(row):
                        u, v = g.edges[e]
                        print(f"{e} {u} {v} {label}")
            _print_stats_human(stats, False)
        return EXIT_OK

    if args.prefix:
        stats = fast_count(g, plan, prefix=args.prefix, force_python=args.no_jit)
    else:
        stats = _count_with_chunks(args, g, plan, check_cycles=False)
    if args.json:
        _emit_json(_report(args, "colorings", g, plan, stats, False))
    else:
        _print_stats_human(stats, False)
    return EXIT_OK


def _cmd_hamilton(args) -> int:
    g = _load_graph(args)
    plan = build_schedule(g)
    listing = args.list
    if not listing and args.limit is None:
        _gate_long_run(args, plan)

    if listing or args.limit is not None:
        found: list = []

        def visit(cycle) -> bool:
            found.append(cycle)
            return True

        stats = enumerate_hamiltonian(g, visit, args.limit, plan)
        if args.json:
            doc = _report(args, "hamilton", g, plan, stats, True)
            if listing:
                doc["cycles"] = [
                    {"vertices": list(c.vertices), "edges": list(c.edges),
                     "colors": [col.label for col in c.color_pair]}
                    for c in found
                ]
            _emit_json(doc)
        else:
            if listing:
                for c in found:
                    print(c.format())
            _print_stats_human(stats, True)
        return EXIT_OK

    stats = _count_with_chunks(args, g, plan, check_cycles=True)
    if args.json:
        _emit_json(_report(args, "hamilton", g, plan, stats, True))
    else:
        _print_stats_human(stats, True)
    return EXIT_OK


def _cmd_oracle(args) -> int:
    g = _load_graph(args)
    if args.what == "colorings":
        found = sorted(brute_colorings(g, args.cap),
                       key=lambda c: tuple(col.value for col in c.assignment))
        if args.json:
            _emit_json({
                "schema": "taitenum.oracle/1",
                "graph": _graph_summary(g),
                "what": "colorings",
                "count": len(found),
                "colorings": [[col.label for col in c.assignment] for c in found] if args.list else None,
            })
        elif args.list:
            for i, c in enumerate(found, 1):
                print(f"# coloring {i}")
                for e in range(g.m):
                    u, v = g.edges[e]
                    print(f"{e} {u} {v} {c[e].label}")
            print(f"colorings: {len(found)}")
        else:
            print(f"colorings: {len(found)}")
        return EXIT_OK

    cycles = sorted(brute_hamiltonian(g, args.cap), key=lambda c: (c.vertices, c.edges))
    if args.json:
        _emit_json({
            "schema": "taitenum.oracle/1",
            "graph": _graph_summary(g),
            "what": "hamilton",
            "count": len(cycles),
            "cycles": [{"vertices": list(c.vertices), "edges": list(c.edges)} for c in cycles]
            if args.list else None,
        })
    elif args.list:
        for c in cycles:
            print(c.format())
        print(f"hamiltonian: {len(cycles)}")
    else:
        print(f"hamiltonian: {len(cycles)}")
    return EXIT_OK


def _check_one(g: CubicGraph, label: str) -> tuple[bool, dict]:
    plan = build_schedule(g)
    got_colorings: set = set()
    enumerate_colorings(g, plan, lambda c: got_colorings.add(c) or True)
    want_colorings = brute_colorings(g)
    got_cycles: set = set()
    enumerate_hamiltonian(g, lambda c: got_cycles.add(c) or True, plan=plan)
    want_cycles = brute_hamiltonian(g)
    ok = got_colorings == want_colorings and got_cycles == want_cycles
    row = {
        "graph": label,
        "n": g.n,
        "colorings": len(want_colorings),
        "cycles": len(want_cycles),
        "agree": ok,
    }
    return ok, row


def _cmd_check(args) -> int:
    rows = []
    all_ok = True
    if args.random is not None:
        sizes = [n for n in range(4, args.max_n + 1, 2)]
        for i in range(args.random):
            n = sizes[i % len(sizes)]
            seed = args.seed + i
            g = random_cubic(n, seed)
            ok, row = _check_one(g, f"random(n={n}, seed={seed})")
            rows.append(row)
            all_ok &= ok
    else:
        g = _load_graph(args)
        label = args.graph or args.file or "<stdin>"
        ok, row = _check_one(g, label)
        rows.append(row)
        all_ok &= ok
    if args.json:
        _emit_json({"schema": "taitenum.check/1", "agree": all_ok, "graphs": rows})
    else:
        for row in rows:
            mark = "ok" if row["agree"] else "MISMATCH"
            print(f"{mark}: {row['graph']} colorings={row['colorings']} cycles={row['cycles']}")
        print("agreement:", "yes" if all_ok else "NO")
    return EXIT_OK if all_ok else EXIT_INTERNAL


def _cmd_bench(args) -> int:
    g = _load_graph(args)
    plan = build_schedule(g)
    _gate_long_run(args, plan)
    times = []
    stats = None
    for _ in range(max(1, args.repeat)):
        stats = fast_count(g, plan, check_cycles=args.hamilton, force_python=args.no_jit)
        times.append(stats.elapsed_seconds)
    med = statistics.median(times)
    if args.json:
        _emit_json({
            "schema": "taitenum.bench/1",
            "graph": _graph_summary(g),
            "repeat": len(times),
            "median_seconds": med,
            "times": times,
            "stats": _stats_dict(stats, args.hamilton),
        })
    else:
        print(f"median over {len(times)} runs: {med:.4f}s "
              f"(colorings={stats.colorings_found})")
    return EXIT_OK


def _cmd_gen(args) -> int:
    if args.graph:
        g = builtin(args.graph)
        comment = f"builtin {args.graph}: n={g.n} m={g.m} girth={g.girth}"
    else:
        g = random_cubic(args.random, args.seed)
        comment = f"random cubic n={g.n} seed={args.seed}"
    sys.stdout.write(serialize_edge_list(g, comment))
    return EXIT_OK


_COMMANDS = {
    "partition": _cmd_partition,
    "colorings": _cmd_colorings,
    "hamilton": _cmd_hamilton,
    "oracle": _cmd_oracle,
    "check": _cmd_check,
    "bench": _cmd_bench,
    "gen": _cmd_gen,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code in (0, None) else EXIT_USAGE
    try:
        return _COMMANDS[args.command](args)
    except (EdgeListSyntaxError, InvalidGraphError) as exc:
        print(f"invalid graph: {exc}", file=sys.stderr)
        return EXIT_BAD_GRAPH
    except (UsageError, GenerationError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except InternalInvariantError as exc:
        print(f"internal invariant failure: {exc}", file=sys.stderr)
        return EXIT_INTERNAL


if __name__ == "__main__":
    sys.exit(main())
