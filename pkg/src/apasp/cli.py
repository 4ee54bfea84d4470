"""Command-line front end.

Subcommands: build, update, query, dump, bc, verify, bench.  Exit codes:
0 success, 1 parse or validation error, 2 verification failure.  Output is
deterministic for identical inputs.
"""

from __future__ import annotations

import argparse
import random
import sys

from .centrality import bc_from_dags
from .engine import UpdateStats, decremental_update
from .graph import (Graph, GraphError, UpdateError, UpdateOp, format_weight,
                    load_graph, load_trace)
from .oracle import assert_equivalent, build_tuple_system, sp_params, static_apasp
from .randgen import random_graph, random_update
from .tuples import TupleSystem


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apasp",
        description="maintain all shortest paths and betweenness "
                    "centrality of a weighted digraph under decremental "
                    "vertex updates")
    sub = parser.add_subparsers(dest="command", required=True)

    def add_common(p: argparse.ArgumentParser, trace_required=False) -> None:
        p.add_argument("-g", required=True, metavar="PATH",
                       help="graph file")
        p.add_argument("-t", metavar="PATH", required=trace_required,
                       help="update trace file")

    add_common(sub.add_parser("build", help="build and summarize"))
    p = sub.add_parser("update", help="replay an update trace")
    add_common(p, trace_required=True)
    p.add_argument("--verify", action="store_true",
                   help="check against the rebuilt oracle after each update")
    p = sub.add_parser("query", help="distance and path count for a pair")
    add_common(p)
    p.add_argument("--pair", required=True, metavar="X,Y")
    p = sub.add_parser("dump", help="canonical state dump")
    add_common(p)
    p = sub.add_parser("bc", help="betweenness centrality scores")
    add_common(p)
    p = sub.add_parser("verify", help="replay and verify every update")
    add_common(p, trace_required=True)
    p = sub.add_parser("bench", help="replay and emit per-update counters")
    p.add_argument("-g", metavar="PATH", help="graph file")
    p.add_argument("-t", metavar="PATH", help="update trace file")
    p.add_argument("--random", metavar="N,M,UPDATES",
                   help="generate a random instance instead of reading files")
    p.add_argument("--seed", type=int, default=0, metavar="U64")
    p.add_argument("--report-dir", metavar="DIR",
                   help="write stats.csv and counter figures here")
    return parser


def _replay(g: Graph, ops: list[UpdateOp], verify: bool,
            out: list[str] | None = None
            ) -> tuple[Graph, TupleSystem, list[UpdateStats], list[str]]:
    ts = build_tuple_system(g)
    if verify:
        diffs = assert_equivalent(ts, g)
        if diffs:
            return g, ts, [], diffs
    stats_list: list[UpdateStats] = []
    for i, op in enumerate(ops):
        g, stats = decremental_update(ts, g, op)
        stats_list.append(stats)
        if out is not None:
            out.append(f"update {g.labels[op.v]}: ok")
        if verify:
            diffs = assert_equivalent(ts, g)
            if diffs:
                return g, ts, stats_list, [f"after update {i + 1}:"] + diffs
    return g, ts, stats_list, []


def main(argv: list[str] | None = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return _dispatch(args)
    except (GraphError, UpdateError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return 1


def _dispatch(args: argparse.Namespace) -> int:
    if args.command == "bench":
        return _cmd_bench(args)

    g = load_graph(_read(args.g))
    ops = load_trace(_read(args.t), g) if getattr(args, "t", None) else []

    if args.command == "build":
        oracle = static_apasp(g)
        ts = build_tuple_system(g, oracle)
        nu_star, m_star = sp_params(g, oracle)
        print(f"vertices {g.n}")
        print(f"edges {g.m}")
        print(f"triples {ts.triple_count()}")
        print(f"m_star {m_star}")
        print(f"nu_star {nu_star}")
        return 0

    if args.command in ("update", "verify"):
        verify = args.command == "verify" or args.verify
        lines: list[str] = []
        _, _, _, diffs = _replay(g, ops, verify, lines)
        for line in lines:
            print(line)
        if diffs:
            for d in diffs:
                print(d, file=sys.stderr)
            print("verification failed", file=sys.stderr)
            return 2
        return 0

    g2, ts, _, _ = _replay(g, ops, verify=False)

    if args.command == "query":
        try:
            xl, yl = args.pair.split(",")
        except ValueError:
            raise GraphError(f"--pair wants 'X,Y', got {args.pair!r}")
        x, y = g2.vertex(xl.strip()), g2.vertex(yl.strip())
        print(f"{format_weight(ts.distance(x, y))} {ts.sigma(x, y)}")
        return 0

    if args.command == "dump":
        sys.stdout.write(ts.dump(g2.labels))
        return 0

    if args.command == "bc":
        scores = bc_from_dags(ts)
        for label, u in sorted((g2.labels[u], u) for u in range(g2.n)):
            print(f"{label} {scores[u]:.12g}")
        return 0

    raise GraphError(f"unknown command {args.command!r}")


def _cmd_bench(args: argparse.Namespace) -> int:
    if args.random:
        try:
            n, m, n_updates = (int(p) for p in args.random.split(","))
        except ValueError:
            raise GraphError(f"--random wants 'N,M,UPDATES', got {args.random!r}")
        rng = random.Random(args.seed)
        g = random_graph(rng, n, m)
        ops = []
        probe = g
        for _ in range(n_updates):
            op = random_update(rng, probe)
            if op is None:
                break
            from .graph import apply_weights
            ops.append(op)
            probe = apply_weights(probe, op)
    elif args.g and args.t:
        g = load_graph(_read(args.g))
        ops = load_trace(_read(args.t), g)
    else:
        raise GraphError("bench needs either -g and -t, or --random")

    oracle = static_apasp(g)
    nu_star, m_star = sp_params(g, oracle)
    ts = build_tuple_system(g, oracle)
    rows = []
    cur = g
    for i, op in enumerate(ops, start=1):
        label = cur.labels[op.v]
        cur, stats = decremental_update(ts, cur, op)
        rows.append((i, label, stats))
        print(stats.to_json())
    if args.report_dir:
        from .report import write_report
        write_report(args.report_dir, rows, g.n, nu_star, m_star)
    return 0


if __name__ == "__main__":
    sys.exit(main())
