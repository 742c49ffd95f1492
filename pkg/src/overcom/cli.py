"""Command line front end.

Subcommands: detect (run one expansion algorithm), eval (score covers),
sweep (theta-grid comparison), gen (planted benchmark instances).

Exit codes: 0 on success, 2 for input or parameter problems, 3 when a
numerical routine fails to converge.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

import numpy as np

from .bench import ALGORITHMS, PlantedParams, SweepReport, default_grid, \
    planted_overlap_graph, run_algorithm, sweep
from .graph import Cover, GraphFormatError, load_cover, load_edge_list, \
    write_cover, write_edge_list
from .metrics import onmi, overlap_modularity_avg, overlap_modularity_q0, \
    theta_modularity
from .overlap import OverlapParams
from .partition import ClusteringConfig, louvain, spectral_partition
from .walks import ConvergenceError, stationary_distribution


def _read_graph(args) -> "object":
    src = sys.stdin if args.graph == "-" else args.graph
    return load_edge_list(src, directed=args.directed, one_indexed=args.one_indexed)


def _write_text(path: str, text: str, label: str):
    if path == "-":
        sys.stdout.write(text)
    else:
        Path(path).write_text(text)
        print(f"{label}: {path}", file=sys.stderr)


def _step1(graph, algo: str, seed: int, k: int | None):
    config = ClusteringConfig(seed=seed)
    if ALGORITHMS[algo].step1 == "spectral":
        kk = k if k is not None else louvain(graph, config).k
        return spectral_partition(graph, kk, config)
    return louvain(graph, config)


def _cmd_detect(args) -> int:
    spec = ALGORITHMS[args.algo]
    graph = _read_graph(args)
    if graph.directed and spec.undirected_only:
        raise ValueError(f"{args.algo} needs an undirected graph")
    if args.teleport and not spec.needs_phi:
        raise ValueError("--teleport only applies to di-paramet-sd")
    partition = _step1(graph, args.algo, args.seed, args.k)
    phi = None
    if spec.needs_phi:
        phi = stationary_distribution(graph, teleport=args.teleport)
    params = OverlapParams(theta=args.theta, t=args.t, k=args.k)
    result = run_algorithm(args.algo, graph, partition, params, phi=phi,
                           record_decisions=args.decisions is not None)
    out = args.output
    if out is None:
        # append rather than swap the suffix: keeps the directory and cannot
        # collide with a gen truth file (PREFIX.cover)
        out = "-" if args.graph == "-" else args.graph + ".cover"
    cover_text = write_cover(result.cover)
    if graph.directed:
        quality = theta_modularity(graph, result.cover, 1.0, "directed-d")
        quality_name = "theta_modularity_directed_d(theta=1)"
    else:
        quality = overlap_modularity_avg(graph, result.cover)
        quality_name = "overlap_modularity_avg"
    summary = json.dumps({
        "algorithm": args.algo, "theta": args.theta, "n": graph.n, "m": graph.m,
        "communities": result.cover.k,
        "overlapping_vertices": result.cover.overlap_count(),
        "passes": result.passes, "metric": quality_name,
        "modularity": quality,
    })
    if out == "-":
        sys.stdout.write(cover_text)
        print(summary, file=sys.stderr)
    else:
        Path(out).write_text(cover_text)
        print(summary)
    if args.decisions is not None:
        rows = [{"vertex": d.vertex, "community": d.community, "lhs": d.lhs,
                 "rhs": d.rhs, "accepted": d.accepted, "pass": d.pass_index}
                for d in result.decisions]
        _write_text(args.decisions, json.dumps(rows, indent=2) + "\n", "decisions")
    return 0


def _cmd_eval(args) -> int:
    graph = None
    if args.graph is not None:
        graph = _read_graph(args)
    cover = load_cover(args.cover, n=graph.n if graph else None)
    rows = []
    if args.against is not None:
        ref = load_cover(args.against, n=graph.n if graph else None)
        n = max(cover.n, ref.n)
        a = Cover.from_sets(n, cover.communities)
        b = Cover.from_sets(n, ref.communities)
        rows.append({"metric": "onmi", "value": onmi(a, b),
                     "params": {"against": args.against}})
    if graph is not None:
        if graph.directed:
            rows.append({"metric": "theta_modularity",
                         "value": theta_modularity(graph, cover, args.theta, "directed-d"),
                         "params": {"theta": args.theta, "variant": "directed-d"}})
        else:
            rows.append({"metric": "overlap_modularity_avg",
                         "value": overlap_modularity_avg(graph, cover), "params": {}})
            rows.append({"metric": "overlap_modularity_q0",
                         "value": overlap_modularity_q0(graph, cover), "params": {}})
            rows.append({"metric": "theta_modularity",
                         "value": theta_modularity(graph, cover, args.theta, "undirected"),
                         "params": {"theta": args.theta, "variant": "undirected"}})
    if not rows:
        raise ValueError("nothing to evaluate: pass --against and/or --graph")
    for row in rows:
        print(json.dumps(row))
    return 0


def _cmd_sweep(args) -> int:
    graph = _read_graph(args)
    truth = load_cover(args.truth, n=graph.n) if args.truth else None
    report = sweep(graph, algorithms=args.algo or None, truth=truth,
                   seed=args.seed, t=args.t, k=args.k)
    text = report.to_json() if args.format == "json" else report.to_csv()
    _write_text(args.output, text, "report")
    if args.plot_data is not None:
        _write_text(args.plot_data, json.dumps(report.series(), indent=2) + "\n",
                    "series")
    return 0


def _cmd_gen(args) -> int:
    params = PlantedParams(n=args.n, k=args.k, on=args.on, om=args.om,
                           p_in=args.p_in, p_out=args.p_out,
                           directed=args.directed)
    graph, cover = planted_overlap_graph(params, seed=args.seed)
    edges_file = args.prefix + ".edges"
    cover_file = args.prefix + ".cover"
    Path(edges_file).write_text(write_edge_list(graph))
    Path(cover_file).write_text(write_cover(cover))
    print(json.dumps({"n": graph.n, "m": graph.m, "communities": cover.k,
                      "overlapping_vertices": cover.overlap_count(),
                      "edges_file": edges_file, "cover_file": cover_file}))
    return 0


def _add_graph_args(p):
    p.add_argument("graph", help="edge list path, or - for stdin")
    p.add_argument("--directed", action="store_true",
                   help="read the input as a digraph (first token is the arc source)")
    p.add_argument("--one-indexed", action="store_true",
                   help="vertex ids in the file start at 1")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="overcom",
        description="Overlapping community detection by two-step cluster expansion")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("detect", help="partition, expand, and write a cover")
    _add_graph_args(p)
    p.add_argument("--algo", required=True, choices=sorted(ALGORITHMS))
    p.add_argument("--theta", required=True, type=float,
                   help="admission threshold (null scale or cosine/fraction bound)")
    p.add_argument("--t", type=int, default=4, help="walk length for the cosine rule")
    p.add_argument("--k", type=int, default=None,
                   help="embedding order / cluster count for spectral step 1")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--teleport", type=float, default=0.0,
                   help="uniform-jump weight for the stationary walk (di-paramet-sd only)")
    p.add_argument("-o", "--output", default=None,
                   help="cover destination (default <graph>.cover, - for stdout)")
    p.add_argument("--decisions", default=None,
                   help="write every admission test as JSON to this path")
    p.set_defaults(func=_cmd_detect)

    p = sub.add_parser("eval", help="score a cover (ONMI and/or modularity)")
    p.add_argument("cover", help="cover file to score")
    p.add_argument("--against", default=None, help="reference cover for ONMI")
    p.add_argument("--graph", default=None, help="edge list for modularity metrics")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--one-indexed", action="store_true")
    p.add_argument("--theta", type=float, default=1.0)
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("sweep", help="theta-grid comparison across algorithms")
    _add_graph_args(p)
    p.add_argument("--algo", action="append", choices=sorted(ALGORITHMS),
                   help="repeatable; defaults to every compatible algorithm")
    p.add_argument("--truth", default=None, help="reference cover for ONMI columns")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--t", type=int, default=4)
    p.add_argument("--k", type=int, default=None)
    p.add_argument("--format", choices=["csv", "json"], default="csv")
    p.add_argument("-o", "--output", default="-")
    p.add_argument("--plot-data", default=None,
                   help="also write per-theta series JSON to this path")
    p.set_defaults(func=_cmd_sweep)

    p = sub.add_parser("gen", help="write a planted-overlap benchmark instance")
    p.add_argument("prefix", help="output prefix; writes PREFIX.edges and PREFIX.cover")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--on", type=int, required=True)
    p.add_argument("--om", type=int, required=True)
    p.add_argument("--p-in", type=float, required=True, dest="p_in")
    p.add_argument("--p-out", type=float, required=True, dest="p_out")
    p.add_argument("--directed", action="store_true")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=_cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (GraphFormatError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    except (ConvergenceError, RuntimeError, np.linalg.LinAlgError) as exc:
        print(f"numerical failure: {exc}", file=sys.stderr)
        return 3


if __name__ == "__main__":
    sys.exit(main())
