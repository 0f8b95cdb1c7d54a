"""Command-line entry point: ``lbtree {check,solve,oracle,validate,gen}``.

Exit codes
  check     0 all hypotheses hold, 1 some fail, 2 unreadable input, 3 instance too large
  solve     0 Solved, 1 any other status, 2 unreadable input, 4 disconnected graph
  oracle    0 a tree of score <= 5 exists, 1 none, 2 unreadable input, 3 tree-count cap, 4 disconnected
  validate  0 no CRITICAL record and no cap hit, 1 otherwise, 2 bad config
  gen       0 written, 2 bad parameters or retry budget exhausted
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from pathlib import Path

from . import __version__
from .campaign import ConfigError, dumps_report, load_config, report_ok, run_campaign
from .families import Family, FamilyError, FamilySpec, generate
from .graph import GraphError, format_edge_list, is_connected, parse_edge_list, read_edge_list
from .oracle import TreeCountCapExceeded, min_score
from .search import SolverConfig, potential_of, solve
from .structure import InstanceTooLarge, check_hypotheses
from .tree import tree_to_dot

EXIT_OK, EXIT_FAIL, EXIT_PARSE, EXIT_SIZE, EXIT_DISCONNECTED = 0, 1, 2, 3, 4

_GEN_FAMILIES = {
    "sharpness": Family.SHARPNESS,
    "random": Family.RANDOM_REJECTION,
    "line": Family.LINE_GRAPH,
    "chain": Family.CLIQUE_CHAIN,
    "classic": Family.CLASSIC,
}


class _Fail(Exception):
    def __init__(self, code: int, message: str):
        super().__init__(message)
        self.code = code


def _emit(obj, out=None) -> None:
    text = json.dumps(obj, sort_keys=True, indent=2) + "\n"
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _load(path):
    try:
        if path is None or path == "-":
            path = "<stdin>"
            return parse_edge_list(sys.stdin.read())
        return read_edge_list(path)
    except (OSError, UnicodeDecodeError, GraphError) as exc:
        raise _Fail(EXIT_PARSE, f"{path}: {exc}") from exc


def cmd_check(args) -> int:
    G = _load(args.input)
    try:
        report = check_hypotheses(G, limit=args.max_n)
    except InstanceTooLarge as exc:
        raise _Fail(EXIT_SIZE, str(exc)) from exc
    _emit({"n": G.n, "m_edges": G.m, **report.to_dict(), "all_ok": report.all_ok}, args.output)
    return EXIT_OK if report.all_ok else EXIT_FAIL


def cmd_solve(args) -> int:
    G = _load(args.input)
    if G.n == 0 or not is_connected(G):
        raise _Fail(EXIT_DISCONNECTED, "input graph is disconnected")
    cfg = SolverConfig(max_swap_size=args.max_swap, max_iterations=args.max_iters, seed=args.seed,
                       use_targeted_moves=not args.no_targeted, record_trace=args.trace is not None)
    result = solve(G, cfg)
    T = result.tree
    leaves = sorted(v for v in T.vertices if T.degree(v) == 1) if len(T) > 1 else []
    branches = sorted(v for v in T.vertices if T.degree(v) >= 3)
    _emit({
        "status": result.status.value,
        "score": result.score,
        "iterations": result.iterations,
        "potential": list(potential_of(G, T)),
        "spanning": T.is_spanning(),
        "leaves": leaves,
        "branches": branches,
        "tree": [list(e) for e in T.sorted_edges()],
    }, args.output)
    if args.dot:
        Path(args.dot).write_text(tree_to_dot(T), encoding="utf-8")
    if args.trace:
        Path(args.trace).write_text(result.trace_text(), encoding="utf-8")
    return EXIT_OK if result.status.value == "Solved" else EXIT_FAIL


def cmd_oracle(args) -> int:
    G = _load(args.input)
    if G.n == 0 or not is_connected(G):
        raise _Fail(EXIT_DISCONNECTED, "input graph is disconnected")
    try:
        res = min_score(G, target=args.target, cap=args.cap)
    except TreeCountCapExceeded as exc:
        raise _Fail(EXIT_SIZE, str(exc)) from exc
    _emit(res.to_dict(), args.output)
    if args.dot:
        Path(args.dot).write_text(tree_to_dot(res.witness), encoding="utf-8")
    return EXIT_OK if res.feasible_le5 else EXIT_FAIL


def cmd_validate(args) -> int:
    try:
        cfg = load_config(args.config)
    except (OSError, ConfigError) as exc:
        raise _Fail(EXIT_PARSE, str(exc)) from exc
    if args.oracle_cutoff is not None:
        cfg = type(cfg)(cfg.specs, args.oracle_cutoff, cfg.solver)
    report = run_campaign(cfg, workers=args.workers, timing=not args.no_timing)
    text = dumps_report(report)
    if args.output:
        Path(args.output).write_text(text, encoding="utf-8")
    agg = report["aggregate"]
    summary = " ".join(f"{k}={agg[k]}" for k in ("instances", "solved", "stuck", "cap_hit", "hypothesis_failed",
                                                  "errors", "oracle_runs", "oracle_agreements", "critical"))
    print(summary, file=sys.stderr if not args.output else sys.stdout)
    if not args.output:
        sys.stdout.write(text)
    return EXIT_OK if report_ok(report) else EXIT_FAIL


def cmd_gen(args) -> int:
    fam = _GEN_FAMILIES[args.family]
    names = {
        Family.SHARPNESS: ("m",),
        Family.RANDOM_REJECTION: ("n", "p_num", "p_den", "tries"),
        Family.LINE_GRAPH: ("base_n", "p_num", "p_den", "tries"),
        Family.CLIQUE_CHAIN: ("cliques", "lo", "hi", "hub", "extra", "tries"),
        Family.CLASSIC: ("kind", "n", "n2"),
    }[fam]
    params = {k: getattr(args, k) for k in names if getattr(args, k) is not None}
    try:
        G = generate(FamilySpec(fam, params, args.seed))
    except FamilyError as exc:
        raise _Fail(EXIT_PARSE, str(exc)) from exc
    text = format_edge_list(G)
    if args.output:
        Path(args.output).write_text(text, encoding="ascii")
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lbtree", description="Spanning trees with few leaves and branch vertices.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    parser.add_argument("-v", "--verbose", action="store_true", help="debug logging on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def with_io(p, needs_input=True):
        if needs_input:
            p.add_argument("--input", "-i", help="edge-list file; stdin when omitted or '-'")
        p.add_argument("--output", "-o", help="write the result here instead of stdout")
        return p

    p = with_io(sub.add_parser("check", help="test connectivity, K_{1,5}-freeness and sigma_4 >= n-1"))
    p.add_argument("--max-n", type=int, default=None, help="refuse instances larger than this (default 64)")
    p.set_defaults(func=cmd_check)

    p = with_io(sub.add_parser("solve", help="run the exchange local search"))
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--max-swap", type=int, default=4, choices=range(1, 5))
    p.add_argument("--max-iters", type=int, default=None)
    p.add_argument("--no-targeted", action="store_true", help="use only the generic k-swap scan")
    p.add_argument("--dot", help="write the tree as DOT to this file")
    p.add_argument("--trace", help="write the move trace to this file")
    p.set_defaults(func=cmd_solve)

    p = with_io(sub.add_parser("oracle", help="exact minimum score by spanning-tree enumeration"))
    p.add_argument("--target", type=int, default=None, help="stop at the first tree with score <= target")
    p.add_argument("--cap", type=int, default=10**7, help="tree-count cap")
    p.add_argument("--dot", help="write the witness tree as DOT to this file")
    p.set_defaults(func=cmd_oracle)

    p = with_io(sub.add_parser("validate", help="run a campaign from a JSON config"), needs_input=False)
    p.add_argument("config", nargs="?", help="campaign config (JSON)")
    p.add_argument("--input", "-i", dest="config_flag", help="campaign config (alternative to the positional)")
    p.add_argument("--oracle-cutoff", type=int, default=None, help="override the config's oracle size cutoff")
    p.add_argument("--no-timing", action="store_true", help="omit wall times so reports diff cleanly")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_validate)

    p = with_io(sub.add_parser("gen", help="write an instance as an edge list"), needs_input=False)
    p.add_argument("family", choices=sorted(_GEN_FAMILIES))
    p.add_argument("--seed", type=int, default=0)
    for name in ("m", "n", "n2", "p_num", "p_den", "base_n", "cliques", "lo", "hi", "hub", "extra", "tries"):
        p.add_argument("--" + name.replace("_", "-"), dest=name, type=int, default=None)
    p.add_argument("--kind", default=None, help="classic kind: path, cycle, complete, complete_bipartite, star")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    logging.basicConfig(level=logging.DEBUG if args.verbose else logging.WARNING, format="%(levelname)s %(message)s")
    if args.command == "validate":
        args.config = args.config or args.config_flag
        if not args.config:
            print("lbtree validate: a config file is required", file=sys.stderr)
            return EXIT_PARSE
    try:
        return args.func(args)
    except _Fail as exc:
        print(f"lbtree {args.command}: {exc}", file=sys.stderr)
        return exc.code
    except ValueError as exc:
        print(f"lbtree {args.command}: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":  # pragma: no cover
    sys.exit(main())
