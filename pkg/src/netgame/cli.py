"""Command-line front door.

Subcommands reproduce every analysis from files: solve, anarchy, whatif,
simulate, construct-costs, export, and serve. Results go to stdout (or
--out) as canonical JSON, diagnostics to stderr. Exit codes: 0 success,
1 usage error, 2 computation or file error.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import io_formats
from .anarchy import anarchy_report_degree, anarchy_report_link_bias, \
    pareto_targets, summary_table, whatif_remove
from .games import DegreeSequenceGame, LinkBiasGame
from .simulate import simulate_batch
from .solvers import DEFAULT_NODE_BUDGET, best_graph_degree, best_graph_link_bias, \
    construct_cost_matrix, stable_graph_link_bias, worst_stable_degree

DEFAULT_PORT = 8000


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise _UsageError(message)


def build_parser() -> _Parser:
    parser = _Parser(prog="netgame", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    solve = sub.add_parser("solve", help="worst-stable or best graph for a game")
    solve.add_argument("--game", required=True, help="game document (JSON or CSV cost matrix)")
    solve.add_argument("--target", required=True, choices=["worst-stable", "best"])
    solve.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    solve.add_argument("--out", help="output file (default stdout)")

    anarchy = sub.add_parser("anarchy", help="price-of-anarchy report for a game")
    anarchy.add_argument("--game", required=True)
    anarchy.add_argument("--node-budget", type=int, default=DEFAULT_NODE_BUDGET)
    anarchy.add_argument("--out")

    whatif = sub.add_parser("whatif", help="vertex-removal what-if analysis")
    whatif.add_argument("--game", required=True)
    group = whatif.add_mutually_exclusive_group(required=True)
    group.add_argument("--remove", type=int, help="vertex index (0-based)")
    group.add_argument("--all", action="store_true",
                       help="full summary table plus Pareto target set")
    whatif.add_argument("--out")

    simulate = sub.add_parser("simulate", help="batch link-formation simulation")
    simulate.add_argument("--game", required=True, help="degree game document")
    simulate.add_argument("--runs", type=int, required=True)
    simulate.add_argument("--seed", type=int, required=True)
    simulate.add_argument("--out")

    costs = sub.add_parser("construct-costs",
                           help="cost matrix whose stable graph is closest to the targets")
    costs.add_argument("--degrees", required=True, help="degree game document")
    costs.add_argument("--out")

    export = sub.add_parser("export", help="graph or solve result to DOT")
    export.add_argument("--graph", required=True,
                        help="graph document or solve_result document")
    export.add_argument("--dot", help="output DOT file (default stdout)")

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--port", type=int,
                       default=int(os.environ.get("NETGAME_PORT", DEFAULT_PORT)))
    serve.add_argument("--host", default="127.0.0.1")
    return parser


def _load_game(path: str):
    text = Path(path).read_text()
    if path.endswith(".csv"):
        return io_formats.parse_cost_csv(text)
    return io_formats.parse_game(text)


def _run_solve(args) -> str:
    game = _load_game(args.game)
    if isinstance(game, DegreeSequenceGame):
        if args.target == "worst-stable":
            result = worst_stable_degree(game.d, args.node_budget)
        else:
            result = best_graph_degree(game.d, args.node_budget)
    else:
        result = (stable_graph_link_bias(game) if args.target == "worst-stable"
                  else best_graph_link_bias(game))
    return io_formats.write_report(result)


def _run_anarchy(args) -> str:
    game = _load_game(args.game)
    if isinstance(game, DegreeSequenceGame):
        report = anarchy_report_degree(game.d, args.node_budget)
    else:
        report = anarchy_report_link_bias(game)
    return io_formats.write_report(report)


def _run_whatif(args) -> str:
    game = _load_game(args.game)
    if not isinstance(game, LinkBiasGame):
        raise ValueError("what-if analysis requires a link_bias game")
    if args.all:
        rows = summary_table(game)
        return io_formats.write_whatif_table(rows, pareto_targets(rows))
    return io_formats.write_report(whatif_remove(game, args.remove))


def _run_simulate(args) -> str:
    game = _load_game(args.game)
    if not isinstance(game, DegreeSequenceGame):
        raise ValueError("simulation requires a degree game")
    batch = simulate_batch(game.d, args.runs, args.seed)
    return io_formats.write_report(batch)


def _run_construct_costs(args) -> str:
    game = _load_game(args.degrees)
    if not isinstance(game, DegreeSequenceGame):
        raise ValueError("construct-costs requires a degree game")
    _, _, bias = construct_cost_matrix(game.d)
    return io_formats.write_game(bias)


def _run_export(args) -> str:
    import json
    doc = json.loads(Path(args.graph).read_text())
    if isinstance(doc, dict) and doc.get("type") == "solve_result":
        graph = io_formats.graph_from_document(doc["graph"])
    else:
        graph = io_formats.graph_from_document(doc)
    return io_formats.export_dot(graph)


def _run_serve(args) -> None:
    import uvicorn

    from .service import create_app
    uvicorn.run(create_app(), host=args.host, port=args.port, log_level="info")


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except _UsageError as e:
        print(f"usage error: {e}", file=sys.stderr)
        return 1
    try:
        if args.command == "serve":
            _run_serve(args)
            return 0
        handler = {
            "solve": _run_solve,
            "anarchy": _run_anarchy,
            "whatif": _run_whatif,
            "simulate": _run_simulate,
            "construct-costs": _run_construct_costs,
            "export": _run_export,
        }[args.command]
        text = handler(args)
    except (ValueError, IndexError, OSError, KeyError) as e:
        print(f"error: {e}", file=sys.stderr)
        return 2
    out_path = getattr(args, "dot", None) or getattr(args, "out", None)
    if out_path:
        Path(out_path).write_text(text)
    else:
        sys.stdout.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
