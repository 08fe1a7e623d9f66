"""File formats: game documents, report documents, DOT export.

Documents are canonical JSON: sorted keys, compact separators, shortest
round-trip float formatting, and a schema_version field. Writing the same
object twice yields identical bytes, and parse(write(x)) == x for every
game and report type.
"""

from __future__ import annotations

import hashlib
import json
from typing import Any, Sequence

import numpy as np

from .anarchy import AnarchyReport, WhatIfResult
from .games import DegreeSequenceGame, LinkBiasGame
from .graphs import Graph
from .simulate import SimulationBatch, batch_statistics
from .solvers import SolveResult

SCHEMA_VERSION = "1"

Game = DegreeSequenceGame | LinkBiasGame


def canonical_json(data: Any) -> str:
    """Deterministic JSON text: sorted keys, no spaces, trailing newline."""
    return json.dumps(data, sort_keys=True, separators=(",", ":"),
                      allow_nan=False) + "\n"


def content_hash(text: str) -> str:
    """Short stable identifier for a canonical document."""
    return hashlib.sha256(text.encode("utf-8")).hexdigest()[:16]


# ---------------------------------------------------------------------------
# game documents

def _require(cond: bool, message: str) -> None:
    if not cond:
        raise ValueError(message)


def _check_envelope(doc: Any) -> dict:
    _require(isinstance(doc, dict), "document must be a JSON object")
    version = doc.get("schema_version")
    _require(version == SCHEMA_VERSION,
             f"unknown schema_version {version!r}; expected {SCHEMA_VERSION!r}")
    return doc


def parse_game(text: str) -> Game:
    """Parse and validate a game document (JSON).

    Degree kind needs "d" (n non-negative integers); link_bias kind needs
    "c" (dense n x n rows with zero diagonal). Optional "labels" must
    list n strings. Errors carry the offending position.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ValueError(f"malformed JSON: {e}") from None
    return game_from_document(doc)


def game_from_document(doc: Any) -> Game:
    doc = _check_envelope(doc)
    kind = doc.get("kind")
    _require(kind in ("degree", "link_bias"),
             f"unknown kind {kind!r}; expected 'degree' or 'link_bias'")
    n = doc.get("n")
    _require(isinstance(n, int) and n >= 0, f"n must be a non-negative integer, got {n!r}")
    labels = doc.get("labels")
    if labels is not None:
        _require(isinstance(labels, list) and len(labels) == n
                 and all(isinstance(x, str) for x in labels),
                 f"labels must be a list of {n} strings")
    if kind == "degree":
        _require("c" not in doc, "degree document must not carry a cost matrix")
        d = doc.get("d")
        _require(isinstance(d, list) and len(d) == n,
                 f"d must be a list of {n} integers")
        for k, v in enumerate(d):
            _require(isinstance(v, int) and v >= 0,
                     f"d[{k}] must be a non-negative integer, got {v!r}")
        return DegreeSequenceGame(tuple(d))
    _require("d" not in doc, "link_bias document must not carry a degree sequence")
    c = doc.get("c")
    _require(isinstance(c, list) and len(c) == n, f"c must be a list of {n} rows")
    for i, row in enumerate(c):
        _require(isinstance(row, list) and len(row) == n,
                 f"c[{i}] must be a list of {n} numbers")
        for j, v in enumerate(row):
            _require(isinstance(v, (int, float)) and not isinstance(v, bool),
                     f"c[{i}][{j}] must be a number, got {v!r}")
            if i == j:
                _require(v == 0, f"c[{i}][{j}] must be 0 (zero diagonal), got {v!r}")
    return LinkBiasGame(np.array(c, dtype=float))


def game_labels(text: str) -> list[str] | None:
    """Optional node labels of a game document (display only)."""
    doc = json.loads(text)
    labels = doc.get("labels") if isinstance(doc, dict) else None
    return list(labels) if labels is not None else None


def game_document(game: Game, labels: Sequence[str] | None = None) -> dict:
    doc: dict[str, Any] = {"schema_version": SCHEMA_VERSION, "n": game.n}
    if labels is not None:
        doc["labels"] = list(labels)
    if isinstance(game, DegreeSequenceGame):
        doc["kind"] = "degree"
        doc["d"] = list(game.d)
    else:
        doc["kind"] = "link_bias"
        doc["c"] = [[_plain_number(v) for v in row] for row in game.c]
    return doc


def write_game(game: Game, labels: Sequence[str] | None = None) -> str:
    return canonical_json(game_document(game, labels))


def parse_cost_csv(text: str) -> LinkBiasGame:
    """Cost matrix from CSV: one row per line, comma separated, zero diagonal."""
    rows = []
    for lineno, line in enumerate(text.strip().splitlines(), start=1):
        if not line.strip():
            continue
        try:
            rows.append([float(cell) for cell in line.split(",")])
        except ValueError:
            raise ValueError(f"line {lineno}: cells must be numbers") from None
    _require(len(rows) > 0, "empty cost matrix")
    n = len(rows)
    for i, row in enumerate(rows):
        _require(len(row) == n, f"line {i + 1}: expected {n} cells, got {len(row)}")
        _require(row[i] == 0, f"line {i + 1}: diagonal entry must be 0, got {row[i]}")
    return LinkBiasGame(np.array(rows))


def _plain_number(v: float) -> int | float:
    f = float(v)
    return int(f) if f.is_integer() else f


# ---------------------------------------------------------------------------
# graph documents

def graph_document(g: Graph) -> dict:
    return {"n": g.n, "edges": [[i, j] for i, j in g.edges()]}


def graph_from_document(doc: Any) -> Graph:
    _require(isinstance(doc, dict), "graph document must be a JSON object")
    n = doc.get("n")
    _require(isinstance(n, int) and n >= 0, f"n must be a non-negative integer, got {n!r}")
    edges = doc.get("edges")
    _require(isinstance(edges, list), "edges must be a list of pairs")
    pairs = []
    for k, e in enumerate(edges):
        _require(isinstance(e, list) and len(e) == 2
                 and all(isinstance(v, int) for v in e),
                 f"edges[{k}] must be a pair of integers")
        pairs.append((e[0], e[1]))
    return Graph.from_edges(n, pairs)


# ---------------------------------------------------------------------------
# report documents

def anarchy_document(r: AnarchyReport) -> dict:
    return {
        "worst_stable_value": _plain_number(r.worst_stable_value),
        "best_value": _plain_number(r.best_value),
        "poa_difference": _plain_number(r.poa_difference),
        "poa_ratio": None if r.poa_ratio is None else float(r.poa_ratio),
        "orientation": r.orientation,
    }


def _anarchy_from_doc(doc: dict) -> AnarchyReport:
    ratio = doc["poa_ratio"]
    return AnarchyReport(
        float(doc["worst_stable_value"]), float(doc["best_value"]),
        float(doc["poa_difference"]),
        None if ratio is None else float(ratio), doc["orientation"],
    )


def whatif_document(r: WhatIfResult) -> dict:
    return {
        "removed": r.removed,
        "report_before": anarchy_document(r.report_before),
        "report_after": anarchy_document(r.report_after),
        "delta_poa_ratio": None if r.delta_poa_ratio is None
        else float(r.delta_poa_ratio),
        "communal_utility_change": _plain_number(r.communal_utility_change),
        "degree": r.degree,
        "eig_centrality": float(r.eig_centrality),
    }


def _whatif_from_doc(doc: dict) -> WhatIfResult:
    delta = doc["delta_poa_ratio"]
    return WhatIfResult(
        removed=int(doc["removed"]),
        report_before=_anarchy_from_doc(doc["report_before"]),
        report_after=_anarchy_from_doc(doc["report_after"]),
        delta_poa_ratio=None if delta is None else float(delta),
        communal_utility_change=float(doc["communal_utility_change"]),
        degree=int(doc["degree"]),
        eig_centrality=float(doc["eig_centrality"]),
    )


def report_document(result) -> dict:
    """Typed JSON document for any report object."""
    if isinstance(result, SolveResult):
        doc = {
            "type": "solve_result",
            "graph": graph_document(result.graph),
            "objective": _plain_number(result.objective),
            "optimal": result.optimal,
            "nodes_explored": result.nodes_explored,
            "deficits": None if result.deficits is None else list(result.deficits),
        }
    elif isinstance(result, AnarchyReport):
        doc = {"type": "anarchy_report", **anarchy_document(result)}
    elif isinstance(result, WhatIfResult):
        doc = {"type": "whatif_result", **whatif_document(result)}
    elif isinstance(result, SimulationBatch):
        doc = {
            "type": "simulation_batch",
            "d": list(result.d),
            "runs": result.runs,
            "master_seed": result.master_seed,
            "degree_sequences": [list(s) for s in result.degree_sequences],
            "poa_values": list(result.poa_values),
            "statistics": batch_statistics(result).as_dict(),
        }
    else:
        raise TypeError(f"cannot serialize {type(result).__name__}")
    doc["schema_version"] = SCHEMA_VERSION
    return doc


def write_report(result) -> str:
    return canonical_json(report_document(result))


def write_whatif_table(rows: Sequence[WhatIfResult], pareto: set[int]) -> str:
    doc = {
        "schema_version": SCHEMA_VERSION,
        "type": "whatif_table",
        "rows": [whatif_document(r) for r in rows],
        "pareto": sorted(pareto),
    }
    return canonical_json(doc)


def parse_report(text: str):
    """Inverse of write_report for every report type."""
    doc = _check_envelope(json.loads(text))
    kind = doc.get("type")
    if kind == "solve_result":
        return SolveResult(
            graph=graph_from_document(doc["graph"]),
            objective=float(doc["objective"]),
            optimal=bool(doc["optimal"]),
            nodes_explored=int(doc["nodes_explored"]),
            deficits=None if doc["deficits"] is None else tuple(doc["deficits"]),
        )
    if kind == "anarchy_report":
        return _anarchy_from_doc(doc)
    if kind == "whatif_result":
        return _whatif_from_doc(doc)
    if kind == "whatif_table":
        return [_whatif_from_doc(r) for r in doc["rows"]]
    if kind == "simulation_batch":
        return SimulationBatch(
            d=tuple(doc["d"]),
            runs=int(doc["runs"]),
            master_seed=int(doc["master_seed"]),
            degree_sequences=tuple(tuple(s) for s in doc["degree_sequences"]),
            poa_values=tuple(doc["poa_values"]),
        )
    raise ValueError(f"unknown report type {kind!r}")


# ---------------------------------------------------------------------------
# DOT export

def export_dot(g: Graph, highlight: set[int] | None = None) -> str:
    """Undirected DOT text with deterministic node and edge order."""
    highlight = highlight or set()
    lines = ["graph netgame {", "  node [shape=circle];"]
    for v in range(g.n):
        if v in highlight:
            lines.append(f"  {v} [style=filled, fillcolor=gold];")
        else:
            lines.append(f"  {v};")
    for i, j in g.edges():
        lines.append(f"  {i} -- {j};")
    lines.append("}")
    return "\n".join(lines) + "\n"
