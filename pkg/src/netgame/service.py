"""HTTP/JSON facade over games, solvers, anarchy, and the simulator.

Games are loaded once, identified by content hash, and never mutated; a
what-if removal registers the reduced game as a new entry with a parent
pointer, so exploration chains and undo are just id lookups. Results are
cached per (game, operation) with insert-once semantics, which makes
repeated GETs idempotent and lets concurrent identical requests coalesce.
Long computations run as background jobs polled via /jobs/{id}.
"""

from __future__ import annotations

import os
import threading
import uuid
from typing import Any, Callable

from fastapi import FastAPI, HTTPException
from fastapi.middleware.cors import CORSMiddleware
from pydantic import BaseModel, Field

from . import io_formats
from .anarchy import anarchy_report_degree, anarchy_report_link_bias, \
    pareto_targets, summary_table, whatif_remove
from .games import DegreeSequenceGame
from .simulate import batch_statistics, simulate_batch
from .solvers import best_graph_degree, best_graph_link_bias, \
    stable_graph_link_bias, worst_stable_degree

SCHEMA_VERSION = io_formats.SCHEMA_VERSION

# estimated-seconds threshold above which work becomes a polled job
DEFAULT_SYNC_THRESHOLD = 2.0


class _Entry:
    def __init__(self, game, labels, parent_id=None):
        self.game = game
        self.labels = labels
        self.parent_id = parent_id
        self.cache: dict[str, Any] = {}
        self.lock = threading.Lock()


class GameStore:
    """In-memory session store keyed by game content hash."""

    def __init__(self) -> None:
        self._entries: dict[str, _Entry] = {}
        self._lock = threading.Lock()

    def load(self, game, labels=None, parent_id=None) -> str:
        text = io_formats.write_game(game, labels)
        game_id = io_formats.content_hash(text)
        with self._lock:
            if game_id not in self._entries:
                self._entries[game_id] = _Entry(game, labels, parent_id)
        return game_id

    def get(self, game_id: str) -> _Entry:
        entry = self._entries.get(game_id)
        if entry is None:
            raise HTTPException(404, f"unknown game id {game_id!r}")
        return entry

    def compute(self, game_id: str, op: str, fn: Callable[[], Any]) -> Any:
        entry = self.get(game_id)
        with entry.lock:
            if op not in entry.cache:
                entry.cache[op] = fn()
            return entry.cache[op]


class JobStore:
    """Threaded background jobs with polling."""

    def __init__(self) -> None:
        self._jobs: dict[str, dict] = {}
        self._lock = threading.Lock()

    def submit(self, fn: Callable[[], Any]) -> str:
        job_id = uuid.uuid4().hex[:12]
        with self._lock:
            self._jobs[job_id] = {"status": "running", "result": None, "error": None}

        def work():
            try:
                result = fn()
            except Exception as e:  # surfaced to the poller
                with self._lock:
                    self._jobs[job_id].update(status="error", error=str(e))
            else:
                with self._lock:
                    self._jobs[job_id].update(status="done", result=result)

        threading.Thread(target=work, daemon=True).start()
        return job_id

    def get(self, job_id: str) -> dict:
        with self._lock:
            job = self._jobs.get(job_id)
            if job is None:
                raise HTTPException(404, f"unknown job id {job_id!r}")
            return dict(job)


class LoadResponse(BaseModel):
    schema_version: str
    game_id: str
    kind: str
    n: int


class GameInfo(BaseModel):
    schema_version: str
    game_id: str
    kind: str
    n: int
    labels: list[str] | None
    parent_id: str | None


class GraphBody(BaseModel):
    n: int
    edges: list[list[int]]


class SolveResponse(BaseModel):
    schema_version: str
    game_hash: str
    graph: GraphBody
    communal_value: float
    optimal: bool


class AnarchyBody(BaseModel):
    worst_stable_value: float
    best_value: float
    poa_difference: float
    poa_ratio: float | None
    orientation: str


class AnarchyResponse(BaseModel):
    schema_version: str
    game_hash: str
    report: AnarchyBody


class WhatIfBody(BaseModel):
    removed: int
    report_before: AnarchyBody
    report_after: AnarchyBody
    delta_poa_ratio: float | None
    communal_utility_change: float
    degree: int
    eig_centrality: float


class SummaryResponse(BaseModel):
    schema_version: str
    game_hash: str
    rows: list[WhatIfBody]
    pareto: list[int]


class WhatIfRequest(BaseModel):
    remove: int


class WhatIfResponse(BaseModel):
    schema_version: str
    game_hash: str
    whatif: WhatIfBody
    derived_game_id: str


class UndoResponse(BaseModel):
    schema_version: str
    game_id: str


class SimulateRequest(BaseModel):
    runs: int = Field(ge=1)
    seed: int


class SimulateResponse(BaseModel):
    schema_version: str
    game_hash: str
    runs: int
    master_seed: int
    poa_values: list[int]
    statistics: dict


class JobAccepted(BaseModel):
    schema_version: str
    job_id: str


class JobStatus(BaseModel):
    schema_version: str
    status: str
    result: dict | None = None
    error: str | None = None


def _kind(game) -> str:
    return "degree" if isinstance(game, DegreeSequenceGame) else "link_bias"


def _require_kind(game, kind: str, op: str):
    if _kind(game) != kind:
        raise HTTPException(409, f"{op} requires a {kind} game, got {_kind(game)}")


def _estimate_simulate_seconds(n: int, runs: int) -> float:
    # calibrated on the 100-player power-law batch: ~0.6 s per 100 runs
    return runs * (max(n, 1) / 100.0) ** 2 * 0.006


def create_app(sync_threshold: float | None = None) -> FastAPI:
    """Build the service; state lives inside the returned app."""
    if sync_threshold is None:
        sync_threshold = float(os.environ.get("NETGAME_SYNC_THRESHOLD",
                                              DEFAULT_SYNC_THRESHOLD))
    app = FastAPI(title="netgame", version="0.1.0")
    app.add_middleware(
        CORSMiddleware,
        allow_origins=[os.environ.get("NETGAME_UI_ORIGIN", "*")],
        allow_methods=["*"],
        allow_headers=["*"],
    )
    store = GameStore()
    jobs = JobStore()
    app.state.store = store
    app.state.jobs = jobs

    def solve_response(game_id: str, op: str) -> SolveResponse:
        entry = store.get(game_id)
        game = entry.game

        def run():
            if op == "stable":
                if isinstance(game, DegreeSequenceGame):
                    return worst_stable_degree(game.d)
                return stable_graph_link_bias(game)
            if isinstance(game, DegreeSequenceGame):
                return best_graph_degree(game.d)
            return best_graph_link_bias(game)

        result = store.compute(game_id, op, run)
        value = result.objective
        if isinstance(game, DegreeSequenceGame):
            value = -value  # degree-game objectives are costs
        return SolveResponse(
            schema_version=SCHEMA_VERSION,
            game_hash=game_id,
            graph=GraphBody(**io_formats.graph_document(result.graph)),
            communal_value=value,
            optimal=result.optimal,
        )

    @app.post("/games", response_model=LoadResponse, status_code=201)
    def load_game(document: dict):
        try:
            game = io_formats.game_from_document(document)
        except ValueError as e:
            raise HTTPException(400, str(e))
        labels = document.get("labels")
        game_id = store.load(game, labels)
        return LoadResponse(schema_version=SCHEMA_VERSION, game_id=game_id,
                            kind=_kind(game), n=game.n)

    @app.get("/games/{game_id}", response_model=GameInfo)
    def game_info(game_id: str):
        entry = store.get(game_id)
        return GameInfo(schema_version=SCHEMA_VERSION, game_id=game_id,
                        kind=_kind(entry.game), n=entry.game.n,
                        labels=entry.labels, parent_id=entry.parent_id)

    @app.get("/games/{game_id}/stable", response_model=SolveResponse)
    def stable(game_id: str):
        return solve_response(game_id, "stable")

    @app.get("/games/{game_id}/best", response_model=SolveResponse)
    def best(game_id: str):
        return solve_response(game_id, "best")

    @app.get("/games/{game_id}/anarchy", response_model=AnarchyResponse)
    def anarchy(game_id: str):
        entry = store.get(game_id)
        game = entry.game

        def run():
            if isinstance(game, DegreeSequenceGame):
                return anarchy_report_degree(game.d)
            return anarchy_report_link_bias(game)

        report = store.compute(game_id, "anarchy", run)
        return AnarchyResponse(schema_version=SCHEMA_VERSION, game_hash=game_id,
                               report=AnarchyBody(**io_formats.anarchy_document(report)))

    @app.get("/games/{game_id}/summary", response_model=SummaryResponse)
    def summary(game_id: str):
        entry = store.get(game_id)
        _require_kind(entry.game, "link_bias", "summary")
        rows = store.compute(game_id, "summary",
                             lambda: summary_table(entry.game))
        return SummaryResponse(
            schema_version=SCHEMA_VERSION,
            game_hash=game_id,
            rows=[WhatIfBody(**io_formats.whatif_document(r)) for r in rows],
            pareto=sorted(pareto_targets(rows)),
        )

    @app.post("/games/{game_id}/whatif", response_model=WhatIfResponse)
    def whatif(game_id: str, body: WhatIfRequest):
        entry = store.get(game_id)
        _require_kind(entry.game, "link_bias", "whatif")
        game = entry.game
        if not 0 <= body.remove < game.n:
            raise HTTPException(422, f"vertex {body.remove} out of range for n={game.n}")
        if game.n < 2:
            raise HTTPException(422, "what-if removal needs at least 2 players")
        result = store.compute(game_id, f"whatif:{body.remove}",
                               lambda: whatif_remove(game, body.remove))
        reduced = game.without_player(body.remove)
        labels = entry.labels
        if labels is not None:
            labels = [x for k, x in enumerate(labels) if k != body.remove]
        derived_id = store.load(reduced, labels, parent_id=game_id)
        return WhatIfResponse(
            schema_version=SCHEMA_VERSION,
            game_hash=game_id,
            whatif=WhatIfBody(**io_formats.whatif_document(result)),
            derived_game_id=derived_id,
        )

    @app.post("/games/{game_id}/undo", response_model=UndoResponse)
    def undo(game_id: str):
        entry = store.get(game_id)
        if entry.parent_id is None:
            raise HTTPException(409, "nothing to undo: game has no parent")
        return UndoResponse(schema_version=SCHEMA_VERSION, game_id=entry.parent_id)

    @app.post("/games/{game_id}/simulate",
              response_model=SimulateResponse | JobAccepted)
    def simulate(game_id: str, body: SimulateRequest):
        entry = store.get(game_id)
        _require_kind(entry.game, "degree", "simulate")
        game = entry.game

        def run() -> SimulateResponse:
            batch = store.compute(game_id, f"simulate:{body.runs}:{body.seed}",
                                  lambda: simulate_batch(game.d, body.runs, body.seed))
            return SimulateResponse(
                schema_version=SCHEMA_VERSION,
                game_hash=game_id,
                runs=batch.runs,
                master_seed=batch.master_seed,
                poa_values=list(batch.poa_values),
                statistics=batch_statistics(batch).as_dict(),
            )

        if _estimate_simulate_seconds(game.n, body.runs) > sync_threshold:
            job_id = jobs.submit(lambda: run().model_dump())
            from fastapi.responses import JSONResponse
            return JSONResponse(
                status_code=202,
                content=JobAccepted(schema_version=SCHEMA_VERSION,
                                    job_id=job_id).model_dump(),
            )
        return run()

    @app.get("/jobs/{job_id}", response_model=JobStatus)
    def job_status(job_id: str):
        job = jobs.get(job_id)
        return JobStatus(schema_version=SCHEMA_VERSION, status=job["status"],
                         result=job["result"], error=job["error"])

    return app
