"""Decentralized link-formation process and batch experiments.

One simulation run starts from the empty graph and repeatedly picks a
uniformly random potential link (absent, both endpoints under target)
until none is left. The final graph never overshoots any target and is
always pairwise stable for the degree game. Batches derive one PCG64
stream per run from a master seed, so results are reproducible
bit-for-bit across platforms.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .graphs import DegreeSequence, Graph, as_degree_sequence, l1_distance
from .solvers import best_graph_degree

QUANTILE_NAMES = ("min", "p10", "p25", "median", "p75", "p90", "p95", "max")
_QUANTILE_LEVELS = (0, 10, 25, 50, 75, 90, 95, 100)


class PotentialLinkState:
    """Graph under construction plus the matrix of still-formable links.

    P[i][j] = 1 exactly when the link is absent and both endpoints are
    strictly under target. Rows of zero-target players are cleared at
    initialization; the update rule keeps the invariant from then on.
    """

    def __init__(self, d: DegreeSequence) -> None:
        self.d = as_degree_sequence(d)
        n = len(self.d)
        self.n = n
        self.adj = np.zeros((n, n), dtype=np.int8)
        self.deg = np.zeros(n, dtype=np.int64)
        p = np.ones((n, n), dtype=np.int8)
        np.fill_diagonal(p, 0)
        for v in range(n):
            if self.d[v] == 0:
                p[v, :] = 0
                p[:, v] = 0
        self.p = p

    def potential_pairs(self) -> np.ndarray:
        """(k, 2) array of potential links with i < j, row-major order."""
        ii, jj = np.nonzero(np.triu(self.p, k=1))
        return np.column_stack((ii, jj))

    def add_link(self, i: int, j: int) -> None:
        if not self.p[i, j]:
            raise ValueError(f"({i}, {j}) is not a potential link")
        self.adj[i, j] = self.adj[j, i] = 1
        self.deg[i] += 1
        self.deg[j] += 1
        self.p[i, j] = self.p[j, i] = 0
        for v in (i, j):
            if self.deg[v] >= self.d[v]:
                self.p[v, :] = 0
                self.p[:, v] = 0

    def done(self) -> bool:
        return not self.p.any()

    def graph(self) -> Graph:
        return Graph(self.adj.copy())


def simulate_once(d, seed: int) -> Graph:
    """Run the formation process once with a fixed PCG64 seed.

    Each step selects uniformly from the current potential-link set, so a
    pair can never be drawn twice.
    """
    state = PotentialLinkState(d)
    rng = np.random.Generator(np.random.PCG64(seed))
    while True:
        pairs = state.potential_pairs()
        if len(pairs) == 0:
            break
        i, j = pairs[int(rng.integers(len(pairs)))]
        state.add_link(int(i), int(j))
    return state.graph()


@dataclass(frozen=True)
class SimulationBatch:
    """Per-run outcomes of repeated formation runs under one master seed.

    ``poa_values[r]`` is the realized total deviation of run r minus the
    best achievable objective for d (the empirical price of anarchy in
    difference form).
    """

    d: DegreeSequence
    runs: int
    master_seed: int
    degree_sequences: tuple[DegreeSequence, ...]
    poa_values: tuple[int, ...]


def run_seed(master_seed: int, run_index: int) -> int:
    """64-bit stream seed for one run, split off the master seed."""
    ss = np.random.SeedSequence(entropy=master_seed, spawn_key=(run_index,))
    return int(ss.generate_state(1, dtype=np.uint64)[0])


def simulate_batch(d, runs: int, master_seed: int) -> SimulationBatch:
    """Simulate the formation game ``runs`` times and collect outcomes."""
    d = as_degree_sequence(d)
    if runs < 1:
        raise ValueError("runs must be >= 1")
    best = int(best_graph_degree(d).objective)
    seqs = []
    poas = []
    for r in range(runs):
        g = simulate_once(d, run_seed(master_seed, r))
        eta = tuple(int(x) for x in g.adj.sum(axis=1))
        seqs.append(eta)
        poas.append(l1_distance(eta, d) - best)
    return SimulationBatch(d, runs, int(master_seed), tuple(seqs), tuple(poas))


@dataclass(frozen=True)
class BatchStatistics:
    """The three aggregate tables of a batch, plus CSV renderings.

    Quantiles are order statistics (lower interpolation), so every value
    in the tables is one actually observed in some run.
    """

    degree_rows: tuple[dict, ...]
    poa_histogram: tuple[tuple[int, int], ...]
    deficit_rows: tuple[dict, ...]

    def degree_table_csv(self) -> str:
        return _rows_to_csv("degree", self.degree_rows)

    def deficit_table_csv(self) -> str:
        return _rows_to_csv("target", self.deficit_rows)

    def poa_histogram_csv(self) -> str:
        lines = ["poa,count"]
        lines += [f"{v},{c}" for v, c in self.poa_histogram]
        return "\n".join(lines) + "\n"

    def as_dict(self) -> dict:
        return {
            "degree_distribution": [dict(r) for r in self.degree_rows],
            "poa_histogram": [{"poa": v, "count": c}
                              for v, c in self.poa_histogram],
            "deficit_by_target": [dict(r) for r in self.deficit_rows],
        }


def _rows_to_csv(key: str, rows) -> str:
    header = [key, *QUANTILE_NAMES]
    lines = [",".join(header)]
    for row in rows:
        lines.append(",".join(str(row[h]) for h in header))
    return "\n".join(lines) + "\n"


def _quantile_row(values: np.ndarray) -> dict:
    qs = np.percentile(values, _QUANTILE_LEVELS, method="lower")
    return {name: int(q) for name, q in zip(QUANTILE_NAMES, qs)}


def batch_statistics(batch: SimulationBatch) -> BatchStatistics:
    """Aggregate a batch into the degree, price-of-anarchy, and deficit tables."""
    if batch.runs < 1 or not batch.degree_sequences:
        raise ValueError("cannot aggregate an empty batch")
    seqs = np.array(batch.degree_sequences, dtype=np.int64)
    d = np.array(batch.d, dtype=np.int64)

    degree_rows = []
    for k in range(0, (int(d.max()) if len(d) else 0) + 1):
        counts = (seqs == k).sum(axis=1)
        degree_rows.append({"degree": k, **_quantile_row(counts)})

    hist: dict[int, int] = {}
    for v in batch.poa_values:
        hist[v] = hist.get(v, 0) + 1
    poa_histogram = tuple(sorted(hist.items()))

    deficit_rows = []
    for t in sorted(set(batch.d)):
        members = d == t
        contribs = ((d - seqs)[:, members]).sum(axis=1)
        deficit_rows.append({"target": t, **_quantile_row(contribs)})

    return BatchStatistics(tuple(degree_rows), poa_histogram,
                           tuple(deficit_rows))
