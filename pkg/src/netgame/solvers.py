"""Exact optimization over graphs for both games.

Four problems are solved here: the worst pairwise-stable and the closest
("best") graph for a target degree sequence, and the stable and best
graphs for a link-bias cost matrix. The link-bias problems decompose
edgewise and have closed forms. The degree-game problems combine
combinatorial bounds and explicit witness constructions with a
branch-and-bound over edge variables that closes any remaining gap;
brute-force enumeration oracles (n <= 8) verify all of it.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .games import DegreeSequenceGame, LinkBiasGame, StrategyMatrix, \
    communal_value_link_bias, graph_from_strategies, is_pairwise_stable_degree, \
    is_pairwise_stable_link_bias, strategies_from_costs
from .graphs import DegreeSequence, Graph, as_degree_sequence, degree_sequence, \
    is_graphical, l1_distance, realize_graphical

DEFAULT_NODE_BUDGET = 10_000_000

BRUTE_FORCE_MAX_N = 8
_CHUNK_BITS = 20


@dataclass(frozen=True)
class SolveResult:
    """Outcome of one solve: the graph, its objective, and search stats.

    ``optimal`` is False only when a branch-and-bound ran out of node
    budget; the graph is then the best one found. ``deficits`` is the
    per-player slack d_i - degree_i, populated by the degree-game
    worst-stable solvers.
    """

    graph: Graph
    objective: float
    optimal: bool
    nodes_explored: int
    deficits: tuple[int, ...] | None = None


class _BudgetExhausted(Exception):
    pass


class _Done(Exception):
    pass


def _deficits(g: Graph, d: DegreeSequence) -> tuple[int, ...]:
    return tuple(t - deg for t, deg in zip(d, degree_sequence(g)))


def _pairs(n: int) -> list[tuple[int, int]]:
    return [(i, j) for i in range(n) for j in range(i + 1, n)]


# ---------------------------------------------------------------------------
# greedy warm starts (deterministic, used to seed branch-and-bound incumbents)

def _greedy_saturate(d: DegreeSequence) -> Graph:
    """Add links in lexicographic order while both endpoints are deficient.

    The result is always pairwise stable for the degree game: nobody ends
    over target, and no two deficient players remain unlinked (such a pair
    would still be addable).
    """
    n = len(d)
    adj = np.zeros((n, n), dtype=np.int8)
    deg = [0] * n
    changed = True
    while changed:
        changed = False
        for i in range(n):
            if deg[i] >= d[i]:
                continue
            for j in range(i + 1, n):
                if deg[j] < d[j] and not adj[i, j]:
                    adj[i, j] = adj[j, i] = 1
                    deg[i] += 1
                    deg[j] += 1
                    changed = True
                    if deg[i] >= d[i]:
                        break
    return Graph(adj)


def _greedy_pack(d: DegreeSequence) -> Graph:
    """Greedy edge packing under degree caps: largest residual pair first."""
    n = len(d)
    adj = np.zeros((n, n), dtype=np.int8)
    res = list(d)
    while True:
        order = sorted(range(n), key=lambda v: (-res[v], v))
        i = next((v for v in order if res[v] > 0), None)
        if i is None:
            break
        partners = sorted(
            (w for w in range(n) if w != i and res[w] > 0 and not adj[i, w]),
            key=lambda w: (-res[w], w),
        )[: res[i]]
        if not partners:
            break
        for w in partners:
            adj[i, w] = adj[w, i] = 1
            res[w] -= 1
        res[i] -= len(partners)
    return Graph(adj)


# ---------------------------------------------------------------------------
# combinatorial bounds and witness constructions

def _min_distance_bound(d: DegreeSequence) -> int:
    """Admissible lower bound on min Sum|degree_i - d_i| over all graphs.

    For any vertex set S and any simple graph, the degrees inside S total
    at most |S|(|S|-1) + Sum_{v not in S} min(d_v, |S|) once no vertex
    exceeds its target (an optimum without overshoot always exists). The
    bound maximizes the implied deficit over prefixes of the descending
    sort, then rounds up to the parity of Sum d, which every achievable
    objective shares.
    """
    s = sorted(d, reverse=True)
    n = len(s)
    best = 0
    for k in range(1, n + 1):
        val = sum(s[:k]) - k * (k - 1) - sum(min(v, k) for v in s[k:])
        best = max(best, val)
    if (best - sum(s)) % 2:
        best += 1
    return best


def _graphical_repair(d: DegreeSequence) -> DegreeSequence:
    """Largest-looking graphical sequence dominated by d, by decrements.

    Caps entries at n-1, then repeatedly decrements the smallest entry of
    the first violated Erdos-Gallai prefix (or, with no violation, the
    smallest positive entry when the sum is odd) until graphical. Each
    decrement costs one unit of l1 distance from d.
    """
    n = len(d)
    eta = [min(v, n - 1) for v in d]

    def first_violation() -> list[int] | None:
        order = sorted(range(n), key=lambda i: (-eta[i], i))
        vals = [eta[i] for i in order]
        prefix = 0
        for k in range(1, n + 1):
            prefix += vals[k - 1]
            tail = sum(min(v, k) for v in vals[k:])
            if prefix > k * (k - 1) + tail:
                return order[:k]
        return None

    while True:
        viol = first_violation()
        if viol is not None:
            eta[viol[-1]] -= 1
            continue
        if sum(eta) % 2 == 0:
            return tuple(eta)
        positive = [i for i in range(n) if eta[i] > 0]
        j = min(positive, key=lambda i: (eta[i], i))
        eta[j] -= 1


def _clique_witnesses(d: DegreeSequence):
    """Stable graphs built as a deficient clique plus an exactly-saturated rest.

    For each clique size s, the s players with the largest targets form
    the deficient set at degree s-1 while the rest realize their targets
    exactly; a single cross edge is tried when the rest sequence misses
    graphicality by one. Yields candidate stable graphs for seeding the
    worst-stable search.
    """
    n = len(d)
    order = sorted(range(n), key=lambda v: (-d[v], v))
    for s in range(1, n + 1):
        team = order[:s]
        if d[team[-1]] < s:
            break
        rest = order[s:]
        rest_d = [d[v] for v in rest]
        adj = np.zeros((n, n), dtype=np.int8)
        for a in range(s):
            for b in range(a + 1, s):
                adj[team[a], team[b]] = adj[team[b], team[a]] = 1
        if is_graphical(rest_d):
            sub = realize_graphical(rest_d)
            for (a, b) in sub.edges():
                adj[rest[a], rest[b]] = adj[rest[b], rest[a]] = 1
            yield Graph(adj)
            continue
        # repair the rest down to a graphical sequence and route every lost
        # unit over a cross edge to a clique member with spare capacity
        repaired = _graphical_repair(tuple(rest_d))
        sub = realize_graphical(repaired)
        capacity = {v: d[v] - s for v in team}
        ok = True
        for pos, j in enumerate(rest):
            for _ in range(rest_d[pos] - repaired[pos]):
                host = max(
                    (v for v in team if capacity[v] > 0 and not adj[v, j]),
                    key=lambda v: (capacity[v], -v),
                    default=None,
                )
                if host is None:
                    ok = False
                    break
                adj[host, j] = adj[j, host] = 1
                capacity[host] -= 1
            if not ok:
                break
        if not ok:
            continue
        for (a, b) in sub.edges():
            adj[rest[a], rest[b]] = adj[rest[b], rest[a]] = 1
        yield Graph(adj)


# ---------------------------------------------------------------------------
# worst pairwise-stable graph for the degree game

class _WorstStableSearch:
    """DFS over edge variables maximizing the total deficit of stable graphs.

    State per vertex: current degree, maximum reachable degree M (degree
    plus undecided incident pairs), doom flag (M < target, so the vertex is
    deficient in every completion), and the set of partners already decided
    absent. A branch dies as soon as two doomed vertices are unlinkable,
    which makes the deficient-clique condition hold at every surviving
    leaf.
    """

    def __init__(self, d: DegreeSequence, node_budget: int) -> None:
        self.d = d
        self.n = len(d)
        self.pairs = _pairs(self.n)
        self.budget = node_budget
        self.nodes = 0
        self.adj = np.zeros((self.n, self.n), dtype=np.int8)
        self.deg = [0] * self.n
        self.reach = [self.n - 1] * self.n
        self.doomed = [self.reach[v] < d[v] for v in range(self.n)]
        self.absent = [set() for _ in range(self.n)]
        self.pot = sum(d)  # current Sum(d_v - deg_v): upper bound on final deficit
        game = DegreeSequenceGame(d)
        seeds = [_greedy_saturate(d)]
        seeds.extend(g for g in _clique_witnesses(d)
                     if is_pairwise_stable_degree(game, g))
        self.best_graph = max(seeds, key=lambda g: sum(_deficits(g, d)))
        self.best_obj = sum(_deficits(self.best_graph, d))

    def run(self) -> tuple[Graph, int, bool, int]:
        optimal = True
        try:
            self._rec(0)
        except _BudgetExhausted:
            optimal = False
        return self.best_graph, self.best_obj, optimal, self.nodes

    def _upper_bound(self) -> int:
        """Best deficit any stable completion of this node could reach.

        If the final deficient set has size s it forms a clique, so each
        member's final degree is at least max(current degree, s - 1) and
        its target must exceed s - 1. Doomed vertices are forced members.
        Maximizing over s with a greedy choice of the remaining members
        relaxes the pairwise constraints, so the bound is admissible.
        """
        d, deg, doomed = self.d, self.deg, self.doomed
        # partners[v]: how many vertices v could still end up linked to
        partners = [self.n - 1 - len(self.absent[v]) for v in range(self.n)]
        forced = [v for v in range(self.n) if doomed[v]]
        k = len(forced)
        best = 0
        for s in range(max(k, 1), self.n + 1):
            floor = s - 1
            if any(d[v] <= floor or partners[v] < floor for v in forced):
                break
            total = sum(d[v] - max(deg[v], floor) for v in forced)
            optional = sorted(
                (d[v] - max(deg[v], floor)
                 for v in range(self.n)
                 if not doomed[v] and partners[v] >= floor),
                reverse=True,
            )
            take = [x for x in optional[: s - k] if x > 0]
            if k + len(take) < s:
                break
            best = max(best, total + sum(take))
        if (best - sum(d)) % 2:
            best -= 1
        return best

    def _rec(self, k: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        # any improvement must beat best_obj by 2 (total deficit parity is fixed)
        if self.pot <= self.best_obj + 1:
            return
        if self._upper_bound() <= self.best_obj + 1:
            return
        if k == len(self.pairs):
            if self.pot > self.best_obj:
                g = Graph(self.adj.copy())
                # re-check with the public predicate before accepting
                assert is_pairwise_stable_degree(DegreeSequenceGame(self.d), g)
                self.best_graph = g
                self.best_obj = self.pot
            return
        i, j = self.pairs[k]
        d, deg, reach, doomed = self.d, self.deg, self.reach, self.doomed

        # exclude branch first: sparse graphs carry the large deficits
        if not (reach[i] - 1 < d[i] and reach[j] - 1 < d[j]):
            reach[i] -= 1
            reach[j] -= 1
            self.absent[i].add(j)
            self.absent[j].add(i)
            newly = [v for v in (i, j) if not doomed[v] and reach[v] < d[v]]
            feasible = all(
                not any(doomed[w] for w in self.absent[v]) for v in newly
            )
            for v in newly:
                doomed[v] = True
            if feasible:
                self._rec(k + 1)
            for v in newly:
                doomed[v] = False
            self.absent[i].discard(j)
            self.absent[j].discard(i)
            reach[i] += 1
            reach[j] += 1

        if deg[i] < d[i] and deg[j] < d[j]:
            self.adj[i, j] = self.adj[j, i] = 1
            deg[i] += 1
            deg[j] += 1
            self.pot -= 2
            self._rec(k + 1)
            self.pot += 2
            deg[i] -= 1
            deg[j] -= 1
            self.adj[i, j] = self.adj[j, i] = 0


def worst_stable_degree(d, node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Pairwise-stable graph maximizing the total deficit Sum(d_i - degree_i).

    Exact within the node budget; beyond it the best graph found so far is
    returned with optimal=False. Ties between optima are broken by a fixed
    deterministic rule (greedy-seeded incumbent, replaced only on strict
    improvement along the fixed DFS order).
    """
    d = as_degree_sequence(d)
    search = _WorstStableSearch(d, node_budget)
    graph, obj, optimal, nodes = search.run()
    deficits = _deficits(graph, d)
    assert sum(deficits) == obj, "objective inconsistent with returned graph"
    return SolveResult(graph, float(obj), optimal, nodes, deficits)


# ---------------------------------------------------------------------------
# closest graph to a degree sequence

class _BestGraphSearch:
    """DFS over edge variables minimizing Sum|degree_i - d_i|.

    Restricted WLOG to graphs with degree_i <= d_i: any optimum with an
    over-target vertex can drop one of its edges without increasing the
    objective, so an optimum without overshoot always exists.
    """

    def __init__(self, d: DegreeSequence, node_budget: int,
                 seed: Graph, stop_at: int) -> None:
        self.d = d
        self.n = len(d)
        self.pairs = _pairs(self.n)
        self.budget = node_budget
        self.stop_at = stop_at
        self.nodes = 0
        self.adj = np.zeros((self.n, self.n), dtype=np.int8)
        self.deg = [0] * self.n
        self.reach = [self.n - 1] * self.n
        self.best_graph = seed
        self.best_obj = sum(_deficits(seed, d))
        self.cur = sum(d)  # current Sum(d_v - deg_v)

    def run(self) -> tuple[Graph, int, bool, int]:
        optimal = True
        try:
            self._rec(0)
        except _Done:
            pass
        except _BudgetExhausted:
            optimal = False
        return self.best_graph, self.best_obj, optimal, self.nodes

    def _rec(self, k: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _BudgetExhausted
        lower = sum(
            dv - r for dv, r in zip(self.d, self.reach) if dv > r
        )
        # parity of the final objective is fixed, so beating best_obj needs -2
        if lower >= self.best_obj - 1:
            return
        if k == len(self.pairs):
            if self.cur < self.best_obj:
                self.best_graph = Graph(self.adj.copy())
                self.best_obj = self.cur
                if self.best_obj <= self.stop_at:
                    raise _Done  # incumbent meets the admissible bound
            return
        i, j = self.pairs[k]
        if self.deg[i] < self.d[i] and self.deg[j] < self.d[j]:
            self.adj[i, j] = self.adj[j, i] = 1
            self.deg[i] += 1
            self.deg[j] += 1
            self.cur -= 2
            self._rec(k + 1)
            self.cur += 2
            self.deg[i] -= 1
            self.deg[j] -= 1
            self.adj[i, j] = self.adj[j, i] = 0
        self.reach[i] -= 1
        self.reach[j] -= 1
        self._rec(k + 1)
        self.reach[i] += 1
        self.reach[j] += 1


def best_graph_degree(d, node_budget: int = DEFAULT_NODE_BUDGET) -> SolveResult:
    """Graph minimizing the l1 distance between its degree sequence and d.

    Graphical sequences short-circuit to a Havel-Hakimi realization with
    objective 0. Otherwise a graphical repair of d is realized as a
    witness; when it meets the admissible subset bound (every case
    observed so far) the result is certified without search, and branch
    and bound closes the gap otherwise, exact within the node budget.
    """
    d = as_degree_sequence(d)
    if is_graphical(d):
        g = realize_graphical(d)
        assert degree_sequence(g) == d
        return SolveResult(g, 0.0, True, 0, _deficits(g, d))
    bound = _min_distance_bound(d)
    witness = realize_graphical(_graphical_repair(d))
    witness_obj = l1_distance(degree_sequence(witness), d)
    if witness_obj <= bound:
        return SolveResult(witness, float(witness_obj), True, 0,
                           _deficits(witness, d))
    search = _BestGraphSearch(d, node_budget, witness, bound)
    graph, obj, optimal, nodes = search.run()
    assert l1_distance(degree_sequence(graph), d) == obj, \
        "objective inconsistent with returned graph"
    return SolveResult(graph, float(obj), optimal, nodes, _deficits(graph, d))


# ---------------------------------------------------------------------------
# link-bias game: closed forms

def stable_graph_link_bias(game: LinkBiasGame) -> SolveResult:
    """The unique stable graph: link ij exists iff c_ij < 0 and c_ji < 0.

    The stability constraints pin every edge once strategies are fixed by
    the sign of the costs, so the worst (and only) stable graph needs no
    search. Objective is the communal payoff in reward units.
    """
    g = graph_from_strategies(strategies_from_costs(game))
    assert is_pairwise_stable_link_bias(game, g)
    return SolveResult(g, communal_value_link_bias(game, g), True, 0)


def best_graph_link_bias(game: LinkBiasGame) -> SolveResult:
    """Graph maximizing communal payoff: link ij exists iff c_ij + c_ji < 0.

    The objective separates over edges, so each pair is decided by the
    sign of its cost sum; zero sums are excluded (link parsimony).
    """
    pair_cost = game.c + game.c.T
    adj = (pair_cost < 0).astype(np.int8)
    np.fill_diagonal(adj, 0)
    g = Graph(adj)
    return SolveResult(g, communal_value_link_bias(game, g), True, 0)


def construct_cost_matrix(d) -> tuple[Graph, StrategyMatrix, LinkBiasGame]:
    """Build a link-bias game whose stable graph is as close to d as possible.

    Takes the closest graph x to d, uses x itself as the (symmetric)
    strategy matrix, and maps desire to cost -1 and indifference to +1.
    The constructed game's stable graph is exactly x, so its degree
    sequence attains the minimum l1 distance to d.
    """
    d = as_degree_sequence(d)
    x = best_graph_degree(d).graph
    s = StrategyMatrix(x.adj.copy())
    c = np.where(x.adj == 1, -1.0, 1.0)
    np.fill_diagonal(c, 0.0)
    game = LinkBiasGame(c)
    assert stable_graph_link_bias(game).graph == x
    return x, s, game


# ---------------------------------------------------------------------------
# brute-force enumeration oracles

_enum_cache: dict[int, tuple[np.ndarray, np.ndarray]] = {}


def _enumerated_degrees(n: int) -> tuple[np.ndarray, np.ndarray]:
    """All 2^(n(n-1)/2) edge masks with their degree vectors (cached, n <= 7)."""
    if n not in _enum_cache:
        pairs = _pairs(n)
        masks = np.arange(1 << len(pairs), dtype=np.uint32)
        deg = np.zeros((masks.size, n), dtype=np.int8)
        for k, (i, j) in enumerate(pairs):
            bit = ((masks >> np.uint32(k)) & 1).astype(np.int8)
            deg[:, i] += bit
            deg[:, j] += bit
        _enum_cache[n] = (masks, deg)
    return _enum_cache[n]


def _graph_from_mask(n: int, mask: int) -> Graph:
    return Graph.from_edges(
        n, [pq for k, pq in enumerate(_pairs(n)) if mask >> k & 1]
    )


def _mask_chunks(n: int):
    """Yield (masks, deg) chunks covering every graph on n nodes."""
    if n <= 7:
        yield _enumerated_degrees(n)
        return
    pairs = _pairs(n)
    total = 1 << len(pairs)
    step = 1 << _CHUNK_BITS
    for start in range(0, total, step):
        masks = np.arange(start, min(start + step, total), dtype=np.uint32)
        deg = np.zeros((masks.size, n), dtype=np.int8)
        for k, (i, j) in enumerate(pairs):
            bit = ((masks >> np.uint32(k)) & 1).astype(np.int8)
            deg[:, i] += bit
            deg[:, j] += bit
        yield masks, deg


def _check_brute_force_n(n: int) -> None:
    if n > BRUTE_FORCE_MAX_N:
        raise ValueError(
            f"brute force enumerates 2^(n(n-1)/2) graphs; n={n} exceeds "
            f"the limit of {BRUTE_FORCE_MAX_N}"
        )


def brute_force_worst_stable(d) -> SolveResult:
    """Enumerate every graph, keep the stable ones, return the max deficit.

    Verification oracle for worst_stable_degree; n <= 8 only.
    """
    d = as_degree_sequence(d)
    n = len(d)
    _check_brute_force_n(n)
    darr = np.array(d, dtype=np.int32)
    pairs = _pairs(n)
    best_val = -1
    best_mask = 0
    count = 0
    for masks, deg in _mask_chunks(n):
        count += masks.size
        stable = (deg <= darr).all(axis=1)
        for k, (i, j) in enumerate(pairs):
            absent = ((masks >> np.uint32(k)) & 1) == 0
            stable &= ~(absent & (deg[:, i] < d[i]) & (deg[:, j] < d[j]))
        if not stable.any():
            continue
        usum = (darr - deg).sum(axis=1, dtype=np.int32)
        vals = np.where(stable, usum, -1)
        idx = int(np.argmax(vals))
        if vals[idx] > best_val:
            best_val = int(vals[idx])
            best_mask = int(masks[idx])
    if best_val < 0:
        raise AssertionError("no stable graph found; this cannot happen")
    g = _graph_from_mask(n, best_mask)
    return SolveResult(g, float(best_val), True, count, _deficits(g, d))


def brute_force_best_graph(d) -> SolveResult:
    """Enumerate every graph, return the minimum l1 degree distance to d.

    Verification oracle for best_graph_degree; n <= 8 only.
    """
    d = as_degree_sequence(d)
    n = len(d)
    _check_brute_force_n(n)
    darr = np.array(d, dtype=np.int32)
    best_val = None
    best_mask = 0
    count = 0
    for masks, deg in _mask_chunks(n):
        count += masks.size
        obj = np.abs(deg - darr).sum(axis=1, dtype=np.int32)
        idx = int(np.argmin(obj))
        if best_val is None or obj[idx] < best_val:
            best_val = int(obj[idx])
            best_mask = int(masks[idx])
    g = _graph_from_mask(n, best_mask)
    return SolveResult(g, float(best_val), True, count, _deficits(g, d))
