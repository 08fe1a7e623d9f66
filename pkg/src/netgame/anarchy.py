"""Price-of-anarchy measures and vertex-removal what-if analysis.

The link-bias pipeline mirrors a full analyst workflow: compute the
stable and best graphs, compare them as a ratio or a difference, then ask
what each single vertex removal would do to the network's payoffs and to
its relative efficiency.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .games import LinkBiasGame, strategies_from_costs
from .graphs import eigenvector_centrality
from .solvers import DEFAULT_NODE_BUDGET, best_graph_degree, \
    best_graph_link_bias, stable_graph_link_bias, worst_stable_degree

REWARD = "reward"
COST = "cost"


class UndefinedRatioError(ValueError):
    """Raised when a ratio-form price of anarchy has a non-positive denominator."""


@dataclass(frozen=True)
class AnarchyReport:
    """Worst-stable vs best communal value and both price-of-anarchy forms.

    ``orientation`` tags whether the values are rewards (link-bias game)
    or costs (degree game) so consumers can label axes correctly.
    ``poa_ratio`` is None when the denominator is not positive.
    """

    worst_stable_value: float
    best_value: float
    poa_difference: float
    poa_ratio: float | None
    orientation: str = REWARD

    def __post_init__(self) -> None:
        if self.orientation not in (REWARD, COST):
            raise ValueError(f"unknown orientation {self.orientation!r}")
        if self.poa_difference < 0:
            raise ValueError("poa_difference must be non-negative")


@dataclass(frozen=True)
class WhatIfResult:
    """Everything the analyst sees for one candidate vertex removal.

    ``delta_poa_ratio`` follows original-minus-new sign convention: a
    negative value means the removal made the network relatively more
    efficient. ``degree`` and ``eig_centrality`` describe the removed
    vertex in the original stable graph.
    """

    removed: int
    report_before: AnarchyReport
    report_after: AnarchyReport
    delta_poa_ratio: float | None
    communal_utility_change: float
    degree: int
    eig_centrality: float


def price_of_anarchy(worst_stable: float, best: float, mode: str,
                     orientation: str = REWARD) -> float:
    """Difference or ratio between the worst stable and the best value.

    In reward orientation the difference is best - worst_stable; in cost
    orientation it is worst_stable - best. The ratio is worst_stable/best
    in either orientation and requires best > 0; callers with a zero
    denominator should use difference mode instead.
    """
    if orientation not in (REWARD, COST):
        raise ValueError(f"unknown orientation {orientation!r}")
    if mode == "difference":
        if orientation == REWARD:
            return best - worst_stable
        return worst_stable - best
    if mode == "ratio":
        if best <= 0:
            raise UndefinedRatioError(
                f"ratio undefined for best value {best}; use difference mode"
            )
        return worst_stable / best
    raise ValueError(f"unknown mode {mode!r}; expected 'ratio' or 'difference'")


def communal_utility_change(game: LinkBiasGame, i: int) -> float:
    """Reward the network loses when vertex i is removed.

    Sums -(c_ij + c_ji) over i's links in the stable graph; every term is
    positive because a stable link needs both costs negative.
    """
    if not 0 <= i < game.n:
        raise IndexError(f"vertex {i} out of range for n={game.n}")
    s = strategies_from_costs(game).s
    mutual = (s * s.T).astype(bool)
    return -float(np.sum((game.c[i] + game.c[:, i]) * mutual[i]))


def anarchy_report_link_bias(game: LinkBiasGame) -> AnarchyReport:
    """Stable vs best communal payoff for a link-bias game, reward units."""
    worst = stable_graph_link_bias(game).objective
    best = best_graph_link_bias(game).objective
    ratio = worst / best if best > 0 else None
    return AnarchyReport(worst, best, best - worst, ratio, REWARD)


def anarchy_report_degree(d, node_budget: int = DEFAULT_NODE_BUDGET) -> AnarchyReport:
    """Worst-stable vs best objective for a degree game, cost units.

    The ratio is omitted when the best objective is 0, which is exactly
    the graphical case.
    """
    worst = worst_stable_degree(d, node_budget).objective
    best = best_graph_degree(d, node_budget).objective
    ratio = worst / best if best > 0 else None
    return AnarchyReport(worst, best, worst - best, ratio, COST)


def whatif_remove(game: LinkBiasGame, i: int) -> WhatIfResult:
    """Outcome of removing vertex i from a link-bias game.

    Recomputes stable and best graphs on the reduced cost matrix and pairs
    them with the removed vertex's degree, eigenvector centrality, and
    communal utility change in the original stable graph.
    """
    if game.n < 2:
        raise ValueError("what-if removal needs at least 2 players")
    if not 0 <= i < game.n:
        raise IndexError(f"vertex {i} out of range for n={game.n}")
    before = anarchy_report_link_bias(game)
    stable = stable_graph_link_bias(game).graph
    centrality = eigenvector_centrality(stable)
    return _whatif_row(game, i, before, stable, centrality)


def _whatif_row(game: LinkBiasGame, i: int, before: AnarchyReport,
                stable, centrality) -> WhatIfResult:
    after = anarchy_report_link_bias(game.without_player(i))
    delta = None
    if before.poa_ratio is not None and after.poa_ratio is not None:
        delta = before.poa_ratio - after.poa_ratio
    return WhatIfResult(
        removed=i,
        report_before=before,
        report_after=after,
        delta_poa_ratio=delta,
        communal_utility_change=communal_utility_change(game, i),
        degree=stable.degree(i),
        eig_centrality=float(centrality[i]),
    )


def summary_table(game: LinkBiasGame) -> list[WhatIfResult]:
    """One what-if row per vertex, in vertex order."""
    if game.n < 2:
        raise ValueError("summary table needs at least 2 players")
    before = anarchy_report_link_bias(game)
    stable = stable_graph_link_bias(game).graph
    centrality = eigenvector_centrality(stable)
    return [_whatif_row(game, i, before, stable, centrality)
            for i in range(game.n)]


def pareto_targets(table: Sequence[WhatIfResult]) -> set[int]:
    """Vertices undominated under jointly maximizing utility damage and
    price-of-anarchy increase.

    Row v dominates row w when v is at least as good on both coordinates
    and strictly better on one. An undefined ratio delta compares as
    negative infinity.
    """
    if not table:
        raise ValueError("pareto_targets needs a non-empty table")

    def coords(row: WhatIfResult) -> tuple[float, float]:
        delta = row.delta_poa_ratio
        return (row.communal_utility_change,
                -np.inf if delta is None else delta)

    out = set()
    for row in table:
        ru, rd = coords(row)
        dominated = any(
            (ou >= ru and od >= rd) and (ou > ru or od > rd)
            for ou, od in (coords(o) for o in table if o is not row)
        )
        if not dominated:
            out.add(row.removed)
    return out
