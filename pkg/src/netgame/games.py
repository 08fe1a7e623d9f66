"""The two network formation games, their payoffs, and stability predicates.

A degree-sequence game gives each player a target number of links and a
cost equal to the absolute deviation from it. A link-bias game gives each
player a per-partner cost coefficient; negative cost means the player
benefits from that link. Links require mutual consent (veto power).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .graphs import DegreeSequence, Graph, as_degree_sequence, degree_sequence


@dataclass(frozen=True)
class DegreeSequenceGame:
    """n players, each wanting exactly d[i] links; cost |degree - d[i]|."""

    d: DegreeSequence

    def __post_init__(self) -> None:
        object.__setattr__(self, "d", as_degree_sequence(self.d))

    @property
    def n(self) -> int:
        return len(self.d)

    def without_player(self, i: int) -> "DegreeSequenceGame":
        """Drop player i; remaining targets are unchanged."""
        if not 0 <= i < self.n:
            raise IndexError(f"player {i} out of range for n={self.n}")
        return DegreeSequenceGame(self.d[:i] + self.d[i + 1:])


class LinkBiasGame:
    """n players with a real cost matrix c; c[i][j] < 0 means i wants link ij.

    The matrix must be square with a zero diagonal. Instances are
    immutable; the cost array is exposed read-only.
    """

    __slots__ = ("_c",)

    def __init__(self, c) -> None:
        a = np.asarray(c, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"cost matrix must be square, got shape {a.shape}")
        if a.size and not np.isfinite(a).all():
            raise ValueError("cost matrix entries must be finite")
        if a.size and np.any(np.diagonal(a) != 0):
            raise ValueError("cost matrix diagonal must be zero")
        a = a.copy()
        a.setflags(write=False)
        self._c = a

    @property
    def n(self) -> int:
        return self._c.shape[0]

    @property
    def c(self) -> np.ndarray:
        return self._c

    def without_player(self, i: int) -> "LinkBiasGame":
        """Delete row and column i from the cost matrix."""
        if not 0 <= i < self.n:
            raise IndexError(f"player {i} out of range for n={self.n}")
        keep = [k for k in range(self.n) if k != i]
        return LinkBiasGame(self._c[np.ix_(keep, keep)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinkBiasGame):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._c, other._c)

    def __repr__(self) -> str:
        return f"LinkBiasGame(n={self.n})"


class StrategyMatrix:
    """Binary desire matrix: s[i][j] = 1 means player i wants link ij.

    Zero diagonal, not necessarily symmetric.
    """

    __slots__ = ("_s",)

    def __init__(self, s) -> None:
        a = np.asarray(s)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"strategy matrix must be square, got shape {a.shape}")
        if a.size and not np.isin(a, (0, 1)).all():
            raise ValueError("strategy entries must be 0 or 1")
        a = a.astype(np.int8)
        if a.size and np.any(np.diagonal(a) != 0):
            raise ValueError("strategy diagonal must be zero")
        a.setflags(write=False)
        self._s = a

    @property
    def n(self) -> int:
        return self._s.shape[0]

    @property
    def s(self) -> np.ndarray:
        return self._s

    def __eq__(self, other) -> bool:
        if not isinstance(other, StrategyMatrix):
            return NotImplemented
        return np.array_equal(self._s, other._s)

    def __repr__(self) -> str:
        return f"StrategyMatrix(n={self.n})"


def strategies_from_costs(game: LinkBiasGame) -> StrategyMatrix:
    """Desire exactly the strictly beneficial links: s[i][j] = 1 iff c[i][j] < 0.

    Zero cost maps to 0 (link parsimony): a link that neither helps nor
    hurts is not desired. This matters on degenerate inputs with zero
    off-diagonal costs.
    """
    return StrategyMatrix((game.c < 0).astype(np.int8))


def graph_from_strategies(s: StrategyMatrix) -> Graph:
    """Links form only under mutual desire: x[i][j] = 1 iff s[i][j] = s[j][i] = 1."""
    return Graph(s.s & s.s.T)


def payoff_degree(game: DegreeSequenceGame, g: Graph, i: int) -> float:
    """Player i's payoff -(|degree_i - d_i|) in the degree game."""
    if not 0 <= i < game.n:
        raise IndexError(f"player {i} out of range for n={game.n}")
    if g.n != game.n:
        raise ValueError(f"graph has {g.n} nodes, game has {game.n} players")
    return -abs(g.degree(i) - game.d[i])


def payoff_link_bias(game: LinkBiasGame, g: Graph, i: int) -> float:
    """Player i's payoff -(sum of c[i][j] over i's links) in the link-bias game."""
    if not 0 <= i < game.n:
        raise IndexError(f"player {i} out of range for n={game.n}")
    if g.n != game.n:
        raise ValueError(f"graph has {g.n} nodes, game has {game.n} players")
    return -float(np.dot(game.c[i], g.adj[i]))


def communal_value(payoffs: Sequence[float]) -> float:
    """Total value produced by the network: the sum of player payoffs."""
    return float(sum(payoffs))


def communal_value_link_bias(game: LinkBiasGame, g: Graph) -> float:
    """Sum of all link-bias payoffs for graph g."""
    return -float(np.sum(game.c * g.adj))


def is_pairwise_stable_degree(game: DegreeSequenceGame, g: Graph) -> bool:
    """Pairwise stability for the degree game.

    Holds iff (1) nobody is over target, and (2) every pair of strictly
    deficient players is linked. (Over-target players would drop a link;
    two deficient unlinked players would both gain by adding theirs.)
    """
    if g.n != game.n:
        raise ValueError(f"graph has {g.n} nodes, game has {game.n} players")
    d = np.array(game.d)
    eta = g.adj.sum(axis=1)
    if np.any(eta > d):
        return False
    deficient = eta < d
    idx = np.nonzero(deficient)[0]
    for a in range(len(idx)):
        for b in range(a + 1, len(idx)):
            if not g.adj[idx[a], idx[b]]:
                return False
    return True


def is_pairwise_stable_link_bias(game: LinkBiasGame, g: Graph) -> bool:
    """Pairwise stability for the link-bias game.

    Every existing link must strictly benefit both endpoints, and no
    absent link may strictly benefit both endpoints.
    """
    if g.n != game.n:
        raise ValueError(f"graph has {g.n} nodes, game has {game.n} players")
    mutual = (game.c < 0) & (game.c.T < 0)
    np.fill_diagonal(mutual, False)
    present = g.adj.astype(bool)
    if np.any(present & ~mutual):
        return False
    if np.any(mutual & ~present):
        return False
    return True
