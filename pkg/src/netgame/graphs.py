"""Simple undirected graphs, degree sequences, and vertex metrics.

Graphs are stored as dense symmetric 0/1 adjacency matrices. Everything
downstream (games, solvers, simulation) works at desk scale, so density
costs nothing and keeps degree and bound computations O(n) per row.
"""

from __future__ import annotations

from typing import Iterable, Sequence

import numpy as np

DegreeSequence = tuple[int, ...]


class Graph:
    """Immutable simple undirected graph over n labeled nodes.

    Invariants enforced at construction: the adjacency matrix is square,
    symmetric, binary, and has a zero diagonal. Instances are safe to
    share across threads; "mutation" happens through builder-style copies
    (:meth:`with_edge`, :meth:`without_edge`, :meth:`without_vertex`).
    """

    __slots__ = ("_adj",)

    def __init__(self, adj) -> None:
        a = np.asarray(adj)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"adjacency matrix must be square, got shape {a.shape}")
        if a.size and not np.isin(a, (0, 1)).all():
            raise ValueError("adjacency entries must be 0 or 1")
        a = a.astype(np.int8)
        if not np.array_equal(a, a.T):
            raise ValueError("adjacency matrix must be symmetric")
        if a.size and np.any(np.diagonal(a) != 0):
            raise ValueError("self-loops are not allowed (nonzero diagonal)")
        a.setflags(write=False)
        self._adj = a

    @classmethod
    def empty(cls, n: int) -> "Graph":
        if n < 0:
            raise ValueError("node count must be >= 0")
        return cls(np.zeros((n, n), dtype=np.int8))

    @classmethod
    def complete(cls, n: int) -> "Graph":
        a = np.ones((n, n), dtype=np.int8)
        np.fill_diagonal(a, 0)
        return cls(a)

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        a = np.zeros((n, n), dtype=np.int8)
        for i, j in edges:
            if not (0 <= i < n and 0 <= j < n):
                raise ValueError(f"edge ({i}, {j}) out of range for n={n}")
            if i == j:
                raise ValueError(f"self-loop ({i}, {i}) not allowed")
            a[i, j] = a[j, i] = 1
        return cls(a)

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def adj(self) -> np.ndarray:
        """Read-only view of the adjacency matrix."""
        return self._adj

    def degree(self, i: int) -> int:
        return int(self._adj[i].sum())

    def edges(self) -> list[tuple[int, int]]:
        """Edge list with i < j, in lexicographic order."""
        ii, jj = np.nonzero(np.triu(self._adj, k=1))
        return list(zip(ii.tolist(), jj.tolist()))

    def edge_count(self) -> int:
        return int(self._adj.sum()) // 2

    def has_edge(self, i: int, j: int) -> bool:
        return bool(self._adj[i, j])

    def with_edge(self, i: int, j: int) -> "Graph":
        if i == j:
            raise ValueError("self-loop not allowed")
        a = self._adj.copy()
        a[i, j] = a[j, i] = 1
        return Graph(a)

    def without_edge(self, i: int, j: int) -> "Graph":
        a = self._adj.copy()
        a[i, j] = a[j, i] = 0
        return Graph(a)

    def without_vertex(self, i: int) -> "Graph":
        keep = [k for k in range(self.n) if k != i]
        return Graph(self._adj[np.ix_(keep, keep)])

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, edges={self.edges()})"


def as_degree_sequence(d: Sequence[int]) -> DegreeSequence:
    """Validate and normalize a degree (target) sequence.

    Values above n-1 are allowed: targets may be unrealizable. Negative
    or non-integer values are rejected.
    """
    out = []
    for k, v in enumerate(d):
        iv = int(v)
        if iv != v:
            raise ValueError(f"degree at position {k} is not an integer: {v!r}")
        if iv < 0:
            raise ValueError(f"degree at position {k} is negative: {iv}")
        out.append(iv)
    return tuple(out)


def degree_sequence(g: Graph) -> DegreeSequence:
    """Degree of every node, as a tuple indexed by node."""
    return tuple(int(x) for x in g.adj.sum(axis=1))


def l1_distance(a: Sequence[int], b: Sequence[int]) -> int:
    """Sum of absolute componentwise differences between two sequences."""
    if len(a) != len(b):
        raise ValueError(f"length mismatch: {len(a)} vs {len(b)}")
    return int(sum(abs(int(x) - int(y)) for x, y in zip(a, b)))


def is_graphical(d: Sequence[int]) -> bool:
    """Erdos-Gallai test: does a simple graph with degree sequence d exist?"""
    d = as_degree_sequence(d)
    n = len(d)
    if sum(d) % 2 != 0:
        return False
    if any(v > n - 1 for v in d):
        return False
    s = sorted(d, reverse=True)
    prefix = 0
    for k in range(1, n + 1):
        prefix += s[k - 1]
        tail = sum(min(v, k) for v in s[k:])
        if prefix > k * (k - 1) + tail:
            return False
    return True


def realize_graphical(d: Sequence[int]) -> Graph:
    """Construct a graph with degree sequence d via Havel-Hakimi.

    Raises ValueError when d is not graphical. Deterministic: at each step
    the node with the largest residual target (ties broken by lowest
    index) is connected to the next-largest residuals.
    """
    d = as_degree_sequence(d)
    if not is_graphical(d):
        raise ValueError(f"degree sequence {d} is not graphical")
    n = len(d)
    residual = list(d)
    adj = np.zeros((n, n), dtype=np.int8)
    for _ in range(n):
        # pick the node with the largest remaining demand
        v = max(range(n), key=lambda i: (residual[i], -i))
        k = residual[v]
        if k == 0:
            break
        residual[v] = 0
        partners = sorted(
            (i for i in range(n) if i != v and adj[v, i] == 0),
            key=lambda i: (-residual[i], i),
        )[:k]
        if len(partners) < k or residual[partners[-1]] == 0:
            raise ValueError(f"degree sequence {d} is not graphical")
        for u in partners:
            adj[v, u] = adj[u, v] = 1
            residual[u] -= 1
    return Graph(adj)


def eigenvector_centrality(g: Graph, tol: float = 1e-12, max_iter: int = 100000) -> np.ndarray:
    """Perron eigenvector of the adjacency matrix, normalized to sum 1.

    Power iteration on A + I (the shift avoids oscillation on bipartite
    graphs without changing eigenvectors), started from a uniform positive
    vector and stopped when the l1 change between iterates drops below
    tol. Isolated vertices get exactly 0. On disconnected graphs the
    dominant component wins; ties between equal spectral radii are
    resolved by the iteration itself and accepted as-is.

    A graph with no edges yields the all-zero vector rather than an error.
    """
    if g.n == 0:
        raise ValueError("eigenvector centrality needs at least one node")
    if tol <= 0:
        raise ValueError("tol must be positive")
    a = g.adj.astype(float)
    if not a.any():
        return np.zeros(g.n)
    isolated = a.sum(axis=1) == 0
    x = np.full(g.n, 1.0 / g.n)
    for _ in range(max_iter):
        y = a @ x + x
        y[isolated] = 0.0
        total = y.sum()
        y /= total
        if np.abs(y - x).sum() < tol:
            x = y
            break
        x = y
    x[isolated] = 0.0
    s = x.sum()
    if s > 0:
        x = x / s
    return x
