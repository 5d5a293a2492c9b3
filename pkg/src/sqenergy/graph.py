"""Simple undirected graphs and the constructors used throughout the package."""
from __future__ import annotations

from collections import deque
from itertools import combinations
from math import comb
from typing import Iterable, Optional

import numpy as np


class Graph:
    """Immutable simple undirected graph on vertices ``0..n-1``.

    The adjacency matrix is the primary store (``uint8``, read-only), which
    gives O(1) adjacency queries and feeds the spectral code without copies.
    """

    __slots__ = ("_adj", "_edges", "_m")

    def __init__(self, n: int, edges: Iterable[tuple[int, int]] = ()):
        if n < 0:
            raise ValueError(f"vertex count must be >= 0, got {n}")
        adj = np.zeros((n, n), dtype=np.uint8)
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u}, {v}) out of range for n={n}")
            if adj[u, v]:
                raise ValueError(f"duplicate edge ({u}, {v})")
            adj[u, v] = adj[v, u] = 1
        self._set(adj)

    def _set(self, adj: np.ndarray) -> None:
        adj.setflags(write=False)
        self._adj = adj
        self._edges = None
        self._m = int(adj.sum()) // 2

    @classmethod
    def from_adjacency(cls, adj, *, check: bool = True) -> "Graph":
        a = np.array(adj, dtype=np.uint8, copy=True)
        if check:
            if a.ndim != 2 or a.shape[0] != a.shape[1]:
                raise ValueError("adjacency matrix must be square")
            if np.any(a > 1) or np.any(np.diagonal(a)) or not np.array_equal(a, a.T):
                raise ValueError("adjacency matrix must be symmetric 0/1 with zero diagonal")
        g = cls.__new__(cls)
        g._set(a)
        return g

    @property
    def n(self) -> int:
        return self._adj.shape[0]

    @property
    def m(self) -> int:
        return self._m

    @property
    def adjacency(self) -> np.ndarray:
        return self._adj

    @property
    def edges(self) -> frozenset[tuple[int, int]]:
        if self._edges is None:
            us, vs = np.nonzero(np.triu(self._adj, 1))
            self._edges = frozenset(zip(us.tolist(), vs.tolist()))
        return self._edges

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self._adj[u, v])

    def neighbors(self, v: int) -> list[int]:
        return np.flatnonzero(self._adj[v]).tolist()

    def degrees(self) -> np.ndarray:
        return self._adj.sum(axis=1, dtype=np.int64)

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self._adj.shape == other._adj.shape and np.array_equal(self._adj, other._adj)

    def __hash__(self) -> int:
        return hash((self.n, self._adj.tobytes()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"

    def __reduce__(self):
        return (Graph.from_adjacency, (np.array(self._adj),))


# constructors -------------------------------------------------------------

def make_complete(n: int) -> Graph:
    if n < 1:
        raise ValueError("complete graph needs n >= 1")
    return Graph.from_adjacency(np.ones((n, n), dtype=np.uint8) - np.eye(n, dtype=np.uint8), check=False)


def make_complete_bipartite(a: int, b: int) -> Graph:
    if a < 1 or b < 1:
        raise ValueError("complete bipartite graph needs a, b >= 1")
    adj = np.zeros((a + b, a + b), dtype=np.uint8)
    adj[:a, a:] = 1
    adj[a:, :a] = 1
    return Graph.from_adjacency(adj, check=False)


def make_cycle(n: int) -> Graph:
    if n < 3:
        raise ValueError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def make_path(n: int) -> Graph:
    if n < 1:
        raise ValueError("path needs n >= 1")
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def make_star(n: int) -> Graph:
    """Star on ``n`` vertices, i.e. K_{1,n-1} with centre 0."""
    if n < 1:
        raise ValueError("star needs n >= 1")
    return Graph(n, [(0, i) for i in range(1, n)])


def make_empty(n: int) -> Graph:
    return Graph(n)


def make_kneser(n: int, k: int) -> Graph:
    """Kneser graph K(n, k): k-subsets of {0..n-1}, adjacent when disjoint.

    Vertices are numbered in ``itertools.combinations`` order.
    """
    if k < 1 or n < 2 * k:
        raise ValueError(f"Kneser graph needs n >= 2k >= 2, got n={n}, k={k}")
    if n > 62:
        # subsets are packed into int64 bitmasks
        raise ValueError("Kneser construction supports n <= 62")
    masks = np.array([sum(1 << i for i in c) for c in combinations(range(n), k)], dtype=np.int64)
    adj = ((masks[:, None] & masks[None, :]) == 0).astype(np.uint8)
    return Graph.from_adjacency(adj, check=False)


def blowup(g: Graph, t: int) -> Graph:
    """t-blowup: vertex v becomes ``v*t .. v*t+t-1``; each edge becomes K_{t,t}."""
    if t < 1:
        raise ValueError("blowup factor must be >= 1")
    adj = np.kron(g.adjacency, np.ones((t, t), dtype=np.uint8))
    return Graph.from_adjacency(adj, check=False)


def disjoint_union(g: Graph, h: Graph) -> Graph:
    n = g.n + h.n
    adj = np.zeros((n, n), dtype=np.uint8)
    adj[: g.n, : g.n] = g.adjacency
    adj[g.n:, g.n:] = h.adjacency
    return Graph.from_adjacency(adj, check=False)


def disjoint_copies(g: Graph, count: int) -> Graph:
    if count < 1:
        raise ValueError("need at least one copy")
    adj = np.kron(np.eye(count, dtype=np.uint8), g.adjacency)
    return Graph.from_adjacency(adj, check=False)


def complement(g: Graph) -> Graph:
    n = g.n
    adj = (1 - g.adjacency) - np.eye(n, dtype=np.uint8)
    return Graph.from_adjacency(adj.astype(np.uint8), check=False)


def relabel(g: Graph, perm) -> Graph:
    """Graph with vertex ``v`` renamed to ``perm[v]``."""
    perm = np.asarray(perm, dtype=np.int64)
    inv = np.empty_like(perm)
    inv[perm] = np.arange(len(perm))
    return Graph.from_adjacency(g.adjacency[np.ix_(inv, inv)], check=False)


# structure ----------------------------------------------------------------

def components(g: Graph) -> list[list[int]]:
    seen = np.zeros(g.n, dtype=bool)
    out = []
    adj = g.adjacency
    for s in range(g.n):
        if seen[s]:
            continue
        seen[s] = True
        comp = [s]
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in np.flatnonzero(adj[u]):
                if not seen[w]:
                    seen[w] = True
                    comp.append(int(w))
                    queue.append(w)
        out.append(sorted(comp))
    return out


def is_connected(g: Graph) -> bool:
    if g.n == 0:
        raise ValueError("connectivity is undefined for the empty graph")
    return len(components(g)) == 1


def degree_sequence(g: Graph) -> list[int]:
    return g.degrees().tolist()


def is_regular(g: Graph) -> Optional[int]:
    """Common degree if ``g`` is regular, otherwise ``None``."""
    d = g.degrees()
    if len(d) == 0:
        return None
    return int(d[0]) if np.all(d == d[0]) else None


def is_bipartite(g: Graph) -> bool:
    colour = -np.ones(g.n, dtype=np.int64)
    adj = g.adjacency
    for s in range(g.n):
        if colour[s] >= 0:
            continue
        colour[s] = 0
        queue = deque([s])
        while queue:
            u = queue.popleft()
            for w in np.flatnonzero(adj[u]):
                if colour[w] < 0:
                    colour[w] = 1 - colour[u]
                    queue.append(w)
                elif colour[w] == colour[u]:
                    return False
    return True


def induced_subgraph(g: Graph, vertices) -> Graph:
    idx = np.asarray(vertices, dtype=np.int64)
    return Graph.from_adjacency(g.adjacency[np.ix_(idx, idx)], check=False)


def is_complete(g: Graph) -> bool:
    return g.m == comb(g.n, 2)
