"""Exact chromatic number for small graphs."""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._accel import njit
from .graph import Graph

MAX_CHROMATIC_N = 16


@dataclass(frozen=True)
class ChromaticResult:
    chi: int
    coloring: tuple[int, ...]   # colour of each vertex, 0-based


@njit
def _greedy_clique(adj):
    n = adj.shape[0]
    best = 1 if n > 0 else 0
    members = np.zeros(n, dtype=np.int64)
    for start in range(n):
        size = 1
        members[0] = start
        for v in range(n):
            if v == start:
                continue
            ok = True
            for i in range(size):
                if adj[v, members[i]] == 0:
                    ok = False
                    break
            if ok:
                members[size] = v
                size += 1
        if size > best:
            best = size
    return best


@njit
def _dsatur(adj):
    n = adj.shape[0]
    colors = np.full(n, -1, dtype=np.int64)
    seen = np.zeros((n, n + 1), dtype=np.bool_)
    sat = np.zeros(n, dtype=np.int64)
    deg = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for w in range(n):
            deg[v] += adj[v, w]
    used = 0
    for _ in range(n):
        pick = -1
        for v in range(n):
            if colors[v] >= 0:
                continue
            if pick < 0 or sat[v] > sat[pick] or (sat[v] == sat[pick] and deg[v] > deg[pick]):
                pick = v
        c = 0
        while seen[pick, c]:
            c += 1
        colors[pick] = c
        if c + 1 > used:
            used = c + 1
        for w in range(n):
            if adj[pick, w] and not seen[w, c]:
                seen[w, c] = True
                sat[w] += 1
    return used, colors


@njit
def _k_colorable(adj, order, k, colors):
    """Backtracking k-colouring along ``order``; fills ``colors`` on success."""
    n = adj.shape[0]
    for i in range(n):
        colors[i] = -1
    if n == 0:
        return True
    pos = 0
    trial = np.zeros(n, dtype=np.int64)
    maxused = np.zeros(n + 1, dtype=np.int64)  # colours in use before position i
    while pos >= 0:
        if pos == n:
            return True
        v = order[pos]
        c = trial[pos]
        # symmetry breaking: never open more than one new colour at a time
        limit = min(k, maxused[pos] + 1)
        placed = False
        while c < limit:
            ok = True
            for i in range(pos):
                w = order[i]
                if colors[w] == c and adj[v, w]:
                    ok = False
                    break
            if ok:
                colors[v] = c
                trial[pos] = c + 1
                maxused[pos + 1] = max(maxused[pos], c + 1)
                pos += 1
                if pos < n:
                    trial[pos] = 0
                placed = True
                break
            c += 1
        if not placed:
            colors[v] = -1
            trial[pos] = 0
            pos -= 1
            if pos >= 0:
                colors[order[pos]] = -1
    return False


@njit
def _chromatic(adj):
    n = adj.shape[0]
    if n == 0:
        return 0, np.zeros(0, dtype=np.int64)
    lower = _greedy_clique(adj)
    upper, best = _dsatur(adj)
    deg = np.zeros(n, dtype=np.int64)
    for v in range(n):
        for w in range(n):
            deg[v] += adj[v, w]
    order = np.argsort(-deg, kind="mergesort")
    colors = np.empty(n, dtype=np.int64)
    for k in range(lower, upper):
        if _k_colorable(adj, order, k, colors):
            return k, colors.copy()
    return upper, best


def chromatic_number(g: Graph) -> ChromaticResult:
    """Exact chromatic number by clique/DSATUR bounds and backtracking (n <= 16)."""
    if g.n > MAX_CHROMATIC_N:
        raise ValueError(f"exact chromatic number limited to n <= {MAX_CHROMATIC_N}, got {g.n}")
    chi, colors = _chromatic(np.ascontiguousarray(g.adjacency))
    return ChromaticResult(int(chi), tuple(int(c) for c in colors))


def is_proper_coloring(g: Graph, coloring) -> bool:
    c = np.asarray(coloring)
    if len(c) != g.n or np.any(c < 0):
        return False
    us, vs = np.nonzero(np.triu(g.adjacency, 1))
    return bool(np.all(c[us] != c[vs]))
