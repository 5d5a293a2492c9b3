"""Canonical labelling and isomorph-free enumeration of small graphs.

The canonical form of a graph is the lexicographically smallest upper-triangle
bit string (graph6 column order) over all vertex orderings.  Two kernels
compute it:

* ``_canon_dfs`` -- depth-first search over orderings, filling one column of
  the bit string per level and pruning any prefix already larger than the
  best complete string; numba-compiled when available.
* ``_canon_numpy`` -- scores every permutation at once in chunks.

Both also report which vertices can be placed last by some minimising
ordering; that set is the automorphism orbit used by the canonical
augmentation test in :func:`enumerate_nonisomorphic`.
"""
from __future__ import annotations

from itertools import islice, permutations
from typing import Iterator

import numpy as np

from . import _accel
from ._accel import njit
from .graph import Graph

MAX_CANON_N = 10
MAX_ENUM_N = 7
_CHUNK = 1 << 16


@njit
def _canon_dfs(adj):
    n = adj.shape[0]
    best_col = np.zeros(n, dtype=np.int64)
    best_perm = np.arange(n)
    cur_col = np.zeros(n, dtype=np.int64)
    perm = np.zeros(n, dtype=np.int64)
    used = np.zeros(n, dtype=np.bool_)
    nxt = np.zeros(n + 1, dtype=np.int64)
    # 0: prefix equals best so far, 1: prefix already strictly smaller
    state = np.zeros(n + 1, dtype=np.int64)
    last = np.zeros(n, dtype=np.bool_)
    have_best = False
    depth = 0
    while depth >= 0:
        if depth == n:
            if n > 0:
                if (not have_best) or state[n] == 1:
                    have_best = True
                    for j in range(n):
                        best_col[j] = cur_col[j]
                        best_perm[j] = perm[j]
                        last[j] = False
                    for j in range(n + 1):
                        state[j] = 0
                last[perm[n - 1]] = True
            depth -= 1
            if depth >= 0:
                used[perm[depth]] = False
            continue
        w = nxt[depth]
        while w < n and used[w]:
            w += 1
        if w >= n:
            depth -= 1
            if depth >= 0:
                used[perm[depth]] = False
            continue
        nxt[depth] = w + 1
        col = 0
        for i in range(depth):
            col = (col << 1) | adj[perm[i], w]
        ns = 0
        if have_best:
            if state[depth] == 0:
                if col > best_col[depth]:
                    continue
                if col < best_col[depth]:
                    ns = 1
            else:
                ns = 1
        cur_col[depth] = col
        perm[depth] = w
        used[w] = True
        state[depth + 1] = ns
        depth += 1
        nxt[depth] = 0
    code = 0
    for j in range(n):
        code = (code << j) | best_col[j]
    return code, best_perm, last


def _pair_order(n: int) -> tuple[np.ndarray, np.ndarray]:
    v, u = np.tril_indices(n, -1)
    return u, v


def _canon_numpy(adj: np.ndarray):
    n = adj.shape[0]
    if n == 0:
        return 0, np.zeros(0, dtype=np.int64), np.zeros(0, dtype=bool)
    u, v = _pair_order(n)
    nbits = len(u)
    weights = np.left_shift(np.int64(1), np.arange(nbits - 1, -1, -1, dtype=np.int64))
    best = None
    best_perm = None
    last = np.zeros(n, dtype=bool)
    it = permutations(range(n))
    while True:
        block = np.array(list(islice(it, _CHUNK)), dtype=np.int64)
        if block.size == 0:
            break
        bits = adj[block[:, u], block[:, v]].astype(np.int64)
        codes = bits @ weights
        lo = int(codes.min())
        hits = codes == lo
        if best is None or lo < best:
            best = lo
            best_perm = block[int(np.argmax(hits))]
            last[:] = False
        if lo == best:
            last[np.unique(block[hits, n - 1])] = True
    return best, best_perm, last


def canonical_labelling(g: Graph, *, use_numba: bool | None = None):
    """Return ``(code, order, last_orbit)`` for ``g``.

    ``order[i]`` is the original vertex placed at position ``i`` of the
    canonical ordering; ``last_orbit`` flags every vertex that some minimising
    ordering puts last.
    """
    if g.n > MAX_CANON_N:
        raise ValueError(f"canonical form limited to n <= {MAX_CANON_N}, got {g.n}")
    if use_numba is None:
        use_numba = _accel.USE_NUMBA
    adj = np.ascontiguousarray(g.adjacency)
    if use_numba:
        code, order, last = _canon_dfs(adj)
    else:
        code, order, last = _canon_numpy(adj)
    return int(code), np.asarray(order, dtype=np.int64), np.asarray(last, dtype=bool)


def canonical_code(g: Graph) -> int:
    return canonical_labelling(g)[0]


def canonical_form(g: Graph) -> str:
    """Minimal adjacency bit string over all vertex orderings (n <= 10).

    Forms are only comparable between graphs with the same vertex count.
    """
    code = canonical_code(g)
    nbits = g.n * (g.n - 1) // 2
    return format(code, f"0{nbits}b") if nbits else ""


def graph_from_code(n: int, code: int) -> Graph:
    u, v = _pair_order(n)
    nbits = len(u)
    bits = np.array([(code >> (nbits - 1 - i)) & 1 for i in range(nbits)], dtype=np.uint8)
    adj = np.zeros((n, n), dtype=np.uint8)
    adj[u, v] = bits
    adj[v, u] = bits
    return Graph.from_adjacency(adj, check=False)


def canonical_graph(g: Graph) -> Graph:
    return graph_from_code(g.n, canonical_code(g))


def are_isomorphic(g: Graph, h: Graph) -> bool:
    return g.n == h.n and g.m == h.m and canonical_code(g) == canonical_code(h)


@njit
def _augment_dfs(parent):
    """Canonical codes of all one-vertex extensions of ``parent``; -1 where rejected."""
    n = parent.shape[0]
    total = 1 << n
    out = np.full(total, -1, dtype=np.int64)
    adj = np.zeros((n + 1, n + 1), dtype=np.uint8)
    adj[:n, :n] = parent
    for mask in range(total):
        for i in range(n):
            b = (mask >> i) & 1
            adj[i, n] = b
            adj[n, i] = b
        code, _, last = _canon_dfs(adj)
        if last[n]:
            out[mask] = code
    return out


def _augment_numpy(parent: np.ndarray) -> np.ndarray:
    n = parent.shape[0]
    out = np.full(1 << n, -1, dtype=np.int64)
    adj = np.zeros((n + 1, n + 1), dtype=np.uint8)
    adj[:n, :n] = parent
    for mask in range(1 << n):
        bits = (mask >> np.arange(n)) & 1
        adj[:n, n] = bits
        adj[n, :n] = bits
        code, _, last = _canon_numpy(adj)
        if last[n]:
            out[mask] = code
    return out


def _next_level(parents: list[np.ndarray], use_numba: bool) -> list[np.ndarray]:
    size = parents[0].shape[0] + 1
    augment = _augment_dfs if use_numba else _augment_numpy
    codes: set[int] = set()
    for parent in parents:
        # rejected extensions (-1) fail the canonical augmentation test
        found = augment(np.ascontiguousarray(parent))
        codes.update(found[found >= 0].tolist())
    return [graph_from_code(size, c).adjacency for c in sorted(codes)]


def enumerate_nonisomorphic(n: int, *, max_n: int = MAX_ENUM_N,
                            use_numba: bool | None = None) -> Iterator[Graph]:
    """Yield one canonically labelled representative per isomorphism class on n vertices.

    Graphs are built by vertex augmentation, keeping an extension only if
    the added vertex lies in the orbit that the canonical ordering places
    last; surviving siblings are deduplicated by canonical code.  Output is
    ordered by canonical code.  ``max_n`` is the size budget (default 7,
    hard ceiling 10).
    """
    if not 1 <= n <= min(max_n, MAX_CANON_N):
        raise ValueError(f"enumeration supports 1 <= n <= {min(max_n, MAX_CANON_N)}, got {n}")
    if use_numba is None:
        use_numba = _accel.USE_NUMBA
    level = [np.zeros((1, 1), dtype=np.uint8)]
    for _ in range(n - 1):
        level = _next_level(level, use_numba)
    for adj in level:
        yield Graph.from_adjacency(adj, check=False)


def enumerate_bruteforce(n: int) -> list[Graph]:
    """Dedupe all 2^(n choose 2) labelled graphs by canonical form (n <= 6)."""
    if not 1 <= n <= 6:
        raise ValueError("brute-force enumeration supports 1 <= n <= 6")
    u, v = _pair_order(n)
    nbits = len(u)
    codes = set()
    for word in range(1 << nbits):
        adj = np.zeros((n, n), dtype=np.uint8)
        bits = [(word >> (nbits - 1 - i)) & 1 for i in range(nbits)]
        adj[u, v] = bits
        adj[v, u] = bits
        codes.add(int(_canon_dfs(adj)[0]) if _accel.USE_NUMBA else _canon_numpy(adj)[0])
    return [graph_from_code(n, c) for c in sorted(codes)]
