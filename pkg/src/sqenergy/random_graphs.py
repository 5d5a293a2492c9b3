"""Seeded random graph samplers.

All randomness goes through ``numpy.random.Generator(PCG64(seed))``.  PCG64
output for a given seed is fixed by numpy's stream-compatibility policy, so
samples are reproducible across runs and platforms.
"""
from __future__ import annotations

import hashlib

import numpy as np

from .graph import Graph

_MASK64 = (1 << 64) - 1
_GOLDEN = 0x9E3779B97F4A7C15


def rng_for(seed: int) -> np.random.Generator:
    return np.random.Generator(np.random.PCG64(int(seed) & _MASK64))


def sample_gnp(n: int, p: float, seed: int) -> Graph:
    """Erdős–Rényi G(n, p).

    Pairs are visited in lexicographic order (0,1),(0,2),...,(n-2,n-1) and
    each consumes exactly one ``Generator.random()`` double; the pair is an
    edge iff that draw is < p.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p must lie in [0, 1], got {p}")
    if n < 0:
        raise ValueError("n must be >= 0")
    rows, cols = np.triu_indices(n, 1)
    draws = rng_for(seed).random(len(rows))
    hit = draws < p
    adj = np.zeros((n, n), dtype=np.uint8)
    adj[rows[hit], cols[hit]] = 1
    adj[cols[hit], rows[hit]] = 1
    return Graph.from_adjacency(adj, check=False)


def derive_seed(seed: int, index: int, p: float) -> int:
    """Per-sample seed: ``seed XOR (index * 0x9E3779B97F4A7C15 mod 2^64) XOR H(p)``.

    ``H(p)`` is the first 8 bytes (big-endian) of BLAKE2b-64 over the ASCII
    text ``format(p, ".12g")``.
    """
    digest = hashlib.blake2b(format(float(p), ".12g").encode("ascii"), digest_size=8).digest()
    return (int(seed) ^ ((int(index) * _GOLDEN) & _MASK64) ^ int.from_bytes(digest, "big")) & _MASK64


class _Triangulation:
    """Oriented triangle faces with a half-edge -> face lookup."""

    def __init__(self):
        self.faces: list[tuple[int, int, int]] = []
        self.half: dict[tuple[int, int], int] = {}

    def _put(self, idx: int, face: tuple[int, int, int]) -> None:
        a, b, c = face
        if idx == len(self.faces):
            self.faces.append(face)
        else:
            self.faces[idx] = face
        self.half[(a, b)] = idx
        self.half[(b, c)] = idx
        self.half[(c, a)] = idx

    def _drop(self, idx: int) -> None:
        a, b, c = self.faces[idx]
        for e in ((a, b), (b, c), (c, a)):
            del self.half[e]

    def add(self, face) -> None:
        self._put(len(self.faces), face)

    def insert(self, idx: int, v: int) -> None:
        a, b, c = self.faces[idx]
        self._drop(idx)
        self._put(idx, (a, b, v))
        self.add((b, c, v))
        self.add((c, a, v))

    def flip(self, u: int, v: int, edges: set) -> bool:
        """Replace edge uv by the opposite diagonal xy; refuse if xy already exists."""
        f1 = self.half[(u, v)]
        f2 = self.half[(v, u)]
        x = next(w for w in self.faces[f1] if w != u and w != v)
        y = next(w for w in self.faces[f2] if w != u and w != v)
        if x == y or (min(x, y), max(x, y)) in edges:
            return False
        self._drop(f1)
        self._drop(f2)
        self._put(f1, (u, y, x))
        self._put(f2, (y, v, x))
        edges.discard((min(u, v), max(u, v)))
        edges.add((min(x, y), max(x, y)))
        return True


def generate_maximal_planar(n: int, seed: int, flips: int = 0) -> Graph:
    """Random maximal planar graph (triangulation of the sphere) on n >= 3 vertices.

    Starts from the triangle with its two faces, inserts vertices 3..n-1
    one at a time into a uniformly chosen face (an Apollonian step; the first
    insertion yields K_4), then makes ``flips`` flip attempts, each on a
    uniformly chosen face and one of its three edges; attempts that would
    create a multi-edge are skipped.  The result has exactly 3(n-2) edges and
    is planar by construction.  Only a subfamily of all triangulations is
    reachable without flips.
    """
    if n < 3:
        raise ValueError("maximal planar graphs need n >= 3")
    if flips < 0:
        raise ValueError("flip count must be >= 0")
    rng = rng_for(seed)
    tri = _Triangulation()
    tri.add((0, 1, 2))
    tri.add((0, 2, 1))
    edges = {(0, 1), (0, 2), (1, 2)}
    for v in range(3, n):
        idx = int(rng.integers(len(tri.faces)))
        a, b, c = tri.faces[idx]
        tri.insert(idx, v)
        edges.update({(a, v), (b, v), (c, v)})
    for _ in range(flips):
        idx = int(rng.integers(len(tri.faces)))
        k = int(rng.integers(3))
        face = tri.faces[idx]
        tri.flip(face[k], face[(k + 1) % 3], edges)
    return Graph(n, sorted(edges))
