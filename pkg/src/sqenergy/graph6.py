"""graph6 reader/writer.

Format: a vertex-count header followed by the upper triangle of the adjacency
matrix in column order (0,1),(0,2),(1,2),(0,3),... packed big-endian six bits
per byte, each byte offset by 63.  Trailing padding bits must be zero.
"""
from __future__ import annotations

from typing import IO, Iterator

import numpy as np

from .graph import Graph

HEADER = ">>graph6<<"
_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.uint8)


class Graph6Error(ValueError):
    """Malformed graph6 input; ``lineno`` is set when reading a stream."""

    def __init__(self, msg: str, lineno: int | None = None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {msg}" if lineno is not None else msg)


def _encode_n(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return bytes([n + 63])
    if n <= 258047:
        return b"~" + bytes(((n >> s) & 63) + 63 for s in (12, 6, 0))
    if n <= 68719476735:
        return b"~~" + bytes(((n >> s) & 63) + 63 for s in (30, 24, 18, 12, 6, 0))
    raise ValueError(f"vertex count {n} too large for graph6")


def _decode_n(data: bytes) -> tuple[int, int]:
    """Return (n, header length)."""
    if not data:
        raise Graph6Error("empty graph6 string")
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise Graph6Error("truncated 8-byte vertex count")
        n = 0
        for b in data[2:8]:
            n = (n << 6) | (b - 63)
        return n, 8
    if len(data) < 4:
        raise Graph6Error("truncated 4-byte vertex count")
    n = 0
    for b in data[1:4]:
        n = (n << 6) | (b - 63)
    return n, 4


def _column_pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    # tril_indices walks (1,0),(2,0),(2,1),(3,0),... i.e. (v,u) ordered by v then u
    v, u = np.tril_indices(n, -1)
    return u, v


def encode_graph6(g: Graph, header: bool = False) -> str:
    n = g.n
    u, v = _column_pairs(n)
    bits = g.adjacency[u, v]
    pad = (-len(bits)) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)])
    body = (bits.reshape(-1, 6) @ _WEIGHTS).astype(np.uint8) + 63
    out = _encode_n(n) + body.tobytes()
    text = out.decode("ascii")
    return HEADER + text if header else text


def parse_graph6(line: str | bytes) -> Graph:
    if isinstance(line, str):
        line = line.strip()
        if line.startswith(HEADER):
            line = line[len(HEADER):]
        try:
            data = line.encode("ascii")
        except UnicodeEncodeError:
            raise Graph6Error("non-ASCII character in graph6 string") from None
    else:
        data = line.strip()
        if data.startswith(HEADER.encode()):
            data = data[len(HEADER):]
    if not data:
        raise Graph6Error("empty graph6 string")
    raw = np.frombuffer(data, dtype=np.uint8)
    if np.any(raw < 63) or np.any(raw > 126):
        bad = int(raw[(raw < 63) | (raw > 126)][0])
        raise Graph6Error(f"byte {bad} outside [63, 126]")
    n, hlen = _decode_n(data)
    nbits = n * (n - 1) // 2
    nbytes = -(-nbits // 6)
    body = raw[hlen:]
    if len(body) != nbytes:
        raise Graph6Error(f"expected {nbytes} adjacency bytes for n={n}, got {len(body)}")
    bits = np.unpackbits((body - 63).astype(np.uint8)[:, None], axis=1)[:, 2:].ravel()
    if np.any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits")
    adj = np.zeros((n, n), dtype=np.uint8)
    u, v = _column_pairs(n)
    adj[u, v] = bits[:nbits]
    adj[v, u] = bits[:nbits]
    return Graph.from_adjacency(adj, check=False)


def iter_graph6(stream: IO[str]) -> Iterator[Graph]:
    """Yield graphs from a graph6 text stream, skipping blank lines."""
    for lineno, line in enumerate(stream, start=1):
        line = line.strip()
        if not line:
            continue
        try:
            yield parse_graph6(line)
        except Graph6Error as exc:
            raise Graph6Error(str(exc), lineno) from None


def read_graph6_file(path) -> list[Graph]:
    with open(path, "r", encoding="latin-1") as fh:
        return list(iter_graph6(fh))


def write_graph6_file(graphs, path) -> None:
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(encode_graph6(g) + "\n")
