"""graph6 codec: the ASCII interchange format for simple graphs.

One graph per line.  The short form stores the order in a single byte
(``n + 63`` for ``n <= 62``); the long form is ``'~'`` followed by three
bytes carrying an 18-bit order (``63 <= n <= 258047``).  The upper triangle
of the adjacency matrix follows column by column, packed into 6-bit groups
offset by 63.  Padding bits must be zero and every byte must lie in
``[63, 126]``; violations raise :class:`Graph6Error` rather than guessing.
"""
from __future__ import annotations

from functools import lru_cache

import numpy as np

from .graphs import MAX_VERTICES, Graph

__all__ = ["Graph6Error", "encode", "decode"]

HEADER = ">>graph6<<"

_WEIGHTS = np.array([32, 16, 8, 4, 2, 1], dtype=np.uint16)


class Graph6Error(ValueError):
    """Malformed or unsupported graph6 input."""


@lru_cache(maxsize=256)
def _pair_order(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Row/column indices of the upper triangle in graph6 bit order
    (column by column): (0,1), (0,2), (1,2), (0,3), ..."""
    rows = np.concatenate([np.arange(j) for j in range(1, n)]) if n > 1 else np.empty(0, np.int64)
    cols = np.repeat(np.arange(1, n), np.arange(1, n)) if n > 1 else np.empty(0, np.int64)
    return rows.astype(np.int64), cols.astype(np.int64)


def encode(g: Graph) -> str:
    """Encode a graph as one graph6 line (no trailing newline, no header)."""
    n = g.n
    if n > 258047:
        raise Graph6Error(f"order {n} exceeds the graph6 long-form limit 258047")
    if n <= 62:
        head = bytes([n + 63])
    else:
        head = bytes([126, 63 + (n >> 12), 63 + ((n >> 6) & 63), 63 + (n & 63)])
    rows, cols = _pair_order(n)
    if rows.size:
        dense = np.zeros((n, n), dtype=bool)
        nbytes = (n + 7) // 8
        for v in range(n):
            row = np.frombuffer(g.neighbors_mask(v).to_bytes(nbytes, "little"), np.uint8)
            dense[v, :] = np.unpackbits(row, bitorder="little", count=n).astype(bool)
        bits = dense[rows, cols].astype(np.uint16)
    else:
        bits = np.empty(0, dtype=np.uint16)
    pad = (-bits.size) % 6
    if pad:
        bits = np.concatenate([bits, np.zeros(pad, np.uint16)])
    groups = bits.reshape(-1, 6) @ _WEIGHTS
    return (head + bytes((groups + 63).astype(np.uint8).tolist())).decode("ascii")


def decode(text: str | bytes) -> Graph:
    """Decode one graph6 line (an optional ``>>graph6<<`` header is allowed)."""
    if isinstance(text, str):
        try:
            raw = text.encode("ascii")
        except UnicodeEncodeError as exc:
            raise Graph6Error(f"graph6 input is not ASCII: {exc}") from None
    else:
        raw = bytes(text)
    raw = raw.strip(b"\r\n")
    if raw.startswith(HEADER.encode("ascii")):
        raw = raw[len(HEADER):]
    if not raw:
        raise Graph6Error("empty graph6 line")
    for b in raw:
        if not 63 <= b <= 126:
            raise Graph6Error(f"byte {b} outside the printable graph6 range [63, 126]")
    if raw[0] == 126:
        if len(raw) >= 2 and raw[1] == 126:
            raise Graph6Error("graph6 very-long form (n > 258047) is not supported")
        if len(raw) < 4:
            raise Graph6Error("truncated graph6 long-form order")
        n = ((raw[1] - 63) << 12) | ((raw[2] - 63) << 6) | (raw[3] - 63)
        if n < 63:
            raise Graph6Error(f"non-canonical long-form order {n} (short form required)")
        body = raw[4:]
    else:
        n = raw[0] - 63
        body = raw[1:]
    if n > MAX_VERTICES:
        raise Graph6Error(f"order {n} exceeds the supported cap {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    expect = (nbits + 5) // 6
    if len(body) != expect:
        raise Graph6Error(
            f"bad graph6 length: order {n} needs {expect} data bytes, got {len(body)}"
        )
    if nbits == 0:
        return Graph(n, (0,) * max(n, 0))
    vals = np.frombuffer(body, np.uint8).astype(np.uint16) - 63
    bits = ((vals[:, None] >> np.array([5, 4, 3, 2, 1, 0])) & 1).ravel()
    if bits[nbits:].any():
        raise Graph6Error("nonzero padding bits")
    rows, cols = _pair_order(n)
    adj = [0] * n
    hits = np.flatnonzero(bits[:nbits])
    for idx in hits.tolist():
        u = int(rows[idx])
        v = int(cols[idx])
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))
