"""Immutable labeled graphs over bitmask adjacency, plus the constructions
the verification campaigns are built from.

Vertices are ``0..n-1``.  Each vertex keeps its neighborhood as one Python
integer bitmask, which makes neighborhood algebra (induced degrees, component
sweeps, complement) cheap at every order we care about while keeping the type
hashable and trivially copy-safe.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_VERTICES = 1024

__all__ = [
    "MAX_VERTICES",
    "Graph",
    "GnkParams",
    "empty",
    "complete",
    "from_edges",
    "join",
    "disjoint_union",
    "complement",
    "add_edge",
    "remove_edge",
    "relabel",
    "induced_subgraph",
    "random_graph",
    "build_gnk",
    "build_base_family_member",
    "gnk_blocks",
]


def _check_order(n: int) -> None:
    if not isinstance(n, int) or isinstance(n, bool):
        raise TypeError(f"vertex count must be an int, got {type(n).__name__}")
    if n < 0:
        raise ValueError(f"vertex count must be non-negative, got {n}")
    if n > MAX_VERTICES:
        raise ValueError(f"vertex count {n} exceeds the supported cap {MAX_VERTICES}")


def _mask_vertices(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        b = mask & (-mask)
        out.append(b.bit_length() - 1)
        mask ^= b
    return tuple(out)


class Graph:
    """A simple undirected graph with vertex set ``0..n-1``.

    Instances are conventionally immutable: all edits go through the
    module-level functions (:func:`add_edge`, :func:`complement`, ...) which
    return new graphs.  Equality and hashing are on the labeled adjacency, so
    graphs work as dict keys and in sets.
    """

    __slots__ = ("n", "_adj")

    def __init__(self, n: int, adj: tuple[int, ...]):
        self.n = n
        self._adj = adj

    # -- basic queries ----------------------------------------------------

    def neighbors_mask(self, v: int) -> int:
        return self._adj[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        return _mask_vertices(self._adj[v])

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def degrees(self) -> tuple[int, ...]:
        return tuple(a.bit_count() for a in self._adj)

    def degree_in(self, v: int, mask: int) -> int:
        """Degree of ``v`` into the vertex subset given as a bitmask."""
        return (self._adj[v] & mask).bit_count()

    def min_degree(self) -> int:
        if self.n == 0:
            raise ValueError("minimum degree of the order-0 graph is undefined")
        return min(a.bit_count() for a in self._adj)

    def max_degree(self) -> int:
        if self.n == 0:
            raise ValueError("maximum degree of the order-0 graph is undefined")
        return max(a.bit_count() for a in self._adj)

    @property
    def m(self) -> int:
        """Number of edges."""
        return sum(a.bit_count() for a in self._adj) // 2

    def has_edge(self, u: int, v: int) -> bool:
        self._check_vertex(u)
        self._check_vertex(v)
        return bool((self._adj[u] >> v) & 1)

    def edges(self) -> Iterator[tuple[int, int]]:
        """Yield edges as ``(u, v)`` with ``u < v`` in lexicographic order."""
        for u in range(self.n):
            rest = self._adj[u] >> (u + 1)
            v = u + 1
            while rest:
                if rest & 1:
                    yield (u, v)
                rest >>= 1
                v += 1

    def vertex_mask(self) -> int:
        return (1 << self.n) - 1

    def _check_vertex(self, v: int) -> None:
        if not isinstance(v, int) or isinstance(v, bool):
            raise TypeError(f"vertex must be an int, got {type(v).__name__}")
        if not 0 <= v < self.n:
            raise ValueError(f"vertex {v} out of range for order {self.n}")

    # -- connectivity -----------------------------------------------------

    def component_masks(self, within: int | None = None) -> list[int]:
        """Connected components (as bitmasks) of the subgraph induced on
        ``within`` (default: the whole vertex set), ordered by least vertex."""
        rem = self.vertex_mask() if within is None else within
        comps = []
        while rem:
            comp = rem & (-rem)
            frontier = comp
            while True:
                nxt = 0
                f = frontier
                while f:
                    b = f & (-f)
                    nxt |= self._adj[b.bit_length() - 1]
                    f ^= b
                nxt &= rem & ~comp
                if not nxt:
                    break
                comp |= nxt
                frontier = nxt
            comps.append(comp)
            rem &= ~comp
        return comps

    def components(self) -> list[tuple[int, ...]]:
        return [_mask_vertices(c) for c in self.component_masks()]

    def is_connected(self) -> bool:
        if self.n == 0:
            return True
        return len(self.component_masks()) == 1

    # -- conversions ------------------------------------------------------

    def dense_adjacency(self) -> np.ndarray:
        """Dense float64 adjacency matrix."""
        n = self.n
        out = np.zeros((n, n), dtype=np.float64)
        nbytes = (n + 7) // 8
        for v in range(n):
            row = np.frombuffer(
                self._adj[v].to_bytes(nbytes, "little"), dtype=np.uint8
            )
            out[v, :] = np.unpackbits(row, bitorder="little", count=n)
        return out

    def adjacency_masks(self) -> np.ndarray:
        """Per-vertex masks as an int64 array (requires ``n <= 62``)."""
        if self.n > 62:
            raise ValueError("bitmask export requires at most 62 vertices")
        return np.array(self._adj, dtype=np.int64)

    def to_csr(self) -> tuple[np.ndarray, np.ndarray]:
        """Adjacency in CSR form: ``(indptr, indices)`` int64 arrays."""
        degs = np.array(self.degrees(), dtype=np.int64)
        indptr = np.zeros(self.n + 1, dtype=np.int64)
        np.cumsum(degs, out=indptr[1:])
        indices = np.empty(int(indptr[-1]), dtype=np.int64)
        pos = 0
        for v in range(self.n):
            for w in self.neighbors(v):
                indices[pos] = w
                pos += 1
        return indptr, indices

    # -- dunder -----------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


# -- constructors ---------------------------------------------------------


def empty(n: int) -> Graph:
    """Edgeless graph on ``n`` vertices."""
    _check_order(n)
    return Graph(n, (0,) * n)


def complete(n: int) -> Graph:
    """Complete graph on ``n`` vertices."""
    _check_order(n)
    full = (1 << n) - 1
    return Graph(n, tuple(full ^ (1 << v) for v in range(n)))


def from_edges(n: int, edges: Iterable[tuple[int, int]]) -> Graph:
    """Graph on ``n`` vertices with the given edge list.

    Rejects loops, duplicate edges and out-of-range endpoints.
    """
    _check_order(n)
    adj = [0] * n
    for u, v in edges:
        if not (0 <= u < n and 0 <= v < n):
            raise ValueError(f"edge ({u}, {v}) out of range for order {n}")
        if u == v:
            raise ValueError(f"loop at vertex {u} is not allowed")
        if (adj[u] >> v) & 1:
            raise ValueError(f"duplicate edge ({u}, {v})")
        adj[u] |= 1 << v
        adj[v] |= 1 << u
    return Graph(n, tuple(adj))


def join(g1: Graph, g2: Graph) -> Graph:
    """Graph join: disjoint union plus all edges between the two parts.

    ``g2``'s vertices are relabeled to ``g1.n .. g1.n+g2.n-1``.
    """
    n = g1.n + g2.n
    _check_order(n)
    full = (1 << n) - 1
    mask1 = (1 << g1.n) - 1
    mask2 = full ^ mask1
    adj = [0] * n
    for v in range(g1.n):
        adj[v] = g1._adj[v] | mask2
    for v in range(g2.n):
        adj[g1.n + v] = (g2._adj[v] << g1.n) | mask1
    return Graph(n, tuple(adj))


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    """Disjoint union, with ``g2`` relabeled to ``g1.n .. g1.n+g2.n-1``."""
    n = g1.n + g2.n
    _check_order(n)
    adj = [g1._adj[v] for v in range(g1.n)]
    adj.extend(g2._adj[v] << g1.n for v in range(g2.n))
    return Graph(n, tuple(adj))


def complement(g: Graph) -> Graph:
    full = (1 << g.n) - 1
    return Graph(g.n, tuple(full & ~(g._adj[v] | (1 << v)) for v in range(g.n)))


def add_edge(g: Graph, u: int, v: int) -> Graph:
    """New graph with edge ``uv`` added; rejects loops and existing edges."""
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v:
        raise ValueError(f"loop at vertex {u} is not allowed")
    if g.has_edge(u, v):
        raise ValueError(f"edge ({u}, {v}) already present")
    adj = list(g._adj)
    adj[u] |= 1 << v
    adj[v] |= 1 << u
    return Graph(g.n, tuple(adj))


def remove_edge(g: Graph, u: int, v: int) -> Graph:
    """New graph with edge ``uv`` removed; rejects absent edges."""
    g._check_vertex(u)
    g._check_vertex(v)
    if u == v or not g.has_edge(u, v):
        raise ValueError(f"edge ({u}, {v}) not present")
    adj = list(g._adj)
    adj[u] &= ~(1 << v)
    adj[v] &= ~(1 << u)
    return Graph(g.n, tuple(adj))


def relabel(g: Graph, perm: Sequence[int]) -> Graph:
    """Apply the vertex permutation ``v -> perm[v]``."""
    if sorted(perm) != list(range(g.n)):
        raise ValueError("perm must be a permutation of 0..n-1")
    adj = [0] * g.n
    for v in range(g.n):
        a = 0
        for w in g.neighbors(v):
            a |= 1 << perm[w]
        adj[perm[v]] = a
    return Graph(g.n, tuple(adj))


def induced_subgraph(g: Graph, vertices: Sequence[int]) -> Graph:
    """Induced subgraph on ``vertices`` (relabeled in the given order)."""
    seen = set()
    for v in vertices:
        g._check_vertex(v)
        if v in seen:
            raise ValueError(f"duplicate vertex {v}")
        seen.add(v)
    pos = {v: i for i, v in enumerate(vertices)}
    adj = [0] * len(vertices)
    for v in vertices:
        a = 0
        for w in g.neighbors(v):
            if w in pos:
                a |= 1 << pos[w]
        adj[pos[v]] = a
    return Graph(len(vertices), tuple(adj))


def random_graph(n: int, p: float, rng: np.random.Generator) -> Graph:
    """Erdos-Renyi ``G(n, p)`` sample driven by the supplied generator."""
    _check_order(n)
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"edge probability must lie in [0, 1], got {p}")
    adj = [0] * n
    if n >= 2:
        iu, iv = np.triu_indices(n, 1)
        hits = rng.random(iu.shape[0]) < p
        for u, v in zip(iu[hits].tolist(), iv[hits].tolist()):
            adj[u] |= 1 << v
            adj[v] |= 1 << u
    return Graph(n, tuple(adj))


# -- the threshold family -------------------------------------------------


@dataclass(frozen=True)
class GnkParams:
    """Validated parameters for the extremal family member on ``n`` vertices.

    Invariants: ``k >= 1``, ``n >= 3k``, ``n <= MAX_VERTICES``.
    """

    n: int
    k: int

    def __post_init__(self) -> None:
        _check_order(self.n)
        if self.k < 1:
            raise ValueError(f"k must be at least 1, got {self.k}")
        if self.n < 3 * self.k:
            raise ValueError(
                f"order {self.n} too small for k={self.k}; need n >= {3 * self.k}"
            )


def gnk_blocks(n: int, k: int) -> tuple[range, range, range]:
    """Vertex blocks ``(S, U, C)`` of the family layout: the dominating
    k-clique, the k+1 near-independent vertices, and the big clique."""
    GnkParams(n, k)
    return range(0, k), range(k, 2 * k + 1), range(2 * k + 1, n)


def build_base_family_member(
    n: int, k: int, attachments: Sequence[tuple[int, int]]
) -> Graph:
    """Join of a k-clique with (an independent (k+1)-set plus an
    (n-1-2k)-clique), then ``k-1`` extra edges given as ``(u_idx, c_idx)``
    pairs indexing into the independent block and the big clique.

    The canonical extremal graph is the member with every attachment on
    ``u_idx = 0`` and distinct ``c_idx`` targets (see :func:`build_gnk`).
    """
    GnkParams(n, k)
    s_block, u_block, c_block = gnk_blocks(n, k)
    if len(attachments) != k - 1:
        raise ValueError(
            f"expected exactly {k - 1} attachment edges, got {len(attachments)}"
        )
    edges = []
    for s in s_block:
        for v in range(s + 1, n):
            edges.append((s, v))
    cs = list(c_block)
    for i in range(len(cs)):
        for j in range(i + 1, len(cs)):
            edges.append((cs[i], cs[j]))
    seen = set()
    for u_idx, c_idx in attachments:
        if not 0 <= u_idx < len(u_block):
            raise ValueError(f"attachment row {u_idx} out of range")
        if not 0 <= c_idx < len(cs):
            raise ValueError(f"attachment column {c_idx} out of range")
        if (u_idx, c_idx) in seen:
            raise ValueError(f"duplicate attachment ({u_idx}, {c_idx})")
        seen.add((u_idx, c_idx))
        edges.append((u_block[u_idx], cs[c_idx]))
    return from_edges(n, edges)


def build_gnk(n: int, k: int) -> Graph:
    """The extremal threshold graph on ``n`` vertices for k-factors.

    One vertex of the independent block is attached to ``k-1`` distinct
    vertices of the big clique; the graph has minimum degree ``k`` and no
    k-factor, and maximizes the spectral radius among the no-factor graphs
    targeted by the verification campaigns.
    """
    return build_base_family_member(n, k, [(0, j) for j in range(k - 1)])
