"""k-factor decisions: deficiency certificates and the matching route.

A k-factor is a spanning k-regular subgraph.  Two independent deciders live
here.  The certificate route evaluates the deficiency

    delta(S, T) = tau(S, T) + k|T| - k|S| - sum_{u in T} deg_{G-S}(u)

over disjoint vertex sets S, T, where tau counts components C of
G - (S u T) whose edge count into T plus k|C| is odd; some split has
delta > 0 exactly when no k-factor exists.  The matching route reduces to a
perfect matching on a gadget graph and never looks at deficiencies.  The
two must always agree, and the test-suite holds them to that.
"""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from . import _kernels
from ._kernels import LOG2_16, POP16
from .graphs import Graph, from_edges

__all__ = [
    "DEFAULT_SCAN_CAP",
    "DeficiencyWitness",
    "ClassWitness",
    "FactorOutcome",
    "GadgetMap",
    "deficiency",
    "search_certificate",
    "tutte_gadget",
    "max_matching",
    "has_k_factor",
    "validate_factor",
    "in_class_Gkn",
    "in_class_Gnk_big",
]

DEFAULT_SCAN_CAP = 14


@dataclass(frozen=True)
class DeficiencyWitness:
    """One evaluated split: the sets, the odd-component count ``tau``, the
    total component count ``q`` of ``G - (S u T)``, and the value ``delta``."""

    S: tuple[int, ...]
    T: tuple[int, ...]
    k: int
    tau: int
    q: int
    delta: int

    def to_dict(self) -> dict:
        return {
            "S": list(self.S),
            "T": list(self.T),
            "k": self.k,
            "tau": self.tau,
            "q": self.q,
            "delta": self.delta,
        }


@dataclass(frozen=True)
class ClassWitness:
    """Membership evidence for one of the two structural graph classes.

    ``kind`` is ``"B-set"`` (a (k+1)-set with degree sum <= k^2+2k-1) or
    ``"ST-pair"`` (a split satisfying the degree-sum slack inequality).
    """

    kind: str
    vertices: tuple[int, ...]
    T: tuple[int, ...] | None
    k: int
    value: int
    slack: int

    def to_dict(self) -> dict:
        out = {
            "kind": self.kind,
            "vertices": list(self.vertices),
            "k": self.k,
            "value": self.value,
            "slack": self.slack,
        }
        if self.T is not None:
            out["T"] = list(self.T)
        return out


@dataclass(frozen=True)
class FactorOutcome:
    """Result of :func:`has_k_factor`.

    Exactly one of ``factor`` (the edge list of a k-factor) and the
    no-factor evidence is meaningful; ``witness`` may be None on a no-factor
    outcome when the order exceeds the exhaustive-search cap, in which case
    ``certified_by`` says which route refuted ("matching", "degree", or
    "parity").
    """

    exists: bool
    k: int
    factor: tuple[tuple[int, int], ...] | None
    witness: DeficiencyWitness | None
    certified_by: str

    def to_dict(self) -> dict:
        return {
            "exists": self.exists,
            "k": self.k,
            "factor": [list(e) for e in self.factor] if self.factor is not None else None,
            "witness": self.witness.to_dict() if self.witness is not None else None,
            "certified_by": self.certified_by,
        }


@dataclass(frozen=True)
class GadgetMap:
    """The matching gadget plus the cross-edge positions.

    ``cross[(u, v)]`` gives the gadget edge whose presence in a perfect
    matching puts original edge ``uv`` into the factor.
    """

    graph: Graph
    cross: dict[tuple[int, int], tuple[int, int]]
    externals: dict[int, tuple[int, ...]]
    internals: dict[int, tuple[int, ...]]


def _as_mask(g: Graph, vertices: Iterable[int], label: str) -> int:
    mask = 0
    for v in vertices:
        g._check_vertex(v)
        if (mask >> v) & 1:
            raise ValueError(f"duplicate vertex {v} in {label}")
        mask |= 1 << v
    return mask


def _mask_tuple(mask: int) -> tuple[int, ...]:
    out = []
    while mask:
        b = mask & (-mask)
        out.append(b.bit_length() - 1)
        mask ^= b
    return tuple(out)


def _check_k(k: int) -> None:
    if not isinstance(k, int) or isinstance(k, bool):
        raise TypeError(f"k must be an int, got {type(k).__name__}")
    if k < 1:
        raise ValueError(f"k must be at least 1, got {k}")


def deficiency(g: Graph, S: Iterable[int], T: Iterable[int], k: int) -> DeficiencyWitness:
    """Evaluate delta(S, T) for disjoint vertex sets.

    Pure-Python on bitmasks; this is the reference evaluator the compiled
    scans are checked against.
    """
    _check_k(k)
    if k < 2:
        raise ValueError("deficiency certificates are defined for k >= 2")
    smask = _as_mask(g, S, "S")
    tmask = _as_mask(g, T, "T")
    if smask & tmask:
        raise ValueError("S and T must be disjoint")
    rest = g.vertex_mask() & ~(smask | tmask)
    tau = 0
    q = 0
    for comp in g.component_masks(within=rest):
        q += 1
        ec = 0
        cm = comp
        while cm:
            b = cm & (-cm)
            ec += g.degree_in(b.bit_length() - 1, tmask)
            cm ^= b
        if (ec + k * comp.bit_count()) & 1:
            tau += 1
    degsum = 0
    tm = tmask
    while tm:
        b = tm & (-tm)
        degsum += g.degree_in(b.bit_length() - 1, g.vertex_mask() & ~smask)
        tm ^= b
    delta = tau + k * tmask.bit_count() - k * smask.bit_count() - degsum
    return DeficiencyWitness(
        S=_mask_tuple(smask), T=_mask_tuple(tmask), k=k, tau=tau, q=q, delta=delta
    )


def search_certificate(
    g: Graph, k: int, cap: int = DEFAULT_SCAN_CAP, prefer_large: bool = False
) -> DeficiencyWitness | None:
    """Exhaustive search for a positive-deficiency split; None if all are
    <= 0 (i.e. a k-factor exists).

    Among maximizers of delta the returned witness has the smallest support
    |S u T|, then the lexicographically smallest S, then T (``prefer_large``
    flips the support preference).  ``cap`` bounds the order: the scan visits
    all 3^n splits.
    """
    _check_k(k)
    if k < 2:
        raise ValueError("deficiency certificates are defined for k >= 2")
    if cap > _kernels.SCAN_LIMIT:
        raise ValueError(f"cap {cap} exceeds the scan limit {_kernels.SCAN_LIMIT}")
    if g.n > cap:
        raise ValueError(f"order {g.n} exceeds the exhaustive-search cap {cap}")
    if g.n == 0:
        return None
    found, _, bw, bt, _ = _kernels.scan_full(
        g.adjacency_masks(), g.n, k, 0, prefer_large, POP16, LOG2_16
    )
    if not found:
        return None
    full = g.vertex_mask()
    smask = (full ^ int(bw)) ^ int(bt)
    return deficiency(g, _mask_tuple(smask), _mask_tuple(int(bt)), k)


def tutte_gadget(g: Graph, k: int) -> GadgetMap:
    """Build the k-factor gadget as a plain graph plus its edge map.

    Per vertex v: one external node per incident edge end and deg(v)-k
    internal nodes joined to all of v's externals; one cross edge per
    original edge.  Perfect matchings correspond to k-factors, the factor
    edges being exactly those whose cross edge is matched.
    """
    _check_k(k)
    if g.n > 0 and g.min_degree() < k:
        raise ValueError(
            f"gadget requires minimum degree >= k; got {g.min_degree()} < {k}"
        )
    deg = g.degrees()
    ext_off = [0] * (g.n + 1)
    for v in range(g.n):
        ext_off[v + 1] = ext_off[v] + deg[v]
    two_m = ext_off[g.n]
    int_off = [two_m] * (g.n + 1)
    for v in range(g.n):
        int_off[v + 1] = int_off[v] + (deg[v] - k)
    naux = int_off[g.n]
    slot = [0] * g.n
    edges = []
    cross = {}
    for u, v in g.edges():
        eu = ext_off[u] + slot[u]
        slot[u] += 1
        ev = ext_off[v] + slot[v]
        slot[v] += 1
        edges.append((eu, ev))
        cross[(u, v)] = (eu, ev)
    externals = {}
    internals = {}
    for v in range(g.n):
        xs = tuple(range(ext_off[v], ext_off[v] + deg[v]))
        ins = tuple(range(int_off[v], int_off[v] + deg[v] - k))
        externals[v] = xs
        internals[v] = ins
        for i in ins:
            for x in xs:
                edges.append((x, i))
    aux = from_edges(naux, edges) if naux else from_edges(0, [])
    return GadgetMap(graph=aux, cross=cross, externals=externals, internals=internals)


def _csr_arrays(g: Graph) -> tuple[np.ndarray, np.ndarray]:
    return g.to_csr()


def max_matching(g: Graph) -> set[tuple[int, int]]:
    """A maximum matching of ``g`` as a set of ``(u, v)`` pairs, ``u < v``.

    Greedy seeding plus blossom augmentation; the size is maximum, the edge
    set itself is one deterministic maximizer.
    """
    indptr, indices = _csr_arrays(g)
    match = np.full(g.n, -1, np.int64)
    _kernels.greedy_matching(indptr, indices, match)
    _kernels.augment_to_maximum(indptr, indices, match, False)
    out = set()
    for v in range(g.n):
        w = int(match[v])
        if w > v:
            out.add((v, w))
    return out


def _factor_via_gadget(g: Graph, k: int) -> tuple[tuple[int, int], ...] | None:
    """Run the gadget matching at full scale; return the factor edge list or
    None.  Builds CSR arrays directly (the gadget can exceed the public
    graph-order cap by design)."""
    deg = g.degrees()
    m = sum(deg) // 2
    n = g.n
    ext_off = np.zeros(n + 1, np.int64)
    np.cumsum(np.array(deg, np.int64), out=ext_off[1:])
    int_off = np.zeros(n + 1, np.int64)
    np.cumsum(np.array(deg, np.int64) - k, out=int_off[1:])
    int_off += 2 * m
    naux = int(int_off[n])
    edge_u = np.empty(m, np.int64)
    edge_v = np.empty(m, np.int64)
    cross_a = np.empty(m, np.int64)
    cross_b = np.empty(m, np.int64)
    slot = [0] * n
    for ei, (u, v) in enumerate(g.edges()):
        edge_u[ei] = u
        edge_v[ei] = v
        cross_a[ei] = ext_off[u] + slot[u]
        slot[u] += 1
        cross_b[ei] = ext_off[v] + slot[v]
        slot[v] += 1
    partner = np.empty(2 * m, np.int64)
    partner[cross_a] = cross_b
    partner[cross_b] = cross_a
    degs_aux = np.empty(naux, np.int64)
    for v in range(n):
        degs_aux[int(ext_off[v]):int(ext_off[v + 1])] = deg[v] - k + 1
        degs_aux[int(int_off[v]):int(int_off[v + 1])] = deg[v]
    indptr = np.zeros(naux + 1, np.int64)
    np.cumsum(degs_aux, out=indptr[1:])
    indices = np.empty(int(indptr[-1]), np.int64)
    for v in range(n):
        ins = np.arange(int(int_off[v]), int(int_off[v + 1]), dtype=np.int64)
        xs = np.arange(int(ext_off[v]), int(ext_off[v + 1]), dtype=np.int64)
        for x in xs:
            indices[int(indptr[x]):int(indptr[x]) + ins.size] = ins
            indices[int(indptr[x]) + ins.size] = partner[x]
        for i in ins:
            indices[int(indptr[i]):int(indptr[i + 1])] = xs
    match = np.full(naux, -1, np.int64)
    # seed: greedy degree-<=k subgraph becomes pre-matched cross edges
    cnt = np.zeros(n, np.int64)
    for ei in range(m):
        u = int(edge_u[ei])
        v = int(edge_v[ei])
        if cnt[u] < k and cnt[v] < k:
            a = int(cross_a[ei])
            b = int(cross_b[ei])
            match[a] = b
            match[b] = a
            cnt[u] += 1
            cnt[v] += 1
    for v in range(n):
        ni = deg[v] - k
        ii = 0
        for x in range(int(ext_off[v]), int(ext_off[v + 1])):
            if match[x] == -1 and ii < ni:
                y = int(int_off[v]) + ii
                match[x] = y
                match[y] = x
                ii += 1
    _, perfect = _kernels.augment_to_maximum(indptr, indices, match, True)
    if not perfect:
        return None
    chosen = match[cross_a] == cross_b
    return tuple(
        (int(u), int(v))
        for u, v in zip(edge_u[chosen].tolist(), edge_v[chosen].tolist())
    )


def validate_factor(g: Graph, edges: Sequence[tuple[int, int]], k: int) -> None:
    """Raise unless ``edges`` is a k-regular spanning subgraph of ``g``."""
    degs = [0] * g.n
    seen = set()
    for u, v in edges:
        if not g.has_edge(u, v):
            raise ValueError(f"factor edge ({u}, {v}) is not a graph edge")
        key = (min(u, v), max(u, v))
        if key in seen:
            raise ValueError(f"duplicate factor edge {key}")
        seen.add(key)
        degs[u] += 1
        degs[v] += 1
    bad = [v for v in range(g.n) if degs[v] != k]
    if bad:
        raise ValueError(f"factor degree != {k} at vertices {bad[:8]}")


def has_k_factor(g: Graph, k: int, cap: int = DEFAULT_SCAN_CAP) -> FactorOutcome:
    """Decide whether ``g`` has a k-factor.

    The decision is made by the matching route (after two degree-sum
    prechecks); on a no-factor outcome with ``n <= cap`` the deficiency
    route is then asked for an explicit witness, and the two routes
    disagreeing raises - that would falsify the deficiency formula.
    """
    _check_k(k)
    n = g.n
    if n == 0:
        return FactorOutcome(True, k, (), None, "matching")
    if (k * n) % 2 == 1:
        witness = None
        if k >= 2 and n <= cap:
            witness = search_certificate(g, k, cap)
        return FactorOutcome(False, k, None, witness, "parity")
    if g.min_degree() < k:
        witness = None
        if k >= 2:
            v = min(range(n), key=g.degree)
            witness = deficiency(g, (), (v,), k)
        return FactorOutcome(False, k, None, witness, "degree")
    if k == 1:
        indptr, indices = _csr_arrays(g)
        match = np.full(n, -1, np.int64)
        _kernels.greedy_matching(indptr, indices, match)
        _, perfect = _kernels.augment_to_maximum(indptr, indices, match, True)
        if not perfect:
            return FactorOutcome(False, 1, None, None, "matching")
        edges = tuple((v, int(match[v])) for v in range(n) if v < match[v])
        return FactorOutcome(True, 1, edges, None, "matching")
    factor = _factor_via_gadget(g, k)
    if factor is not None:
        validate_factor(g, factor, k)
        return FactorOutcome(True, k, factor, None, "matching")
    witness = None
    if n <= cap:
        witness = search_certificate(g, k, cap)
        if witness is None:
            raise RuntimeError(
                "matching route refutes a k-factor but no positive-deficiency "
                "split exists; the two routes disagree"
            )
    return FactorOutcome(False, k, None, witness, "matching")


def in_class_Gkn(g: Graph, k: int) -> ClassWitness | None:
    """Degree-sum class test: is there a (k+1)-set B with
    ``sum of degrees over B <= k^2 + 2k - 1``?

    Returns the minimizing B (ties to smaller vertex labels) or None.
    Requires minimum degree >= k.
    """
    _check_k(k)
    if g.n < k + 1:
        raise ValueError(f"order {g.n} below k+1 = {k + 1}")
    if g.min_degree() < k:
        raise ValueError(
            f"class test requires minimum degree >= k; got {g.min_degree()}"
        )
    order = sorted(range(g.n), key=lambda v: (g.degree(v), v))
    chosen = order[: k + 1]
    total = sum(g.degree(v) for v in chosen)
    bound = k * k + 2 * k - 1
    if total > bound:
        return None
    return ClassWitness(
        kind="B-set",
        vertices=tuple(sorted(chosen)),
        T=None,
        k=k,
        value=total,
        slack=bound - total,
    )


def in_class_Gnk_big(g: Graph, k: int, cap: int = DEFAULT_SCAN_CAP) -> ClassWitness | None:
    """Split class test: is there a split (S, T) with
    ``sum_{u in T} deg_{G-S}(u) <= k|T| - k|S| - 2 + q(S, T)``
    where q counts the components of ``G - (S u T)``?

    Returns the maximal-slack witness (same tie-break as
    :func:`search_certificate`) or None.  Graphs with minimum degree < k are
    outside the class by definition.
    """
    _check_k(k)
    if cap > _kernels.SCAN_LIMIT:
        raise ValueError(f"cap {cap} exceeds the scan limit {_kernels.SCAN_LIMIT}")
    if g.n > cap:
        raise ValueError(f"order {g.n} exceeds the exhaustive-search cap {cap}")
    if g.n == 0 or g.min_degree() < k:
        return None
    found, slack, bw, bt, _ = _kernels.scan_full(
        g.adjacency_masks(), g.n, k, 1, False, POP16, LOG2_16
    )
    if not found:
        return None
    full = g.vertex_mask()
    smask = (full ^ int(bw)) ^ int(bt)
    tmask = int(bt)
    degsum = 0
    tm = tmask
    while tm:
        b = tm & (-tm)
        degsum += g.degree_in(b.bit_length() - 1, full & ~smask)
        tm ^= b
    return ClassWitness(
        kind="ST-pair",
        vertices=_mask_tuple(smask),
        T=_mask_tuple(tmask),
        k=k,
        value=degsum,
        slack=int(slack),
    )
