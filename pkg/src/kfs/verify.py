"""Verification campaigns for the spectral k-factor threshold.

The statement under test: for ``k >= 2``, ``kn`` even and ``n`` large enough
(``n >= max(k^2+6k+7, 20k+10)``), every graph with minimum degree at least
``k`` whose spectral radius is at least that of the extremal graph
:func:`~kfs.graphs.build_gnk` has a k-factor -- unless it is the extremal
graph itself.  Campaigns sweep constructed, enumerated and sampled graph
populations, dispatch each graph to a verdict, and collect machine-checkable
reports.
"""
from __future__ import annotations

import enum
import itertools
import os
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from math import ceil
from typing import Callable, Iterable, Iterator, Sequence

import numpy as np

from . import _kernels, graph6
from ._kernels import LOG2_16, POP16
from .factors import (
    DEFAULT_SCAN_CAP,
    has_k_factor,
    in_class_Gkn,
    search_certificate,
)
from .graphs import (
    Graph,
    add_edge,
    build_base_family_member,
    build_gnk,
    induced_subgraph,
    random_graph,
    remove_edge,
)
from .spectral import DEFAULT_TOL, Ordering, SpectralEstimate, compare_estimates, rho

__all__ = [
    "Verdict",
    "Failure",
    "VerificationReport",
    "TheoremCheck",
    "theorem_range_min",
    "in_theorem_range",
    "recognize_gnk",
    "verify_theorem_on",
    "edge_addition_sweep",
    "lemma5_restricted_extremality",
    "exhaustive_small_campaign",
    "random_campaign",
    "lemma1_monotonicity_suite",
    "lemma2_rewiring_suite",
    "resolve_jobs",
]

STREAM_ORDER_CAP = 10


class Verdict(enum.Enum):
    """Per-graph outcome of the theorem check."""

    VACUOUS_HYPOTHESIS = "VacuousHypothesis"
    FACTOR_FOUND = "FactorFound"
    EXTREMAL_EQUALITY = "ExtremalEquality"
    VIOLATION = "Violation"
    AMBIGUOUS = "Ambiguous"


@dataclass(frozen=True)
class Failure:
    """One failed item: the offending graph (graph6) plus evidence."""

    graph6: str
    detail: dict

    def to_dict(self) -> dict:
        return {"graph6": self.graph6, "detail": self.detail}


@dataclass
class VerificationReport:
    """Campaign output: identifying parameters, integer counters, failures.

    ``passed`` is defined as "no failures".  ``details`` carries per-item
    rows for delimited/figure output; ``runtime_seconds`` is measured and
    deliberately excluded from the canonical serialization so reports are
    byte-reproducible.
    """

    campaign: str
    params: dict
    counters: dict
    failures: list[Failure] = field(default_factory=list)
    details: list[dict] = field(default_factory=list)
    runtime_seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    def to_dict(self) -> dict:
        return {
            "campaign": self.campaign,
            "params": self.params,
            "counters": dict(sorted(self.counters.items())),
            "failures": [f.to_dict() for f in self.failures],
            "passed": self.passed,
        }


def resolve_jobs(jobs: int | None) -> int:
    """Explicit value, else the KFS_JOBS environment variable, else 1."""
    if jobs is not None:
        if jobs < 1:
            raise ValueError(f"jobs must be positive, got {jobs}")
        return jobs
    env = os.environ.get("KFS_JOBS", "").strip()
    if env:
        try:
            val = int(env)
        except ValueError as exc:
            raise ValueError(f"KFS_JOBS must be an integer, got {env!r}") from exc
        if val < 1:
            raise ValueError(f"KFS_JOBS must be positive, got {val}")
        return val
    return 1


def _map_ordered(fn: Callable, items: Sequence, jobs: int) -> list:
    """Apply ``fn`` over ``items`` preserving order; thread pool when
    ``jobs > 1`` (the compiled cores release the GIL)."""
    if jobs <= 1 or len(items) <= 1:
        return [fn(it) for it in items]
    with ThreadPoolExecutor(max_workers=jobs) as pool:
        return list(pool.map(fn, items))


def theorem_range_min(k: int) -> int:
    """Smallest order the theorem covers for this ``k``."""
    return max(k * k + 6 * k + 7, 20 * k + 10)


def in_theorem_range(n: int, k: int) -> bool:
    return (k * n) % 2 == 0 and n >= theorem_range_min(k)


# -- structural recognition ------------------------------------------------


def recognize_gnk(g: Graph, k: int) -> bool:
    """Is ``g`` isomorphic to the extremal graph on its order?

    Purely structural (no spectra): locate the k dominating vertices, peel
    them off, and check the remainder splits into an isolated k-set, one
    special vertex with exactly ``k-1`` neighbors inside an
    ``(n-1-2k)``-clique, and that clique itself.
    """
    n = g.n
    if k < 1 or n < 3 * k:
        return False
    full = g.vertex_mask()
    dom = [v for v in range(n) if g.degree(v) == n - 1]
    if len(dom) != k:
        return False
    dom_mask = 0
    for v in dom:
        dom_mask |= 1 << v
    hmask = full & ~dom_mask
    hdeg = {v: g.degree_in(v, hmask) for v in range(n) if (hmask >> v) & 1}
    isolated = [v for v, d in hdeg.items() if d == 0]
    nq = n - 1 - 2 * k
    hedges = sum(hdeg.values()) // 2
    if hedges != nq * (nq - 1) // 2 + (k - 1):
        return False
    if k == 1:
        if nq <= 1:
            # the clique block is empty or a lone vertex: H is edgeless
            return len(isolated) == k + 1 + nq
        if len(isolated) != 2:
            return False
        qmask = hmask
        for v in isolated:
            qmask &= ~(1 << v)
        return _is_clique(g, qmask)
    if len(isolated) != k:
        return False
    iso_mask = 0
    for v in isolated:
        iso_mask |= 1 << v
    for w, d in hdeg.items():
        if d != k - 1:
            continue
        qmask = hmask & ~iso_mask & ~(1 << w)
        if qmask.bit_count() != nq:
            continue
        if g.neighbors_mask(w) & hmask & ~qmask:
            continue
        if not _is_clique(g, qmask):
            continue
        return True
    return False


def _is_clique(g: Graph, mask: int) -> bool:
    size = mask.bit_count()
    mm = mask
    while mm:
        b = mm & (-mm)
        if g.degree_in(b.bit_length() - 1, mask) != size - 1:
            return False
        mm ^= b
    return True


# -- single-graph theorem check -------------------------------------------


@dataclass(frozen=True)
class TheoremCheck:
    verdict: Verdict
    evidence: dict


def verify_theorem_on(
    g: Graph,
    k: int,
    tol: float = DEFAULT_TOL,
    reference: Graph | None = None,
    reference_estimate: SpectralEstimate | None = None,
    cap: int = DEFAULT_SCAN_CAP,
    retighten: int = 1,
) -> TheoremCheck:
    """Dispatch one graph to a verdict against the extremal reference.

    Hypothesis failures (min degree, parity, spectral radius certified
    below the reference) are vacuous; at or above the reference radius the
    graph must either carry a k-factor, or be the reference itself
    (recognized structurally when the enclosures cannot separate).  A
    certified-above graph without a factor is a Violation.  The enclosure
    tolerance is tightened once (``tol/100``) before giving up as Ambiguous.
    """
    if k < 2:
        raise ValueError(f"the theorem concerns k >= 2, got {k}")
    n = g.n
    evidence: dict = {
        "n": n,
        "k": k,
        "min_degree": g.min_degree() if n else 0,
        "kn_even": (k * n) % 2 == 0,
        "in_range": in_theorem_range(n, k),
    }
    if n < 3 * k:
        evidence["note"] = "no reference graph below order 3k"
        return TheoremCheck(Verdict.VACUOUS_HYPOTHESIS, evidence)
    reference = reference if reference is not None else build_gnk(n, k)
    if reference.n != n:
        raise ValueError(
            f"reference order {reference.n} does not match graph order {n}"
        )
    if evidence["min_degree"] < k or not evidence["kn_even"]:
        return TheoremCheck(Verdict.VACUOUS_HYPOTHESIS, evidence)
    est = rho(g, tol)
    ref_est = (
        reference_estimate if reference_estimate is not None else rho(reference, tol)
    )
    cmp = compare_estimates(est, ref_est)
    t = tol
    tries = retighten
    while cmp is Ordering.AMBIGUOUS and tries > 0:
        tries -= 1
        t = t / 100.0
        est = rho(g, t)
        ref_est = rho(reference, t)
        evidence["retightened_tol"] = t
        cmp = compare_estimates(est, ref_est)
    evidence["rho"] = est.to_dict()
    evidence["rho_reference"] = ref_est.to_dict()
    evidence["comparison"] = cmp.value
    if evidence["min_degree"] >= k and est.lo > n - 2 - k:
        limit = (k + 1) * n - (k + 1) ** 2
        cbar = n * (n - 1) // 2 - g.m
        evidence["complement_bound"] = {
            "complement_edges": cbar,
            "limit": limit,
            "ok": cbar < limit,
        }
    if cmp is Ordering.LESS:
        return TheoremCheck(Verdict.VACUOUS_HYPOTHESIS, evidence)
    if cmp is Ordering.AMBIGUOUS and recognize_gnk(g, k):
        evidence["isomorphic_to_reference"] = True
        return TheoremCheck(Verdict.EXTREMAL_EQUALITY, evidence)
    outcome = has_k_factor(g, k, cap=cap)
    evidence["factor"] = {
        "exists": outcome.exists,
        "certified_by": outcome.certified_by,
        "edges": len(outcome.factor) if outcome.factor is not None else 0,
    }
    if outcome.exists:
        return TheoremCheck(Verdict.FACTOR_FOUND, evidence)
    if outcome.witness is not None:
        evidence["factor"]["witness"] = outcome.witness.to_dict()
    if cmp is Ordering.GREATER:
        return TheoremCheck(Verdict.VIOLATION, evidence)
    return TheoremCheck(Verdict.AMBIGUOUS, evidence)


# -- campaign helpers ------------------------------------------------------


def _new_counters(extra: Iterable[str] = ()) -> dict:
    base = {v.value: 0 for v in Verdict}
    base["graphs_checked"] = 0
    for key in extra:
        base[key] = 0
    return base


def _bump_verdict(counters: dict, chk: TheoremCheck, g: Graph, failures: list) -> None:
    counters["graphs_checked"] += 1
    counters[chk.verdict.value] += 1
    cb = chk.evidence.get("complement_bound")
    if cb is not None and not cb["ok"]:
        counters["complement_bound_violations"] = (
            counters.get("complement_bound_violations", 0) + 1
        )
        failures.append(
            Failure(graph6.encode(g), {"reason": "complement-bound", **chk.evidence})
        )
    if chk.verdict is Verdict.VIOLATION:
        if chk.evidence["in_range"]:
            failures.append(
                Failure(graph6.encode(g), {"reason": "violation", **chk.evidence})
            )
        else:
            counters["violations_below_range"] = (
                counters.get("violations_below_range", 0) + 1
            )
    elif chk.verdict is Verdict.AMBIGUOUS:
        failures.append(
            Failure(graph6.encode(g), {"reason": "ambiguous", **chk.evidence})
        )


# -- campaigns -------------------------------------------------------------


def edge_addition_sweep(
    n: int,
    k: int,
    tol: float = DEFAULT_TOL,
    jobs: int | None = None,
    force: bool = False,
) -> VerificationReport:
    """Add every non-edge to the extremal graph, one at a time; each
    augmented graph must come back FactorFound.

    Requires ``kn`` even always, and the full theorem range unless
    ``force`` (out-of-range sweeps are exploratory).
    """
    t0 = time.perf_counter()
    if k < 2:
        raise ValueError(f"the theorem concerns k >= 2, got {k}")
    if (k * n) % 2:
        raise ValueError(f"kn must be even, got n={n}, k={k}")
    if not force and n < theorem_range_min(k):
        raise ValueError(
            f"order {n} below the theorem range floor {theorem_range_min(k)} "
            f"for k={k} (pass force=True to sweep anyway)"
        )
    jobs = resolve_jobs(jobs)
    ref = build_gnk(n, k)
    ref_est = rho(ref, tol)
    non_edges = [
        (u, v)
        for u in range(n)
        for v in range(u + 1, n)
        if not ref.has_edge(u, v)
    ]
    counters = _new_counters(["edges_swept"])
    failures: list[Failure] = []
    details: list[dict] = []

    def check(edge: tuple[int, int]) -> tuple[tuple[int, int], TheoremCheck, Graph]:
        u, v = edge
        g2 = add_edge(ref, u, v)
        chk = verify_theorem_on(
            g2, k, tol, reference=ref, reference_estimate=ref_est
        )
        return edge, chk, g2

    for edge, chk, g2 in _map_ordered(check, non_edges, jobs):
        counters["edges_swept"] += 1
        _bump_verdict(counters, chk, g2, failures)
        if chk.verdict in (Verdict.VACUOUS_HYPOTHESIS, Verdict.EXTREMAL_EQUALITY):
            # Violation/Ambiguous failures are already recorded above
            failures.append(
                Failure(
                    graph6.encode(g2),
                    {"reason": f"expected FactorFound, got {chk.verdict.value}",
                     "edge": list(edge), **chk.evidence},
                )
            )
        details.append(
            {
                "edge_u": edge[0],
                "edge_v": edge[1],
                "verdict": chk.verdict.value,
                "rho_lo": chk.evidence.get("rho", {}).get("lo"),
                "rho_hi": chk.evidence.get("rho", {}).get("hi"),
                "margin": (
                    chk.evidence["rho"]["lo"] - chk.evidence["rho_reference"]["hi"]
                    if "rho" in chk.evidence
                    else None
                ),
            }
        )
    return VerificationReport(
        campaign="edge-addition-sweep",
        params={"n": n, "k": k, "tol": tol, "force": force},
        counters=counters,
        failures=failures,
        details=details,
        runtime_seconds=time.perf_counter() - t0,
    )


def _attachment_classes(k: int) -> list[tuple[tuple[int, int], ...]]:
    """Representatives of the attachment patterns (k-1 edges between the
    k+1 independent vertices and k-1 clique targets) up to row/column
    permutation, in deterministic order."""
    cells = [(i, j) for i in range(k + 1) for j in range(max(k - 1, 1))]
    if k == 1:
        return [()]
    seen: dict[tuple, tuple] = {}
    for combo in itertools.combinations(cells, k - 1):
        best = None
        for pr in itertools.permutations(range(k + 1)):
            for pc in itertools.permutations(range(k - 1)):
                cand = tuple(sorted((pr[i], pc[j]) for i, j in combo))
                if best is None or cand < best:
                    best = cand
        if best not in seen:
            seen[best] = combo
    return [seen[key] for key in sorted(seen)]


def lemma5_restricted_extremality(
    n: int,
    k: int,
    tol: float = DEFAULT_TOL,
    force: bool = False,
) -> VerificationReport:
    """Among the base-family members (all attachment patterns), the extremal
    graph must have strictly the largest spectral radius.

    Supported for ``2 <= k <= 4`` (pattern enumeration is factorial in k);
    requires ``n >= k^2/2 + 3k + 1`` unless ``force``.
    """
    t0 = time.perf_counter()
    if not 2 <= k <= 4:
        raise ValueError(f"attachment enumeration supports 2 <= k <= 4, got {k}")
    floor = ceil(k * k / 2 + 3 * k + 1)
    if not force and n < floor:
        raise ValueError(
            f"order {n} below the uniqueness floor {floor} for k={k} "
            f"(pass force=True to run anyway)"
        )
    ref = build_gnk(n, k)
    ref_est = rho(ref, tol)
    ref_pattern = tuple((0, j) for j in range(k - 1))
    classes = _attachment_classes(k)
    counters = _new_counters(
        ["classes_total", "classes_nonreference", "degree_class_members"]
    )
    failures: list[Failure] = []
    details: list[dict] = []
    for pattern in classes:
        counters["classes_total"] += 1
        member = build_base_family_member(n, k, list(pattern))
        if in_class_Gkn(member, k) is not None:
            counters["degree_class_members"] += 1
        else:
            failures.append(
                Failure(
                    graph6.encode(member),
                    {"reason": "degree-sum class membership failed",
                     "pattern": [list(c) for c in pattern]},
                )
            )
        if _same_class(pattern, ref_pattern, k):
            details.append(
                {"pattern": str(list(pattern)), "is_reference": True, "margin": 0.0}
            )
            continue
        counters["classes_nonreference"] += 1
        mem_est = rho(member, tol)
        cmp = compare_estimates(mem_est, ref_est)
        if cmp is Ordering.AMBIGUOUS:
            mem_est = rho(member, tol / 100.0)
            ref2 = rho(ref, tol / 100.0)
            cmp = compare_estimates(mem_est, ref2)
            margin = ref2.lo - mem_est.hi
        else:
            margin = ref_est.lo - mem_est.hi
        details.append(
            {
                "pattern": str(list(pattern)),
                "is_reference": False,
                "margin": margin,
                "rho_lo": mem_est.lo,
                "rho_hi": mem_est.hi,
            }
        )
        counters["graphs_checked"] += 1
        if cmp is not Ordering.LESS:
            failures.append(
                Failure(
                    graph6.encode(member),
                    {
                        "reason": "reference not strictly spectral-maximal",
                        "pattern": [list(c) for c in pattern],
                        "comparison": cmp.value,
                        "rho_member": mem_est.to_dict(),
                        "rho_reference": ref_est.to_dict(),
                    },
                )
            )
    return VerificationReport(
        campaign="restricted-extremality",
        params={"n": n, "k": k, "tol": tol, "force": force},
        counters=counters,
        failures=failures,
        details=details,
        runtime_seconds=time.perf_counter() - t0,
    )


def _same_class(a: tuple, b: tuple, k: int) -> bool:
    for pr in itertools.permutations(range(k + 1)):
        for pc in itertools.permutations(range(max(k - 1, 1))):
            if tuple(sorted((pr[i], pc[j]) for i, j in a)) == tuple(sorted(b)):
                return True
    return False


def _equivalence_check(
    g: Graph, k: int, counters: dict, failures: list[Failure], cap: int
) -> None:
    """Run both factor deciders independently and compare."""
    if g.n > min(cap, _kernels.SCAN_LIMIT) or k < 2:
        return
    masks = g.adjacency_masks()
    fnd, _, _, pv = _kernels.scan_exists(masks, g.n, k, POP16, LOG2_16)
    pm = bool(_kernels.gadget_pm_mask(masks, g.n, k, POP16))
    counters["equivalence_checked"] += 1
    counters["parity_violations"] += int(pv)
    if bool(fnd) == pm:
        counters["oracle_disagreements"] += 1
        failures.append(
            Failure(
                graph6.encode(g),
                {
                    "reason": "certificate and matching routes disagree",
                    "k": k,
                    "certificate_found": bool(fnd),
                    "factor_exists": pm,
                },
            )
        )


def exhaustive_small_campaign(
    k: int,
    n: int | None = None,
    source: str | Iterable[str] | None = None,
    tol: float = DEFAULT_TOL,
    jobs: int | None = None,
    cap: int = DEFAULT_SCAN_CAP,
) -> VerificationReport:
    """Theorem check plus dual-route equivalence over either every labeled
    graph on ``n <= 6`` vertices, or a graph6 stream (orders up to 10).

    Malformed stream lines are recorded as failures and skipped; the
    campaign itself keeps going.
    """
    t0 = time.perf_counter()
    if (n is None) == (source is None):
        raise ValueError("exactly one of n (labeled enumeration) or source required")
    if k < 2:
        raise ValueError(f"the theorem concerns k >= 2, got {k}")
    jobs = resolve_jobs(jobs)
    counters = _new_counters(
        [
            "equivalence_checked",
            "oracle_disagreements",
            "parity_violations",
            "malformed_lines",
        ]
    )
    failures: list[Failure] = []
    details: list[dict] = []
    refs: dict[int, tuple[Graph | None, SpectralEstimate | None]] = {}

    def ref_for(order: int):
        if order not in refs:
            if order >= 3 * k:
                ref = build_gnk(order, k)
                refs[order] = (ref, rho(ref, tol))
            else:
                refs[order] = (None, None)
        return refs[order]

    def handle(g: Graph) -> None:
        ref, ref_est = ref_for(g.n)
        chk = verify_theorem_on(
            g, k, tol, reference=ref, reference_estimate=ref_est, cap=cap
        )
        _bump_verdict(counters, chk, g, failures)
        _equivalence_check(g, k, counters, failures, cap)

    if n is not None:
        if not 1 <= n <= 6:
            raise ValueError(
                f"labeled enumeration supports 1 <= n <= 6, got {n}"
            )
        pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
        for mask in range(1 << len(pairs)):
            adj = [0] * n
            for p, (u, v) in enumerate(pairs):
                if (mask >> p) & 1:
                    adj[u] |= 1 << v
                    adj[v] |= 1 << u
            handle(Graph(n, tuple(adj)))
        params = {"k": k, "n": n, "tol": tol, "mode": "labeled-enumeration"}
    else:
        if isinstance(source, (str, os.PathLike)):
            params_src = str(source)
            lines: Iterable[str] = open(source, "r", encoding="ascii")
        else:
            params_src = "<stream>"
            lines = source
        try:
            for lineno, line in enumerate(lines, start=1):
                if not line.strip():
                    continue
                try:
                    g = graph6.decode(line)
                except graph6.Graph6Error as exc:
                    counters["malformed_lines"] += 1
                    failures.append(
                        Failure(
                            line.strip()[:80],
                            {"reason": "malformed graph6 line", "line": lineno,
                             "error": str(exc)},
                        )
                    )
                    continue
                if g.n > STREAM_ORDER_CAP:
                    failures.append(
                        Failure(
                            graph6.encode(g),
                            {"reason": f"order {g.n} above the stream cap "
                                       f"{STREAM_ORDER_CAP}", "line": lineno},
                        )
                    )
                    continue
                handle(g)
        finally:
            if hasattr(lines, "close"):
                lines.close()
        params = {"k": k, "source": params_src, "tol": tol, "mode": "stream"}
    return VerificationReport(
        campaign="exhaustive-small",
        params=params,
        counters=counters,
        failures=failures,
        details=details,
        runtime_seconds=time.perf_counter() - t0,
    )


def random_campaign(
    n: int,
    k: int,
    trials: int,
    seed: int,
    density: float | None = None,
    tol: float = DEFAULT_TOL,
    jobs: int | None = None,
    cap: int = DEFAULT_SCAN_CAP,
) -> VerificationReport:
    """Theorem checks over seeded Erdos-Renyi samples.

    Default density ``1 - (k+2)/n`` targets the interesting regime just
    below the threshold.  Each trial derives its own generator from
    ``(seed, trial)``, so reports are reproducible for any job count.
    """
    t0 = time.perf_counter()
    if k < 2:
        raise ValueError(f"the theorem concerns k >= 2, got {k}")
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if density is None:
        density = 1.0 - (k + 2) / n
    if not 0.0 < density < 1.0:
        raise ValueError(f"density must lie in (0, 1), got {density}")
    jobs = resolve_jobs(jobs)
    ref = build_gnk(n, k) if n >= 3 * k else None
    ref_est = rho(ref, tol) if ref is not None else None
    counters = _new_counters(
        ["equivalence_checked", "oracle_disagreements", "parity_violations"]
    )
    failures: list[Failure] = []
    details: list[dict] = []

    def run_trial(t: int) -> tuple[Graph, TheoremCheck]:
        rng = np.random.default_rng((seed, t))
        g = random_graph(n, density, rng)
        chk = verify_theorem_on(
            g, k, tol, reference=ref, reference_estimate=ref_est, cap=cap
        )
        return g, chk

    for g, chk in _map_ordered(run_trial, range(trials), jobs):
        _bump_verdict(counters, chk, g, failures)
        _equivalence_check(g, k, counters, failures, cap)
        details.append(
            {
                "verdict": chk.verdict.value,
                "min_degree": chk.evidence["min_degree"],
                "rho_lo": chk.evidence.get("rho", {}).get("lo"),
                "rho_hi": chk.evidence.get("rho", {}).get("hi"),
            }
        )
    return VerificationReport(
        campaign="random-sampling",
        params={
            "n": n,
            "k": k,
            "trials": trials,
            "seed": seed,
            "density": density,
            "tol": tol,
        },
        counters=counters,
        failures=failures,
        details=details,
        runtime_seconds=time.perf_counter() - t0,
    )


# -- monotonicity / rewiring property suites ------------------------------


def lemma1_monotonicity_suite(
    trials: int = 1000,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> VerificationReport:
    """Proper subgraphs of connected graphs have strictly smaller spectral
    radius: certified on seeded random instances (edge and vertex deletions).
    """
    t0 = time.perf_counter()
    counters = {"trials": 0, "passed": 0, "skipped": 0}
    failures: list[Failure] = []
    details: list[dict] = []
    for t in range(trials):
        counters["trials"] += 1
        rng = np.random.default_rng((seed, t))
        g = _connected_sample(rng, int(rng.integers(8, 25)), float(rng.uniform(0.25, 0.85)))
        if g is None:
            counters["skipped"] += 1
            continue
        if rng.random() < 0.3 and g.n >= 9:
            drop = int(rng.integers(0, g.n))
            keep = [v for v in range(g.n) if v != drop]
            h = induced_subgraph(g, keep)
            move = {"kind": "vertex-deletion", "vertex": drop}
        else:
            edges = list(g.edges())
            r = 1 + int(rng.integers(0, min(3, len(edges))))
            idx = rng.choice(len(edges), size=r, replace=False)
            h = g
            for i in sorted(int(j) for j in idx):
                h = remove_edge(h, *edges[i])
            move = {"kind": "edge-deletion", "edges": r}
        eg = rho(g, tol)
        eh = rho(h, tol)
        if eh.hi < eg.lo:
            counters["passed"] += 1
            details.append({"margin": eg.lo - eh.hi, "kind": move["kind"]})
            continue
        eg = rho(g, tol / 100.0)
        eh = rho(h, tol / 100.0)
        if eh.hi < eg.lo:
            counters["passed"] += 1
            details.append({"margin": eg.lo - eh.hi, "kind": move["kind"]})
        elif eh.lo >= eg.hi:
            failures.append(
                Failure(
                    graph6.encode(g),
                    {"reason": "subgraph radius not strictly smaller",
                     "move": move, "rho_g": eg.to_dict(), "rho_h": eh.to_dict()},
                )
            )
        else:
            counters["skipped"] += 1
    return VerificationReport(
        campaign="monotonicity-suite",
        params={"trials": trials, "seed": seed, "tol": tol},
        counters=counters,
        failures=failures,
        details=details,
        runtime_seconds=time.perf_counter() - t0,
    )


def lemma2_rewiring_suite(
    trials: int = 1000,
    seed: int = 0,
    tol: float = DEFAULT_TOL,
) -> VerificationReport:
    """Rewiring toward heavier Perron products increases the radius.

    Instances delete edges with small products x_u x_v of the (converged)
    Perron vector and add non-edges with large products, with a margin of
    ``10 * residual + 1e-6`` in the product sums and the first added pair
    anchored at a vertex untouched by the deletions; the rewired graph must
    then be certified strictly larger.
    """
    t0 = time.perf_counter()
    counters = {"trials": 0, "passed": 0, "skipped": 0}
    failures: list[Failure] = []
    details: list[dict] = []
    for t in range(trials):
        counters["trials"] += 1
        rng = np.random.default_rng((seed, t))
        g = _connected_sample(rng, int(rng.integers(8, 21)), float(rng.uniform(0.35, 0.8)))
        if g is None:
            counters["skipped"] += 1
            continue
        est = rho(g, tol)
        if not est.converged:
            counters["skipped"] += 1
            continue
        x = est.vector
        edges = list(g.edges())
        non_edges = [
            (u, v)
            for u in range(g.n)
            for v in range(u + 1, g.n)
            if not g.has_edge(u, v)
        ]
        if not non_edges:
            counters["skipped"] += 1
            continue
        edges.sort(key=lambda e: (x[e[0]] * x[e[1]], e))
        non_edges.sort(key=lambda e: (-x[e[0]] * x[e[1]], e))
        move = None
        for r in (1 + int(rng.integers(0, 3)), 1):
            if r > len(edges) or r > len(non_edges):
                continue
            dels = edges[:r]
            touched = {v for e in dels for v in e}
            adds = non_edges[:r]
            anchored = None
            for i, (a, b) in enumerate(adds):
                if a not in touched:
                    anchored = (i, (a, b))
                    break
                if b not in touched:
                    anchored = (i, (b, a))
                    break
            if anchored is None:
                for a, b in non_edges[r:]:
                    if a not in touched or b not in touched:
                        adds = adds[: r - 1] + [(a, b)]
                        anchored = (r - 1, (a, b) if a not in touched else (b, a))
                        break
            if anchored is None:
                continue
            gain = sum(x[a] * x[b] for a, b in adds) - sum(
                x[u] * x[v] for u, v in dels
            )
            if gain < 10.0 * est.residual + 1e-6:
                continue
            move = (dels, adds, anchored, gain)
            break
        if move is None:
            counters["skipped"] += 1
            continue
        dels, adds, anchored, gain = move
        g2 = g
        for u, v in dels:
            g2 = remove_edge(g2, u, v)
        for a, b in adds:
            g2 = add_edge(g2, a, b)
        e2 = rho(g2, tol)
        if e2.lo > est.hi:
            counters["passed"] += 1
            details.append({"margin": e2.lo - est.hi, "gain": gain})
            continue
        est_t = rho(g, tol / 100.0)
        e2_t = rho(g2, tol / 100.0)
        if e2_t.lo > est_t.hi:
            counters["passed"] += 1
            details.append({"margin": e2_t.lo - est_t.hi, "gain": gain})
        elif e2_t.hi <= est_t.lo:
            failures.append(
                Failure(
                    graph6.encode(g),
                    {"reason": "rewired radius not strictly larger",
                     "deleted": [list(e) for e in dels],
                     "added": [list(e) for e in adds],
                     "gain": gain,
                     "rho_g": est_t.to_dict(),
                     "rho_rewired": e2_t.to_dict()},
                )
            )
        else:
            counters["skipped"] += 1
    return VerificationReport(
        campaign="rewiring-suite",
        params={"trials": trials, "seed": seed, "tol": tol},
        counters=counters,
        failures=failures,
        details=details,
        runtime_seconds=time.perf_counter() - t0,
    )


def _connected_sample(rng: np.random.Generator, n: int, p: float) -> Graph | None:
    for _ in range(20):
        g = random_graph(n, p, rng)
        if g.is_connected():
            return g
    return None
