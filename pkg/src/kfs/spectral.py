"""Certified spectral-radius enclosures and the degree-based upper bound.

The spectral radius of a graph is the largest adjacency eigenvalue.  It is
estimated per connected component by shifted power iteration; each step
yields a rigorous interval [lo, hi] (Rayleigh quotient below, the smaller of
the residual bound and the Collatz-Wielandt quotient above, capped by the
maximum degree and by :func:`hsf_bound`), so comparisons between graphs can
be certified rather than eyeballed.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .graphs import Graph

__all__ = ["SpectralEstimate", "Ordering", "rho", "hsf_bound", "compare_estimates", "compare_rho"]

DEFAULT_TOL = 1e-9


class Ordering(enum.Enum):
    """Outcome of an enclosure comparison."""

    LESS = "Less"
    GREATER = "Greater"
    AMBIGUOUS = "Ambiguous"


@dataclass(frozen=True)
class SpectralEstimate:
    """An enclosure ``lo <= rho <= hi`` with its convergence telemetry.

    ``vector`` is a unit vector whose Rayleigh quotient attains ``lo`` (the
    Perron vector once converged); ``converged`` is False when the iteration
    cap was reached before the target width.
    """

    lo: float
    hi: float
    residual: float
    iterations: int
    converged: bool
    vector: np.ndarray = field(repr=False, compare=False)

    @property
    def width(self) -> float:
        return self.hi - self.lo

    def to_dict(self) -> dict:
        return {
            "lo": self.lo,
            "hi": self.hi,
            "residual": self.residual,
            "iterations": self.iterations,
            "converged": self.converged,
        }


def hsf_bound(n: int, m: int, delta: int) -> float:
    """Degree-based spectral radius bound
    ``(delta-1)/2 + sqrt(2m - n*delta + (delta+1)^2/4)``.

    Valid for every graph with ``n`` vertices, ``m`` edges and minimum
    degree ``delta``; tight exactly on regular graphs such as cliques.
    """
    if n < 1:
        raise ValueError(f"order must be positive, got {n}")
    if not 0 <= delta <= n - 1:
        raise ValueError(f"minimum degree {delta} out of range for order {n}")
    if m < 0 or m > n * (n - 1) // 2:
        raise ValueError(f"edge count {m} out of range for order {n}")
    radicand = 2 * m - n * delta + (delta + 1) ** 2 / 4.0
    if radicand < 0:
        raise ValueError(
            f"inconsistent inputs: 2m={2 * m} below n*delta={n * delta}"
        )
    return (delta - 1) / 2.0 + math.sqrt(radicand)


def _max_iterations(n: int, tol: float) -> int:
    return max(1000, int(math.ceil(200 * n * math.log10(1.0 / tol))))


def rho(g: Graph, tol: float = DEFAULT_TOL) -> SpectralEstimate:
    """Certified enclosure of the spectral radius of ``g``.

    Components are handled independently and the componentwise maxima are
    combined, so disconnected input is fine.  A fixed floating-point guard
    (far below any supported ``tol``) widens the enclosure so that the true
    value genuinely lies inside despite rounding.
    """
    if g.n == 0:
        raise ValueError("spectral radius of the order-0 graph is undefined")
    if not 0 < tol <= 1:
        raise ValueError(f"tolerance must lie in (0, 1], got {tol}")
    comps = g.component_masks()
    max_iter = _max_iterations(g.n, tol)
    dense = g.dense_adjacency() if any(c.bit_count() > 1 for c in comps) else None
    best = None
    best_comp = None
    max_lo = 0.0
    max_hi = 0.0
    total_iter = 0
    all_conv = True
    for comp in comps:
        verts = []
        cm = comp
        while cm:
            b = cm & (-cm)
            verts.append(b.bit_length() - 1)
            cm ^= b
        nc = len(verts)
        if nc == 1:
            est = (0.0, 0.0, 0.0, 0, True, np.ones(1))
        else:
            degs = [g.degree_in(v, comp) for v in verts]
            mc = sum(degs) // 2
            cap = min(float(max(degs)), hsf_bound(nc, mc, min(degs)))
            A = dense[np.ix_(verts, verts)]
            guard = 16.0 * np.finfo(np.float64).eps * nc * max(1.0, float(max(degs)))
            est = _kernels.power_iteration(A, tol, max_iter, cap, guard)
        total_iter += est[3]
        all_conv = all_conv and est[4]
        max_lo = max(max_lo, est[0])
        max_hi = max(max_hi, est[1])
        if best is None or est[0] > best[0]:
            best = est
            best_comp = verts
    resid = best[2]
    vector = np.zeros(g.n)
    vector[np.array(best_comp, dtype=np.int64)] = best[5]
    return SpectralEstimate(
        lo=float(max_lo),
        hi=float(max_hi),
        residual=float(resid),
        iterations=total_iter,
        converged=all_conv,
        vector=vector,
    )


def compare_estimates(a: SpectralEstimate, b: SpectralEstimate) -> Ordering:
    """Order two enclosures: certified only when they are disjoint."""
    if a.hi < b.lo:
        return Ordering.LESS
    if a.lo > b.hi:
        return Ordering.GREATER
    return Ordering.AMBIGUOUS


def compare_rho(g1: Graph, g2: Graph, tol: float = DEFAULT_TOL) -> Ordering:
    """Certified comparison of two spectral radii at tolerance ``tol``."""
    return compare_estimates(rho(g1, tol), rho(g2, tol))
