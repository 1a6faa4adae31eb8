"""Adaptive Gauss-Legendre quadrature aware of labelled discontinuities.

The integrators here are one-dimensional but vector-valued; the surface
integrals in :mod:`abflux.holonomy` nest them.  Discontinuity handling
works off region labels: a scan locates label changes along the
integration axis, bisects each change to near machine precision, and the
resulting points become hard panel boundaries, so every Gauss panel only
ever sees a smooth integrand.  Labels carrying the ``near:`` prefix mark
boundary-adjacent zones and trigger locally denser scanning, which
catches features narrower than the base scan step.
"""

from __future__ import annotations

import heapq
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterable, Sequence

import numpy as np

from .em import NEAR_PREFIX


class ToleranceNotMet(RuntimeError):
    """Adaptive refinement hit its depth limit above the requested tolerance."""

    def __init__(self, message: str, residual: float, tol: float, intervals: int):
        super().__init__(message)
        self.residual = residual
        self.tol = tol
        self.intervals = intervals


@dataclass(frozen=True)
class QuadratureSpec:
    """Knobs for the adaptive integrator.

    base_order
        Gauss nodes per panel on the adaptive (outer) axis; the error
        estimate doubles this, so smooth panels converge at order
        2*base_order or better.
    initial_panels
        (outer, inner) panel counts before any refinement; the inner count
        also sets the density of the discontinuity scan along chords.
    tol
        Absolute tolerance on the accumulated surface integral, in the
        natural units of the integrand (volt-seconds for flux work).
    max_depth
        Bisection depth limit per initial panel before giving up.
    """

    base_order: int = 4
    initial_panels: tuple[int, int] = (16, 16)
    tol: float = 1e-9
    max_depth: int = 18

    def __post_init__(self):
        if self.base_order < 2:
            raise ValueError("base_order must be at least 2")
        if min(self.initial_panels) < 1:
            raise ValueError("initial_panels entries must be positive")
        if not self.tol > 0.0:
            raise ValueError("tol must be positive")
        if self.max_depth < 0:
            raise ValueError("max_depth must be non-negative")


@lru_cache(maxsize=None)
def gauss_nodes(n: int) -> tuple[np.ndarray, np.ndarray]:
    """Gauss-Legendre nodes and weights mapped to [0, 1]."""
    x, w = np.polynomial.legendre.leggauss(n)
    return (x + 1.0) * 0.5, w * 0.5


def fixed_quad(fn: Callable[[float], np.ndarray], lo: float, hi: float, n: int) -> np.ndarray:
    """n-point Gauss rule for a vector-valued integrand on [lo, hi]."""
    x, w = gauss_nodes(n)
    width = hi - lo
    acc = w[0] * np.asarray(fn(lo + width * x[0]), dtype=float)
    for xi, wi in zip(x[1:], w[1:]):
        acc = acc + wi * np.asarray(fn(lo + width * xi), dtype=float)
    return acc * width


def _bisect_change(
    label_fn: Callable[[float], str], x0: float, x1: float, l0: str, eps: float
) -> float:
    while (x1 - x0) > eps:
        mid = 0.5 * (x0 + x1)
        if label_fn(mid) == l0:
            x0 = mid
        else:
            x1 = mid
    return 0.5 * (x0 + x1)


def find_label_breaks(
    label_fn: Callable[[float], str],
    lo: float = 0.0,
    hi: float = 1.0,
    samples: int = 33,
    refine_levels: int = 2,
    refine_factor: int = 8,
    eps: float = 1e-13,
    probes: Sequence[float] = (),
) -> list[float]:
    """Locate points in (lo, hi) where the label function changes value.

    Each change found by scanning is sharpened by bisection down to
    ``eps`` (in parameter units).  Intervals touching a ``near:``-labelled
    sample are rescanned ``refine_levels`` times at ``refine_factor`` the
    density, so thin islands hiding between base samples are still found
    as long as the labelling's adjacency margin is wider than the finest
    scan step.  ``probes`` are extra sample points merged into the base
    scan: a caller that knows where islands are born can make their
    detection immediate instead of waiting for them to outgrow the grid.
    """
    xs = np.linspace(lo, hi, max(2, samples))
    inside = [p for p in probes if lo < p < hi]
    if inside:
        xs = np.unique(np.concatenate([xs, np.asarray(inside, dtype=float)]))
    labels = [label_fn(float(x)) for x in xs]
    work = deque(
        (float(xs[i]), float(xs[i + 1]), labels[i], labels[i + 1], 0)
        for i in range(len(xs) - 1)
    )
    found: list[float] = []
    while work:
        x0, x1, l0, l1, level = work.popleft()
        near = l0.startswith(NEAR_PREFIX) or l1.startswith(NEAR_PREFIX)
        if level < refine_levels and (near or l0 != l1) and (x1 - x0) > 4.0 * eps:
            sub = np.linspace(x0, x1, refine_factor + 1)
            sub_labels = [l0] + [label_fn(float(x)) for x in sub[1:-1]] + [l1]
            for i in range(refine_factor):
                work.append(
                    (float(sub[i]), float(sub[i + 1]), sub_labels[i], sub_labels[i + 1], level + 1)
                )
        elif l0 != l1:
            found.append(_bisect_change(label_fn, x0, x1, l0, eps))
    return sorted(found)


def merge_breakpoints(
    lo: float, hi: float, groups: Iterable[Sequence[float]], min_gap: float = 1e-12
) -> list[float]:
    """Sorted edge list from lo to hi, deduplicating near-coincident points."""
    pts = [lo, hi]
    for g in groups:
        pts.extend(p for p in g if lo < p < hi)
    pts.sort()
    edges = [pts[0]]
    for p in pts[1:]:
        if p - edges[-1] > min_gap * max(1.0, abs(hi - lo)):
            edges.append(p)
    if edges[-1] != hi:
        edges[-1] = hi
    return edges


@dataclass
class AdaptiveResult:
    value: np.ndarray
    error: float
    intervals: int
    converged: bool


def adaptive_integrate(
    fn: Callable[[float], np.ndarray],
    lo: float,
    hi: float,
    *,
    order: int = 4,
    tol: float = 1e-9,
    max_depth: int = 18,
    breakpoints: Sequence[float] = (),
) -> AdaptiveResult:
    """Globally adaptive Gauss quadrature with an absolute error budget.

    Every interval is evaluated with ``order`` and ``2*order`` nodes; the
    difference is its error estimate.  The worst interval is bisected
    until the summed estimate drops below ``tol`` or each offender reaches
    ``max_depth`` halvings of its initial panel.  Evaluation and summation
    order are deterministic.

    Gauss pairs share a blind spot: a jump or onset lying between a panel
    edge and the outermost node of both rules leaves both estimates in
    agreement around the wrong value.  Whenever the estimate claims
    convergence, every surviving panel is therefore audited against the
    sum of its halves -- whose nodes reach into the parent's gaps -- and
    panels that fail re-enter the refinement loop (a few rounds at most);
    if the audit still fails, the result honestly reports non-convergence.
    """
    edges = merge_breakpoints(lo, hi, [breakpoints])

    def measure(x0: float, x1: float):
        v_lo = fixed_quad(fn, x0, x1, order)
        v_hi = fixed_quad(fn, x0, x1, 2 * order)
        return v_hi, float(np.sum(np.abs(v_hi - v_lo)))

    seq = 0
    heap: list[tuple[float, int, float, float, int, np.ndarray, float]] = []
    frozen: list[tuple[float, np.ndarray]] = []
    frozen_err = 0.0
    total_err = 0.0
    for x0, x1 in zip(edges[:-1], edges[1:]):
        v, err = measure(x0, x1)
        heapq.heappush(heap, (-err, seq, x0, x1, 0, v, err))
        seq += 1
        total_err += err

    min_width = 64.0 * np.finfo(float).eps * max(1.0, abs(hi - lo))
    audits_left = 3
    while heap:
        while heap and total_err > tol:
            _, _, x0, x1, depth, v, err = heapq.heappop(heap)
            if depth >= max_depth or (x1 - x0) <= min_width:
                frozen.append((x0, v))
                frozen_err += err
                if frozen_err > tol:
                    break  # cannot do better; report the residual
                continue
            total_err -= err
            mid = 0.5 * (x0 + x1)
            for a, b in ((x0, mid), (mid, x1)):
                vv, ee = measure(a, b)
                heapq.heappush(heap, (-ee, seq, a, b, depth + 1, vv, ee))
                seq += 1
                total_err += ee
        if total_err > tol or audits_left == 0:
            break
        audits_left -= 1
        audited: list[tuple[float, int, float, float, int, np.ndarray, float]] = []
        clean = True
        for item in sorted(heap, key=lambda it: it[2]):
            _, _, x0, x1, depth, v, err = item
            mid = 0.5 * (x0 + x1)
            halves = fixed_quad(fn, x0, mid, order) + fixed_quad(fn, mid, x1, order)
            gap = float(np.sum(np.abs(halves - v)))
            if gap > err:
                total_err += gap - err
                err, clean = gap, False
            audited.append((-err, item[1], x0, x1, depth, v, err))
        heap = audited
        heapq.heapify(heap)
        if clean:
            break

    pieces = frozen + [(item[2], item[5]) for item in heap]
    pieces.sort(key=lambda p: p[0])
    value = pieces[0][1].copy()
    for _, v in pieces[1:]:
        value += v
    return AdaptiveResult(value, total_err, len(pieces), total_err <= tol)
