"""Interference phases two ways: potential holonomy and field flux.

For a charge ``q`` split over two worldlines ``a`` and ``b`` with common
endpoints, the relative phase is the loop integral of the potentials,

    phase = -(q/hbar) * [ integral_a (V dt - A.dx) - integral_b (...) ],

and equally the flux of the field 2-form through any surface spanning the
two worldlines,

    phase = (q/hbar) * surface integral of ( B.da - E.[dt dx] ),

whose magnetic and electric pieces this module reports separately.  The
two routes agreeing is the generalized boundary/derivative identity that
:func:`stokes_check` (and its 3-D cousins) test directly.

Orientation: the surface parametrization runs forward along ``a`` at
s = 0, so a counterclockwise ``a`` around a positive axial magnetic flux
yields a positive total phase.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Literal

import numpy as np

from .constants import E_CHARGE, HBAR
from .em import NEAR_PREFIX, EmConfiguration, PotentialSample, boost_field
from .quadrature import (
    QuadratureSpec,
    ToleranceNotMet,
    adaptive_integrate,
    find_label_breaks,
    fixed_quad,
    gauss_nodes,
    merge_breakpoints,
)
from .spacetime import (
    Boost,
    Event,
    SpacetimeSurface,
    Worldline,
    WorldlinePair,
    boost_tangent,
    surface_jacobian,
)


class FieldOnPath(UserWarning):
    """A worldline passes through a region of non-vanishing fields.

    Issued as a warning by default; raised instead in strict mode.  The
    phase formulas stay mathematically valid, but the interference-reading
    of the result assumes field-free paths.
    """


@dataclass(frozen=True)
class PhaseDecomposition:
    """A flux-route phase split into its magnetic and electric parts.

    ``total == magnetic + electric`` holds exactly by construction and
    equals ``(q/hbar) * reduced_flux`` up to rounding; ``reduced_flux`` is
    the bare surface integral in volt-seconds before charge scaling.
    """

    magnetic: float
    electric: float
    total: float
    reduced_flux: float
    q: float
    panels_used: int = 0
    quad_error: float = 0.0


@dataclass(frozen=True)
class StokesReport:
    """Boundary integral vs integrated derivative, plus their mismatch.

    ``loop_value`` is the lower-dimensional boundary term and
    ``surface_value`` the integral of the exterior derivative over the
    enclosed region; for the spacetime check both are in volt-seconds.
    """

    loop_value: float
    surface_value: float
    abs_err: float
    rel_err: float
    panels_used: int


# ---------------------------------------------------------------------------
# potential route


def _path_action(
    w: Worldline, cfg: EmConfiguration, order: int
) -> tuple[float, int]:
    """integral of (V - A.velocity) dt along one worldline."""

    def integrand(t: float) -> np.ndarray:
        e = Event(t, w.position_at_time(t))
        p = cfg.potential_fn(e)
        return np.array([p.V - float(p.A @ w.velocity_at_time(t))])

    label = lambda t: cfg.region_hint(Event(t, w.position_at_time(t)))
    breaks = merge_breakpoints(
        w.t0,
        w.tf,
        [
            w.vertex_times,
            find_label_breaks(label, w.t0, w.tf, samples=4 * len(w.vertices) + 33),
        ],
    )
    rough = 0.0
    for a, b in zip(breaks[:-1], breaks[1:]):
        rough += float(np.sum(np.abs(fixed_quad(integrand, a, b, order))))
    res = adaptive_integrate(
        integrand,
        w.t0,
        w.tf,
        order=order,
        tol=1e-13 * rough if rough > 0.0 else 1.0,
        max_depth=24,
        breakpoints=breaks[1:-1],
    )
    return float(res.value[0]), res.intervals


def _warn_if_fields_on_path(
    pair: WorldlinePair, cfg: EmConfiguration, strict: bool, samples: int
) -> None:
    worst = 0.0
    where = None
    for w in (pair.a, pair.b):
        ts = np.union1d(w.vertex_times, np.linspace(w.t0, w.tf, samples))
        for t in ts:
            e = Event(float(t), w.position_at_time(float(t)))
            f = cfg.field_fn(e)
            mag = float(np.linalg.norm(f.E) + np.linalg.norm(f.B))
            if mag > worst:
                worst, where = mag, e
    if worst > 0.0:
        msg = (
            f"non-zero field sampled on an interferometer path at t={where.t!r}, "
            f"pos={where.pos!r} (|E|+|B| = {worst:.3e})"
        )
        if strict:
            raise FieldOnPath(msg)
        warnings.warn(FieldOnPath(msg), stacklevel=3)


def potential_phase(
    pair: WorldlinePair,
    cfg: EmConfiguration,
    q: float = E_CHARGE,
    n: int = 8,
    *,
    hbar: float = HBAR,
    strict: bool = False,
    path_check_samples: int = 64,
) -> float:
    """Phase from the gauge potentials along the worldline loop (radians).

    Integrates ``V dt - A.dx`` forward along ``pair.a`` and backward along
    ``pair.b`` with ``n``-node adaptive Gauss panels, splitting panels at
    worldline kinks and at region-label changes so discontinuous switching
    never falls inside a panel.
    """
    _warn_if_fields_on_path(pair, cfg, strict, path_check_samples)
    action_a, _ = _path_action(pair.a, cfg, n)
    action_b, _ = _path_action(pair.b, cfg, n)
    return -(q / hbar) * (action_a - action_b)


# ---------------------------------------------------------------------------
# flux route


def _density_factory(
    srf: SpacetimeSurface, cfg: EmConfiguration, frame: Boost | None = None
) -> Callable[[float, float], np.ndarray]:
    def density(u: float, s: float) -> np.ndarray:
        du, ds = surface_jacobian(srf, u, s)
        f = cfg.field_fn(srf.chart(u, s))
        if frame is not None:
            f = boost_field(f, frame)
            du = boost_tangent(du, frame)
            ds = boost_tangent(ds, frame)
        w_yz = du[2] * ds[3] - du[3] * ds[2]
        w_zx = du[3] * ds[1] - du[1] * ds[3]
        w_xy = du[1] * ds[2] - du[2] * ds[1]
        mag = f.B[0] * w_yz + f.B[1] * w_zx + f.B[2] * w_xy
        ele = -(
            f.E[0] * (du[0] * ds[1] - ds[0] * du[1])
            + f.E[1] * (du[0] * ds[2] - ds[0] * du[2])
            + f.E[2] * (du[0] * ds[3] - ds[0] * du[3])
        )
        return np.array([mag, ele])

    return density


def integrate_two_form(
    srf: SpacetimeSurface,
    cfg: EmConfiguration,
    spec: QuadratureSpec,
    frame: Boost | None = None,
):
    """Magnetic and electric reduced fluxes through a surface (V s).

    The inner (chord) integral is done piecewise-exactly between
    bisection-located region transitions; the outer integral is globally
    adaptive with panel boundaries seeded at surface kinks and wherever
    the fiber's piecewise-label structure changes.  Structure changes
    include boundary tangencies, which hurt a sampling quadrature twice
    over: the inner integral switches on with unbounded slope (a feature
    that can hide between a panel edge and the outermost Gauss node and
    fool the error estimate), and each newborn island stays narrower
    than the fiber scan step for a while, so plain scans systematically
    shave a sliver off it.  Both are handled at the source: a prepass
    locates every transition, pins it to an outer panel edge, and records
    where the newborn piece lives, so that fiber scans near the
    transition probe that spot directly instead of waiting for the piece
    to outgrow the scan grid.

    With ``frame``, the surface and configuration are still sampled in
    their own (lab) coordinates but the magnetic/electric split is the
    moving observer's: field values and tangent vectors are boosted
    sample-by-sample before contraction.  Pair this with a surface whose
    chords follow that observer's simultaneity to reproduce the flux the
    observer would compute, without ever doing arithmetic on the large
    boosted coordinate values.
    """
    n_u, n_s = spec.initial_panels
    density = _density_factory(srf, cfg, frame)
    inner_order = 4 * spec.base_order

    def fiber_breaks(
        u: float, probes: tuple[float, ...] = (), eps: float = 1e-13
    ) -> list[float]:
        label = lambda s: cfg.region_hint(srf.chart(u, s))
        crossings = find_label_breaks(
            label, 0.0, 1.0, samples=2 * n_s + 1, eps=eps, probes=probes
        )
        return merge_breakpoints(0.0, 1.0, [srf.s_breaks, crossings])

    def fiber_signature(u: float) -> str:
        """The fiber's region sequence, e.g. ``out|in|out``, as one label.

        Treated as a label over u, it changes exactly where pieces are
        born, die, or change kind, so feeding it back through the break
        finder locates every structural transition, tangencies included.
        A ``near:`` flag is attached while any piece is thinner than a
        scan step -- the herald of an imminent transition -- making the
        structure scan densify around it.  Boundary-adjacent halo pieces
        are skipped for the width check: they are thin by construction,
        all along the boundary they pad.  Break positions only matter
        here at scan-step scale, so bisection runs at relaxed precision.
        """
        label = lambda s: cfg.region_hint(srf.chart(u, s))
        edges = fiber_breaks(u, eps=1e-9)
        parts = [label(0.5 * (a + b)) for a, b in zip(edges[:-1], edges[1:])]
        sig = "|".join(p.removeprefix(NEAR_PREFIX) for p in parts)
        widths = [
            b - a
            for (a, b), p in zip(zip(edges[:-1], edges[1:]), parts)
            if not p.startswith(NEAR_PREFIX)
        ]
        thin = min(widths, default=0.0) <= 1.0 / n_s
        return NEAR_PREFIX + sig if thin else sig

    # Scan each seam-free stretch separately: the signature usually flips
    # across a seam, and scanning through it would waste bisections
    # rediscovering a point we already know.  1e-8 on the transition
    # positions is enough because the inner integral is continuous across
    # a transition (only its slope blows up), so a seeding sliver that
    # size contributes O(eps^1.5) -- far below any tolerance in use.
    stretches = merge_breakpoints(0.0, 1.0, [srf.u_breaks])
    transitions: list[float] = []
    for a, b in zip(stretches[:-1], stretches[1:]):
        transitions += find_label_breaks(
            fiber_signature,
            a,
            b,
            samples=max(5, round((b - a) * 2 * n_u) + 1),
            refine_levels=1,
            eps=1e-8,
        )

    # Where the structure changes (and across seams, where it may too),
    # diff the break lists just on either side: pairs of breaks without a
    # counterpart outline a piece being born or dying there, and the
    # point between them sits inside that piece for its whole thin
    # infancy.  Those midpoints become standing probes in every fiber
    # scan, so the piece is integrated from birth instead of from when
    # it outgrows the scan grid.  Pieces attached to a fiber endpoint
    # need no probe -- the endpoint itself is always sampled.
    probe_set: set[float] = set()
    for u_star in transitions + stretches[1:-1]:
        below = fiber_breaks(max(0.0, u_star - 1e-7))
        above = fiber_breaks(min(1.0, u_star + 1e-7))
        for own, other in ((below, above), (above, below)):
            news = [x for x in own if min(abs(x - y) for y in other) > 1e-5]
            probe_set.update(0.5 * (x + y) for x, y in zip(news[:-1], news[1:]))
    probes = tuple(sorted(probe_set)[:32])

    def inner(u: float) -> np.ndarray:
        edges = fiber_breaks(u, probes)
        acc = np.zeros(2)
        for a, b in zip(edges[:-1], edges[1:]):
            acc += fixed_quad(lambda s: density(u, s), a, b, inner_order)
        return acc

    seeds = merge_breakpoints(
        0.0, 1.0, [srf.u_breaks, np.linspace(0.0, 1.0, n_u + 1), transitions]
    )

    return adaptive_integrate(
        inner,
        0.0,
        1.0,
        order=spec.base_order,
        tol=spec.tol,
        max_depth=spec.max_depth,
        breakpoints=seeds[1:-1],
    )


def flux_phase(
    srf: SpacetimeSurface,
    cfg: EmConfiguration,
    q: float = E_CHARGE,
    spec: QuadratureSpec | None = None,
    *,
    hbar: float = HBAR,
    frame: Boost | None = None,
) -> PhaseDecomposition:
    """Phase from the field flux through a spanning surface, split in two.

    Returns the magnetic part, the electric part, and their sum; raises
    :class:`ToleranceNotMet` when adaptive refinement cannot push the
    quadrature residual below ``spec.tol`` within ``spec.max_depth``.
    ``frame`` makes the split the one seen by a moving observer (see
    :func:`integrate_two_form`).
    """
    spec = spec or QuadratureSpec()
    res = integrate_two_form(srf, cfg, spec, frame)
    if not res.converged:
        raise ToleranceNotMet(
            f"surface quadrature stalled at residual {res.error:.3e} "
            f"(tol {spec.tol:.3e}, {res.intervals} panels)",
            residual=res.error,
            tol=spec.tol,
            intervals=res.intervals,
        )
    reduced_mag, reduced_ele = float(res.value[0]), float(res.value[1])
    k = q / hbar
    magnetic = k * reduced_mag
    electric = k * reduced_ele
    return PhaseDecomposition(
        magnetic=magnetic,
        electric=electric,
        total=magnetic + electric,
        reduced_flux=reduced_mag + reduced_ele,
        q=q,
        panels_used=res.intervals,
        quad_error=res.error,
    )


# ---------------------------------------------------------------------------
# boundary-vs-derivative checks


def _edge_action(
    srf: SpacetimeSurface,
    cfg: EmConfiguration,
    axis: int,
    fixed: float,
    spec: QuadratureSpec,
) -> tuple[float, int]:
    """integral of (A.dx - V dt) along one parameter edge of the surface."""

    def at(x: float) -> tuple[float, float]:
        return (x, fixed) if axis == 0 else (fixed, x)

    def integrand(x: float) -> np.ndarray:
        u, s = at(x)
        du, ds = surface_jacobian(srf, u, s)
        tang = du if axis == 0 else ds
        p = cfg.potential_fn(srf.chart(u, s))
        return np.array([float(p.A @ tang[1:]) - p.V * tang[0]])

    label = lambda x: cfg.region_hint(srf.chart(*at(x)))
    own_breaks = srf.u_breaks if axis == 0 else srf.s_breaks
    breaks = merge_breakpoints(
        0.0, 1.0, [own_breaks, find_label_breaks(label, samples=65)]
    )
    res = adaptive_integrate(
        integrand,
        0.0,
        1.0,
        order=2 * spec.base_order,
        tol=spec.tol / 8.0,
        max_depth=spec.max_depth,
        breakpoints=breaks[1:-1],
    )
    return float(res.value[0]), res.intervals


def stokes_check(
    srf: SpacetimeSurface, cfg: EmConfiguration, spec: QuadratureSpec | None = None
) -> StokesReport:
    """Compare the gauge 1-form around a surface's boundary with the flux.

    ``loop_value`` integrates ``A.dx - V dt`` around the oriented boundary
    (forward along s = 0, back along s = 1, joined by the u = 0/1 seams
    unless those are degenerate); ``surface_value`` is the reduced flux
    through the surface.  Both are in volt-seconds and agree when the
    configuration's fields really are the derivatives of its potentials.
    """
    spec = spec or QuadratureSpec()
    loop = 0.0
    edge_panels = 0
    for axis, fixed, sign in ((0, 0.0, +1.0), (0, 1.0, -1.0)):
        val, used = _edge_action(srf, cfg, axis, fixed, spec)
        loop += sign * val
        edge_panels += used
    if not srf.degenerate_seams:
        for fixed, sign in ((1.0, +1.0), (0.0, -1.0)):
            val, used = _edge_action(srf, cfg, 1, fixed, spec)
            loop += sign * val
            edge_panels += used

    res = integrate_two_form(srf, cfg, spec)
    surface = float(res.value[0] + res.value[1])
    abs_err = abs(loop - surface)
    scale = max(abs(loop), abs(surface))
    rel_err = abs_err / scale if scale > 0.0 else 0.0
    return StokesReport(
        loop_value=loop,
        surface_value=surface,
        abs_err=abs_err,
        rel_err=rel_err,
        panels_used=res.intervals + edge_panels,
    )


# ---------------------------------------------------------------------------
# classic 3-D specializations


@dataclass(frozen=True)
class Box3D:
    """An axis-aligned box, for the divergence-theorem check."""

    lo: np.ndarray
    hi: np.ndarray

    def __post_init__(self):
        lo = np.asarray(self.lo, dtype=float)
        hi = np.asarray(self.hi, dtype=float)
        if lo.shape != (3,) or hi.shape != (3,) or not np.all(hi > lo):
            raise ValueError("box needs lo < hi componentwise")
        object.__setattr__(self, "lo", lo)
        object.__setattr__(self, "hi", hi)


@dataclass(frozen=True)
class SurfacePatch3D:
    """A smooth parametric patch (u, v) in [0,1]^2 -> R^3 for the curl check."""

    chart: Callable[[float, float], np.ndarray]
    jacobian: Callable[[float, float], tuple[np.ndarray, np.ndarray]] | None = None


_FD_OFFS = (-2.0, -1.0, 1.0, 2.0)
_FD_WTS = (1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0)


def _fd_vec3(fn: Callable[[np.ndarray], np.ndarray], p: np.ndarray, axis: int, h: float):
    acc = np.zeros(3)
    for o, wgt in zip(_FD_OFFS, _FD_WTS):
        q = p.copy()
        q[axis] += o * h
        acc += wgt * np.asarray(fn(q), dtype=float)
    return acc / h


def _patch_jacobian(patch: SurfacePatch3D, u: float, v: float, h: float = 1e-5):
    if patch.jacobian is not None:
        ru, rv = patch.jacobian(u, v)
        return np.asarray(ru, dtype=float), np.asarray(rv, dtype=float)

    def fd(axis: int) -> np.ndarray:
        acc = np.zeros(3)
        for o, wgt in zip(_FD_OFFS, _FD_WTS):
            uu, vv = (u + o * h, v) if axis == 0 else (u, v + o * h)
            acc += wgt * np.asarray(patch.chart(uu, vv), dtype=float)
        return acc / h

    return fd(0), fd(1)


def stokes_check_3d(
    kind: Literal["divergence", "curl"],
    field: Callable[[np.ndarray], np.ndarray],
    region: Box3D | SurfacePatch3D,
    *,
    order: int = 10,
    h: float = 1e-3,
) -> StokesReport:
    """Static 3-D boundary/derivative identities on a smooth vector field.

    kind="divergence" with a :class:`Box3D`: outward flux through the six
    faces against the volume integral of the (finite-difference)
    divergence.  kind="curl" with a :class:`SurfacePatch3D`: circulation
    around the patch border against the flux of the finite-difference
    curl.  ``h`` is the absolute step of the fourth-order stencils.
    """
    x, w = gauss_nodes(order)
    if kind == "divergence":
        if not isinstance(region, Box3D):
            raise TypeError("divergence check needs a Box3D region")
        lo, hi = region.lo, region.hi
        ext = hi - lo
        flux = 0.0
        for axis in range(3):
            i, j = (axis + 1) % 3, (axis + 2) % 3
            area = ext[i] * ext[j]
            for side, sign in ((lo[axis], -1.0), (hi[axis], +1.0)):
                for xi, wi in zip(x, w):
                    for xj, wj in zip(x, w):
                        p = np.empty(3)
                        p[axis] = side
                        p[i] = lo[i] + ext[i] * xi
                        p[j] = lo[j] + ext[j] * xj
                        flux += sign * wi * wj * area * float(field(p)[axis])
        volume = float(np.prod(ext))
        bulk = 0.0
        for xi, wi in zip(x, w):
            for xj, wj in zip(x, w):
                for xk, wk in zip(x, w):
                    p = lo + ext * np.array([xi, xj, xk])
                    div = sum(float(_fd_vec3(field, p, a, h)[a]) for a in range(3))
                    bulk += wi * wj * wk * volume * div
        loop_value, surface_value, panels = flux, bulk, 7
    elif kind == "curl":
        if not isinstance(region, SurfacePatch3D):
            raise TypeError("curl check needs a SurfacePatch3D region")

        def edge(axis: int, fixed: float, sign: float) -> float:
            total = 0.0
            for xi, wi in zip(x, w):
                u, v = (xi, fixed) if axis == 0 else (fixed, xi)
                ru, rv = _patch_jacobian(region, u, v)
                tang = ru if axis == 0 else rv
                total += sign * wi * float(field(region.chart(u, v)) @ tang)
            return total

        circulation = (
            edge(0, 0.0, +1.0) + edge(1, 1.0, +1.0) + edge(0, 1.0, -1.0) + edge(1, 0.0, -1.0)
        )
        bulk = 0.0
        for xi, wi in zip(x, w):
            for xj, wj in zip(x, w):
                ru, rv = _patch_jacobian(region, xi, xj)
                p = region.chart(xi, xj)
                cx = _fd_vec3(field, p, 1, h)[2] - _fd_vec3(field, p, 2, h)[1]
                cy = _fd_vec3(field, p, 2, h)[0] - _fd_vec3(field, p, 0, h)[2]
                cz = _fd_vec3(field, p, 0, h)[1] - _fd_vec3(field, p, 1, h)[0]
                bulk += wi * wj * float(np.array([cx, cy, cz]) @ np.cross(ru, rv))
        loop_value, surface_value, panels = circulation, bulk, 5
    else:
        raise ValueError(f"unknown check kind {kind!r}")

    abs_err = abs(loop_value - surface_value)
    scale = max(abs(loop_value), abs(surface_value))
    return StokesReport(
        loop_value=loop_value,
        surface_value=surface_value,
        abs_err=abs_err,
        rel_err=abs_err / scale if scale > 0.0 else 0.0,
        panels_used=panels,
    )


# ---------------------------------------------------------------------------
# gauge transformations


def gauge_shift(
    cfg: EmConfiguration,
    chi: Callable[[Event], float],
    *,
    h_time: float = 1e-6,
    h_space: float = 1e-6,
) -> EmConfiguration:
    """Re-gauge a configuration by a scalar generator: V -= dchi/dt, A += grad chi.

    Derivatives of ``chi`` are fourth-order finite differences (exact for
    cubic generators); fields and region labels are untouched, and every
    loop phase must be too -- that is the gauge-invariance test.
    """
    from .numdiff import gradient, time_derivative

    def potential_fn(e: Event) -> PotentialSample:
        p = cfg.potential_fn(e)
        return PotentialSample(
            p.V - time_derivative(chi, e, h_time),
            p.A + gradient(chi, e, h_space),
        )

    return EmConfiguration(cfg.field_fn, potential_fn, cfg.region_hint)
