"""Flat-spacetime kinematics: events, boosts, worldlines and swept surfaces.

Conventions
-----------
Coordinates are (t, x, y, z) with t in seconds and positions in metres.
Boosts are pure (rotation-free) and act on inertial coordinates; a boost
with velocity ``v`` maps lab coordinates to the coordinates of an observer
moving at ``v``.  Tangent 4-vectors are stored as ``[dt, dx, dy, dz]``.
"""

from __future__ import annotations

import bisect
import math
from dataclasses import dataclass
from typing import Callable, Sequence

import numpy as np

from .constants import C_LIGHT


class NonMonotoneTime(ValueError):
    """Coordinate time fails to increase strictly along a worldline.

    For subluminal worldlines this cannot happen in any inertial frame, so
    seeing it raised after a boost means the input geometry was bad.
    """


class GeometryError(ValueError):
    """A geometric construction is inconsistent (endpoints, enclosure, ...)."""


def three_vec(x: float = 0.0, y: float = 0.0, z: float = 0.0) -> np.ndarray:
    """Convenience constructor for a float 3-vector."""
    return np.array([x, y, z], dtype=float)


@dataclass(frozen=True)
class Event:
    """A point of spacetime: coordinate time ``t`` (s) and position (m)."""

    t: float
    pos: np.ndarray

    def __post_init__(self):
        pos = np.asarray(self.pos, dtype=float)
        if pos.shape != (3,):
            raise ValueError(f"pos must be a 3-vector, got shape {pos.shape}")
        t = float(self.t)
        if not (math.isfinite(t) and np.isfinite(pos).all()):
            raise ValueError("event coordinates must be finite")
        object.__setattr__(self, "t", t)
        object.__setattr__(self, "pos", pos)

    def four(self) -> np.ndarray:
        """Coordinates as ``[t, x, y, z]`` (t in seconds, not ct)."""
        out = np.empty(4)
        out[0] = self.t
        out[1:] = self.pos
        return out


def _fast_event(t: float, pos: np.ndarray) -> Event:
    """Validation-free Event for hot paths that construct trusted coordinates."""
    e = object.__new__(Event)
    object.__setattr__(e, "t", t)
    object.__setattr__(e, "pos", pos)
    return e


@dataclass(frozen=True)
class Boost:
    """A pure Lorentz boost with velocity ``v`` (m/s) at light speed ``c``."""

    v: np.ndarray
    c: float = C_LIGHT

    def __post_init__(self):
        v = np.asarray(self.v, dtype=float)
        if v.shape != (3,):
            raise ValueError(f"boost velocity must be a 3-vector, got {v.shape}")
        c = float(self.c)
        if not (math.isfinite(c) and c > 0.0):
            raise ValueError("light speed must be finite and positive")
        if not np.isfinite(v).all():
            raise ValueError("boost velocity must be finite")
        speed = float(np.linalg.norm(v))
        if speed >= c:
            raise ValueError("boost speed must be strictly below c")
        object.__setattr__(self, "v", v)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "_speed", speed)
        object.__setattr__(self, "_gamma", 1.0 / math.sqrt(1.0 - (speed / c) ** 2))

    @property
    def speed(self) -> float:
        return self._speed

    @property
    def gamma(self) -> float:
        return self._gamma

    def inverse(self) -> "Boost":
        """The boost mapping the moving frame back to the original one."""
        return Boost(-self.v, self.c)


def boost_event(e: Event, b: Boost) -> Event:
    """Transform an event into the frame moving at ``b.v``.

    The spatial part is split into components parallel and perpendicular
    to the velocity; only the parallel one mixes with time:

        t' = gamma (t - v.x / c^2)
        x'_par = gamma (x_par - v t),   x'_perp = x_perp
    """
    s = b.speed
    if s == 0.0:
        return e
    g = b.gamma
    vdotx = float(b.v @ e.pos)
    t_new = g * (e.t - vdotx / b.c**2)
    pos_new = e.pos + ((g - 1.0) * vdotx / s**2 - g * e.t) * b.v
    return _fast_event(t_new, pos_new)


def boost_tangent(tau: np.ndarray, b: Boost) -> np.ndarray:
    """Apply the (linear) boost to a tangent 4-vector ``[dt, dx, dy, dz]``."""
    s = b.speed
    if s == 0.0:
        return np.asarray(tau, dtype=float)
    g = b.gamma
    dt, dx = tau[0], np.asarray(tau[1:], dtype=float)
    vdotx = float(b.v @ dx)
    out = np.empty(4)
    out[0] = g * (dt - vdotx / b.c**2)
    out[1:] = dx + ((g - 1.0) * vdotx / s**2 - g * dt) * b.v
    return out


class Worldline:
    """A piecewise-linear trajectory with strictly increasing frame time.

    The curve is parametrized by ``tau`` in [0, 1], uniform in coordinate
    time between the first and last vertex.  Between vertices the motion is
    inertial, so a Lorentz boost of the vertices reproduces the boosted
    curve exactly.

    Parameters
    ----------
    vertices : sequence of Event
        At least two events with strictly increasing ``t``.
    """

    def __init__(self, vertices: Sequence[Event]):
        vertices = tuple(vertices)
        if len(vertices) < 2:
            raise ValueError("a worldline needs at least two vertices")
        times = np.array([e.t for e in vertices])
        if not np.all(np.diff(times) > 0.0):
            raise NonMonotoneTime("vertex times must increase strictly")
        self.vertices = vertices
        self._times = times
        self._times_list = times.tolist()
        self._positions = np.stack([e.pos for e in vertices])
        self._velocities = np.diff(self._positions, axis=0) / np.diff(times)[:, None]

    @property
    def t0(self) -> float:
        return float(self._times[0])

    @property
    def tf(self) -> float:
        return float(self._times[-1])

    @property
    def duration(self) -> float:
        return self.tf - self.t0

    @property
    def vertex_times(self) -> np.ndarray:
        return self._times.copy()

    def _segment_index(self, t: float) -> int:
        i = bisect.bisect_right(self._times_list, t) - 1
        return min(max(i, 0), len(self._times_list) - 2)

    def position_at_time(self, t: float) -> np.ndarray:
        """Interpolated position at frame time ``t`` (clamped to the span)."""
        i = self._segment_index(t)
        dt = min(max(t, self._times_list[0]), self._times_list[-1]) - self._times_list[i]
        return self._positions[i] + self._velocities[i] * dt

    def velocity_at_time(self, t: float) -> np.ndarray:
        """Segment velocity at frame time ``t`` (right-continuous at kinks)."""
        return self._velocities[self._segment_index(t)].copy()

    def max_speed(self) -> float:
        return float(np.max(np.linalg.norm(self._velocities, axis=1)))

    def time_at(self, tau: float) -> float:
        return self.t0 + tau * self.duration

    def __call__(self, tau: float) -> Event:
        t = self.time_at(tau)
        return _fast_event(t, self.position_at_time(t))


def boost_worldline(w: Worldline, b: Boost) -> Worldline:
    """Boost every vertex; the result is again piecewise-inertial.

    The boosted worldline is reparametrized uniformly in the new frame
    time, which is what the constructor does with the transformed vertex
    list.  Raises NonMonotoneTime if the boosted times fail to increase,
    which for ``|v| < c`` only happens when the input was superluminal.
    """
    return Worldline([boost_event(e, b) for e in w.vertices])


@dataclass(frozen=True)
class WorldlinePair:
    """Two worldlines sharing both endpoints (a split/recombine loop)."""

    a: Worldline
    b: Worldline

    def __post_init__(self):
        ea0, eb0 = self.a.vertices[0], self.b.vertices[0]
        ea1, eb1 = self.a.vertices[-1], self.b.vertices[-1]
        same_start = ea0.t == eb0.t and np.array_equal(ea0.pos, eb0.pos)
        same_end = ea1.t == eb1.t and np.array_equal(ea1.pos, eb1.pos)
        if not (same_start and same_end):
            raise GeometryError("paired worldlines must share both endpoints")


def boost_pair(pair: WorldlinePair, b: Boost) -> WorldlinePair:
    """Boost both members of a pair (shared endpoints stay shared)."""
    return WorldlinePair(boost_worldline(pair.a, b), boost_worldline(pair.b, b))


@dataclass(frozen=True)
class SpacetimeSurface:
    """A parametric surface ``(u, s) in [0,1]^2 -> Event``.

    ``jacobian(u, s)``, when given, must return the two tangent 4-vectors
    ``(d sigma/d u, d sigma/d s)`` as ``[dt, dx, dy, dz]`` arrays; without
    it, finite differences are used.  ``u_breaks``/``s_breaks`` list
    parameter values where the chart is only piecewise smooth, so that
    quadrature can split there.  ``degenerate_seams`` marks surfaces whose
    u = 0 and u = 1 edges are single points (worldline-pair spans), letting
    boundary integrals skip the seams.
    """

    chart: Callable[[float, float], Event]
    jacobian: Callable[[float, float], tuple[np.ndarray, np.ndarray]] | None = None
    u_breaks: tuple[float, ...] = (0.0, 1.0)
    s_breaks: tuple[float, ...] = (0.0, 1.0)
    degenerate_seams: bool = False


def _edge_taus(pair: WorldlinePair) -> tuple[float, ...]:
    """Kink locations of either worldline, as fractions of the shared span."""
    t0, tf = pair.a.t0, pair.a.tf
    taus = np.concatenate([pair.a.vertex_times, pair.b.vertex_times])
    taus = np.unique((taus - t0) / (tf - t0))
    return tuple(np.clip(taus, 0.0, 1.0))


def _slice_time_map(w: Worldline, b: Boost):
    """Invert the moving observer's clock along a worldline.

    The observer time tau = gamma (t - v.x(t)/c^2) is strictly increasing
    in lab time for any subluminal worldline, linear on each segment, so
    each simultaneity slice meets the worldline exactly once.  Returns the
    tau values at the vertices plus exact inverse / rate functions, all in
    lab-sized numbers (never forming the large boosted spatial coordinate,
    which would cost ~half the significand at everyday SI scales).
    """
    g, c2 = b.gamma, b.c * b.c
    taus = [
        g * (t - float(b.v @ p) / c2)
        for t, p in zip(w._times_list, w._positions)
    ]

    def lab_time(tau: float) -> float:
        i = bisect.bisect_right(taus, tau) - 1
        i = min(max(i, 0), len(taus) - 2)
        rate = g * (1.0 - float(b.v @ w._velocities[i]) / c2)
        return w._times_list[i] + (tau - taus[i]) / rate

    def rate_at(t: float) -> float:
        return g * (1.0 - float(b.v @ w.velocity_at_time(t)) / c2)

    return taus, lab_time, rate_at


def ruled_surface_equal_time(
    pair: WorldlinePair, slicing: Boost | None = None
) -> SpacetimeSurface:
    """Surface ruled by straight chords between simultaneous packet events.

    sigma(u, s) = ( t(u), (1-s) a(t(u)) + s b(t(u)) )  with t(u) linear in u.

    With a ``slicing`` boost the chords instead join events that are
    simultaneous for the moving observer, u running uniformly over that
    observer's time; the chords tilt in lab coordinates but the chart stays
    in the lab frame, which keeps region lookups well-conditioned even when
    the boosted coordinates themselves would be astronomically large.

    The s = 0 edge is worldline ``a``, s = 1 is worldline ``b``, and the
    u = 0 / u = 1 seams collapse to the shared endpoints.
    """
    a, b = pair.a, pair.b
    if slicing is not None and slicing.speed > 0.0:
        return _sliced_ruled_surface(pair, slicing)
    t0, span = a.t0, a.duration

    def chart(u: float, s: float) -> Event:
        t = t0 + u * span
        pa = a.position_at_time(t)
        pb = b.position_at_time(t)
        return _fast_event(t, (1.0 - s) * pa + s * pb)

    def jacobian(u: float, s: float):
        t = t0 + u * span
        va = a.velocity_at_time(t)
        vb = b.velocity_at_time(t)
        du = np.empty(4)
        du[0] = span
        du[1:] = span * ((1.0 - s) * va + s * vb)
        ds = np.empty(4)
        ds[0] = 0.0
        ds[1:] = b.position_at_time(t) - a.position_at_time(t)
        return du, ds

    return SpacetimeSurface(
        chart,
        jacobian,
        u_breaks=_edge_taus(pair),
        s_breaks=(0.0, 1.0),
        degenerate_seams=True,
    )


def _sliced_ruled_surface(pair: WorldlinePair, slicing: Boost) -> SpacetimeSurface:
    a, b = pair.a, pair.b
    taus_a, lab_a, rate_a = _slice_time_map(a, slicing)
    taus_b, lab_b, rate_b = _slice_time_map(b, slicing)
    tau0, tau_span = taus_a[0], taus_a[-1] - taus_a[0]

    def chart(u: float, s: float) -> Event:
        tau = tau0 + u * tau_span
        ta, tb = lab_a(tau), lab_b(tau)
        pa = a.position_at_time(ta)
        pb = b.position_at_time(tb)
        return _fast_event((1.0 - s) * ta + s * tb, (1.0 - s) * pa + s * pb)

    def jacobian(u: float, s: float):
        tau = tau0 + u * tau_span
        ta, tb = lab_a(tau), lab_b(tau)
        dta = tau_span / rate_a(ta)
        dtb = tau_span / rate_b(tb)
        du = np.empty(4)
        du[0] = (1.0 - s) * dta + s * dtb
        du[1:] = (1.0 - s) * dta * a.velocity_at_time(ta) + s * dtb * b.velocity_at_time(tb)
        ds = np.empty(4)
        ds[0] = tb - ta
        ds[1:] = b.position_at_time(tb) - a.position_at_time(ta)
        return du, ds

    breaks = np.unique((np.array(taus_a + taus_b) - tau0) / tau_span)
    return SpacetimeSurface(
        chart,
        jacobian,
        u_breaks=tuple(np.clip(breaks, 0.0, 1.0)),
        s_breaks=(0.0, 1.0),
        degenerate_seams=True,
    )


def bulged_ruled_surface(
    pair: WorldlinePair,
    amp_pos: np.ndarray | None = None,
    amp_t: float = 0.0,
    modes: tuple[int, int] = (1, 1),
    slicing: Boost | None = None,
) -> SpacetimeSurface:
    """An equal-time ruled surface with a sinusoidal bulge in its interior.

    The perturbation ``sin(pi m u) sin(pi n s) * (amp_t, amp_pos)`` vanishes
    on the whole boundary, so the surface still spans the same worldline
    pair.  Useful for checking that totals do not depend on the choice of
    spanning surface.
    """
    base = ruled_surface_equal_time(pair, slicing)
    ap = np.zeros(3) if amp_pos is None else np.asarray(amp_pos, dtype=float)
    bump4 = np.empty(4)
    bump4[0] = amp_t
    bump4[1:] = ap
    m, n = modes

    def chart(u: float, s: float) -> Event:
        e = base.chart(u, s)
        w = math.sin(math.pi * m * u) * math.sin(math.pi * n * s)
        return _fast_event(e.t + w * amp_t, e.pos + w * ap)

    def jacobian(u: float, s: float):
        du, ds = base.jacobian(u, s)
        su, cu = math.sin(math.pi * m * u), math.cos(math.pi * m * u)
        ss, cs = math.sin(math.pi * n * s), math.cos(math.pi * n * s)
        return (du + (math.pi * m * cu * ss) * bump4,
                ds + (math.pi * n * su * cs) * bump4)

    return SpacetimeSurface(
        chart,
        jacobian,
        u_breaks=base.u_breaks,
        s_breaks=base.s_breaks,
        degenerate_seams=True,
    )


def boost_surface(srf: SpacetimeSurface, b: Boost) -> SpacetimeSurface:
    """Express a surface in boosted coordinates (same geometric object)."""
    jac = None
    if srf.jacobian is not None:
        def jac(u: float, s: float):
            du, ds = srf.jacobian(u, s)
            return boost_tangent(du, b), boost_tangent(ds, b)

    return SpacetimeSurface(
        lambda u, s: boost_event(srf.chart(u, s), b),
        jac,
        u_breaks=srf.u_breaks,
        s_breaks=srf.s_breaks,
        degenerate_seams=srf.degenerate_seams,
    )


def surface_jacobian(
    srf: SpacetimeSurface, u: float, s: float, h: float = 1e-6
) -> tuple[np.ndarray, np.ndarray]:
    """Tangent 4-vectors (d/du, d/ds) at (u, s).

    Uses the analytic jacobian when the surface carries one, otherwise
    central differences of step ``h`` with second-order one-sided stencils
    at the parameter-square boundary.
    """
    if srf.jacobian is not None:
        du, ds = srf.jacobian(u, s)
        return np.asarray(du, dtype=float), np.asarray(ds, dtype=float)

    def diff(axis: int) -> np.ndarray:
        def at(uu: float, ss: float) -> np.ndarray:
            return srf.chart(uu, ss).four()

        p = (u, s)
        x = p[axis]
        if x - h < 0.0:
            f0 = at(*p)
            f1 = at(*_bump(p, axis, h))
            f2 = at(*_bump(p, axis, 2 * h))
            return (-3.0 * f0 + 4.0 * f1 - f2) / (2.0 * h)
        if x + h > 1.0:
            f0 = at(*p)
            f1 = at(*_bump(p, axis, -h))
            f2 = at(*_bump(p, axis, -2 * h))
            return (3.0 * f0 - 4.0 * f1 + f2) / (2.0 * h)
        return (at(*_bump(p, axis, h)) - at(*_bump(p, axis, -h))) / (2.0 * h)

    return diff(0), diff(1)


def _bump(p: tuple[float, float], axis: int, d: float) -> tuple[float, float]:
    q = list(p)
    q[axis] += d
    return q[0], q[1]
