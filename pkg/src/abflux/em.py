"""Electromagnetic configurations: fields, potentials and their boosts.

A configuration bundles three callables over events: the fields (E, B),
a gauge choice of potentials (V, A) generating them, and a region label
used by the quadrature to locate material/switching discontinuities.

Region labels are plain strings.  Labels differ across any surface where
the integrands jump or kink, and carry a ``near:`` prefix inside a thin
margin around such a surface so that sampling can be densified there.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .polynomial import Polynomial4D
from .spacetime import Boost, Event, GeometryError, boost_event, three_vec

NEAR_PREFIX = "near:"


def _cross(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    # np.cross has high constant overhead on single 3-vectors
    return np.array(
        [
            a[1] * b[2] - a[2] * b[1],
            a[2] * b[0] - a[0] * b[2],
            a[0] * b[1] - a[1] * b[0],
        ]
    )


@dataclass(frozen=True)
class FieldSample:
    """Electric (V/m) and magnetic (T) field vectors at one event."""

    E: np.ndarray
    B: np.ndarray


@dataclass(frozen=True)
class PotentialSample:
    """Scalar potential V (volts) and vector potential A (V s/m)."""

    V: float
    A: np.ndarray


@dataclass(frozen=True)
class EmConfiguration:
    field_fn: Callable[[Event], FieldSample]
    potential_fn: Callable[[Event], PotentialSample]
    region_hint: Callable[[Event], str]


# ---------------------------------------------------------------------------
# ideal infinite solenoid


@dataclass(frozen=True)
class SolenoidConfig:
    """Infinite ideal solenoid: uniform axial field inside radius ``radius``.

    ``axis_point`` and ``axis_dir`` fix the axis line (default: z axis
    through the origin).  The exterior field vanishes identically while the
    vector potential does not -- the configuration whose interference
    phase the rest of the package is about.
    """

    b0: float
    radius: float
    axis_point: np.ndarray = field(default_factory=three_vec)
    axis_dir: np.ndarray = field(default_factory=lambda: three_vec(0.0, 0.0, 1.0))
    hint_margin: float = 0.1  # fraction of radius flagged as boundary-adjacent

    def __post_init__(self):
        if self.radius <= 0.0:
            raise GeometryError("solenoid radius must be positive")
        p = np.asarray(self.axis_point, dtype=float)
        d = np.asarray(self.axis_dir, dtype=float)
        n = np.linalg.norm(d)
        if n == 0.0:
            raise GeometryError("solenoid axis direction must be nonzero")
        object.__setattr__(self, "axis_point", p)
        object.__setattr__(self, "axis_dir", d / n)


def solenoid_configuration(cfg: SolenoidConfig) -> EmConfiguration:
    """Fields and the symmetric azimuthal gauge of an ideal solenoid.

    Gauge: V = 0 and A purely azimuthal with magnitude B0 rho / 2 inside,
    B0 r^2 / (2 rho) outside; continuous at the wall.
    """
    b0, r = cfg.b0, cfg.radius
    p0, axis = cfg.axis_point, cfg.axis_dir
    margin = cfg.hint_margin * r
    b_in = b0 * axis
    zero = np.zeros(3)

    def radial(pos: np.ndarray) -> tuple[np.ndarray, float]:
        rel = pos - p0
        rad = rel - (rel @ axis) * axis
        return rad, float(np.linalg.norm(rad))

    def field_fn(e: Event) -> FieldSample:
        _, rho = radial(e.pos)
        return FieldSample(zero, b_in if rho < r else zero)

    def potential_fn(e: Event) -> PotentialSample:
        rad, rho = radial(e.pos)
        if rho == 0.0:
            return PotentialSample(0.0, zero)
        # A = A_phi(rho) * phi_hat  with  phi_hat = axis x rad / rho
        a_over_rho = 0.5 * b0 if rho < r else 0.5 * b0 * r**2 / rho**2
        return PotentialSample(0.0, a_over_rho * _cross(axis, rad))

    def region_hint(e: Event) -> str:
        _, rho = radial(e.pos)
        zone = "in" if rho < r else "out"
        if abs(rho - r) <= margin:
            return NEAR_PREFIX + zone
        return zone

    return EmConfiguration(field_fn, potential_fn, region_hint)


# ---------------------------------------------------------------------------
# pulsed parallel-plate capacitor


@dataclass(frozen=True)
class CapacitorConfig:
    """Idealized capacitor slab holding a uniform field for a finite pulse.

    The field fills the infinite slab between two planes a distance ``gap``
    apart, points along the slab normal ``(cos(theta), 0, sin(theta))``,
    and is switched on only for ``t_start <= t <= t_start + duration``
    (switching treated as instantaneous everywhere).

    ``chord_length`` is the length of the straight chord between the two
    packet stations that lies inside the slab; consistency requires
    ``gap = chord_length * cos(2 theta)``, which also forces
    ``0 <= theta < pi/4``.
    """

    e_mag: float
    theta: float
    chord_length: float
    t_start: float
    duration: float
    center: np.ndarray = field(default_factory=three_vec)
    gap: float | None = None
    # fraction of the gap (spatially) and of the duration (temporally)
    # flagged as boundary-adjacent; off by default because the slab spans
    # a fat fraction of every chord that meets it, so a blanket halo only
    # inflates the scan cost without sharpening detection
    hint_margin: float = 0.0

    def __post_init__(self):
        if not 0.0 <= self.theta < math.pi / 4.0:
            raise GeometryError("tilt angle must satisfy 0 <= theta < pi/4")
        if self.chord_length <= 0.0 or self.duration <= 0.0:
            raise GeometryError("chord length and pulse duration must be positive")
        expected = self.chord_length * math.cos(2.0 * self.theta)
        gap = expected if self.gap is None else float(self.gap)
        if abs(gap - expected) > 1e-12 * max(1.0, abs(expected)):
            raise GeometryError(
                "slab gap must equal chord_length * cos(2 theta) "
                f"(got {gap!r}, expected {expected!r})"
            )
        object.__setattr__(self, "gap", gap)
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))

    @property
    def normal(self) -> np.ndarray:
        """Unit slab normal; the field direction while the pulse is on."""
        return three_vec(math.cos(self.theta), 0.0, math.sin(self.theta))

    @property
    def t_end(self) -> float:
        return self.t_start + self.duration

    @property
    def chord_dir(self) -> np.ndarray:
        """Unit vector of the packet-to-packet chord (tilted opposite)."""
        return three_vec(math.cos(self.theta), 0.0, -math.sin(self.theta))


def capacitor_configuration(cfg: CapacitorConfig) -> EmConfiguration:
    """Fields and a scalar-only gauge (A = 0) for the pulsed capacitor.

    While the pulse is on, V falls linearly across the slab and is constant
    on either side (0 on the side the field points away from, -E*gap on the
    far side); outside the pulse window V vanishes everywhere.  The gauge
    is therefore discontinuous in time on the far side, but only at the
    switching instants, which the region labels expose.
    """
    n_hat = cfg.normal
    e_vec = cfg.e_mag * n_hat
    half = 0.5 * cfg.gap
    mx = cfg.hint_margin * cfg.gap
    mt = cfg.hint_margin * cfg.duration
    zero = np.zeros(3)

    def xi_of(pos: np.ndarray) -> float:
        return float((pos - cfg.center) @ n_hat)

    def on(t: float) -> bool:
        return cfg.t_start <= t <= cfg.t_end

    def field_fn(e: Event) -> FieldSample:
        if on(e.t) and abs(xi_of(e.pos)) < half:
            return FieldSample(e_vec, zero)
        return FieldSample(zero, zero)

    def potential_fn(e: Event) -> PotentialSample:
        if not on(e.t):
            return PotentialSample(0.0, zero)
        xi = xi_of(e.pos)
        if xi <= -half:
            return PotentialSample(0.0, zero)
        if xi >= half:
            return PotentialSample(-cfg.e_mag * cfg.gap, zero)
        return PotentialSample(-cfg.e_mag * (xi + half), zero)

    def region_hint(e: Event) -> str:
        xi = xi_of(e.pos)
        if xi < -half:
            zone = "side-a"
        elif xi > half:
            zone = "side-b"
        else:
            zone = "slab"
        if e.t < cfg.t_start:
            phase = "pre"
        elif e.t > cfg.t_end:
            phase = "post"
        else:
            phase = "on"
        # Both kinds of boundary can cut a curved chart mid-fiber, so both
        # get halos (on a lab-frame ruled surface the switch instants also
        # coincide with chart seams, and the time halo is merely redundant).
        near = (
            abs(xi - half) <= mx
            or abs(xi + half) <= mx
            or abs(e.t - cfg.t_start) <= mt
            or abs(e.t - cfg.t_end) <= mt
        )
        label = f"{zone}:{phase}"
        return NEAR_PREFIX + label if near else label

    return EmConfiguration(field_fn, potential_fn, region_hint)


# ---------------------------------------------------------------------------
# Lorentz transformation of samples and whole configurations


def boost_field(f: FieldSample, b: Boost) -> FieldSample:
    """Transform one field sample into the frame moving at ``b.v``.

    Components along the boost are unchanged; transverse ones mix:

        E'_perp = gamma (E + v x B)_perp
        B'_perp = gamma (B - v x E / c^2)_perp
    """
    s = b.speed
    if s == 0.0:
        return f
    g = b.gamma
    n = b.v / s
    e_par = (f.E @ n) * n
    b_par = (f.B @ n) * n
    e_new = e_par + g * (f.E - e_par + _cross(b.v, f.B))
    b_new = b_par + g * (f.B - b_par - _cross(b.v, f.E) / b.c**2)
    return FieldSample(e_new, b_new)


def boost_potential(p: PotentialSample, b: Boost) -> PotentialSample:
    """Transform a potential sample; (V/c, A) maps exactly like (ct, x)."""
    s = b.speed
    if s == 0.0:
        return p
    g = b.gamma
    vdota = float(b.v @ p.A)
    v_new = g * (p.V - vdota)
    a_new = p.A + ((g - 1.0) * vdota / s**2 - g * p.V / b.c**2) * b.v
    return PotentialSample(v_new, a_new)


def boosted_configuration(cfg: EmConfiguration, b: Boost) -> EmConfiguration:
    """The same physical configuration expressed in a boosted frame.

    Samples are taken at the inverse-boosted event and transformed;
    region labels ride along unchanged.
    """
    if b.speed == 0.0:
        return cfg
    inv = b.inverse()
    return EmConfiguration(
        lambda e: boost_field(cfg.field_fn(boost_event(e, inv)), b),
        lambda e: boost_potential(cfg.potential_fn(boost_event(e, inv)), b),
        lambda e: cfg.region_hint(boost_event(e, inv)),
    )


# ---------------------------------------------------------------------------
# synthetic polynomial gauges (verification fodder)


def polynomial_gauge_configuration(
    v_poly: Polynomial4D, a_polys: tuple[Polynomial4D, Polynomial4D, Polynomial4D]
) -> EmConfiguration:
    """Smooth configuration from polynomial potentials, fields taken exactly.

    E = -grad(V) - dA/dt and B = curl(A) are computed by exact polynomial
    differentiation, so the configuration is internally consistent to
    machine precision -- handy as ground truth for quadrature checks.
    """
    ax, ay, az = a_polys
    e_parts = [
        (v_poly.partial(1), ax.partial(0)),
        (v_poly.partial(2), ay.partial(0)),
        (v_poly.partial(3), az.partial(0)),
    ]
    b_parts = [
        (az.partial(2), ay.partial(3)),
        (ax.partial(3), az.partial(1)),
        (ay.partial(1), ax.partial(2)),
    ]

    def field_fn(e: Event) -> FieldSample:
        args = (e.t, e.pos[0], e.pos[1], e.pos[2])
        ef = np.array([-(dv(*args)) - da(*args) for dv, da in e_parts])
        bf = np.array([d1(*args) - d2(*args) for d1, d2 in b_parts])
        return FieldSample(ef, bf)

    def potential_fn(e: Event) -> PotentialSample:
        args = (e.t, e.pos[0], e.pos[1], e.pos[2])
        return PotentialSample(v_poly(*args), np.array([ax(*args), ay(*args), az(*args)]))

    return EmConfiguration(field_fn, potential_fn, lambda e: "smooth")
