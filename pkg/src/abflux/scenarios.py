"""Built-in interferometer scenarios and their closed-form reference values.

Two devices, both with the charge split over a pair of field-free paths:

* a square loop in the x-y plane around an ideal solenoid along z, each
  packet covering one half of the square at constant speed, and
* a pair of stations parked on either side of a tilted pulsed capacitor
  slab, joined by straight legs traversed while the field is off.

The solenoid split/recombine points sit at the mid-left and mid-right of
the square so that, in the frame co-moving with the x-direction legs,
both packets are parked simultaneously -- which is exactly the frame
where the magnetic contribution to the phase vanishes.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .constants import C_LIGHT, E_CHARGE, HBAR
from .em import (
    CapacitorConfig,
    EmConfiguration,
    SolenoidConfig,
    capacitor_configuration,
    solenoid_configuration,
)
from .spacetime import (
    Boost,
    Event,
    GeometryError,
    Worldline,
    WorldlinePair,
    three_vec,
)


class DomainError(ValueError):
    """A scenario parameter leaves the requested construction undefined."""


@dataclass(frozen=True)
class ReferenceValues:
    """Closed-form expectations for a scenario at one boost.

    Parts refer to the equal-time ruled surface built in the boosted
    frame; entries are None where no closed form applies.
    """

    phi_rest: float
    phi_boosted: float
    phi_magnetic_boosted: float | None = None
    phi_electric_boosted: float | None = None
    e_prime: float | None = None
    b_prime: float | None = None
    crossing_duration: float | None = None
    v_null_electric: float | None = None


# ---------------------------------------------------------------------------
# solenoid in a square loop


@dataclass(frozen=True)
class SolenoidScenario:
    """Square two-path loop around an (optionally offset) ideal solenoid.

    The square has half-side ``square_half_side``, sides parallel to x/y,
    centred at the origin of the x-y plane; packets split at (-L, 0),
    travel the bottom (path a) and top (path b) halves at constant speed
    ``packet_speed``, and recombine at (+L, 0).  Path a runs
    counterclockwise, making the rest-frame phase +q B0 pi r^2 / hbar
    when the solenoid is enclosed.
    """

    b0: float = 1.0
    radius: float = 0.1
    square_half_side: float = 0.5
    packet_speed: float = 0.5 * C_LIGHT
    axis_center: np.ndarray = field(default_factory=three_vec)
    q: float = E_CHARGE
    hbar: float = HBAR
    c: float = C_LIGHT

    def __post_init__(self):
        object.__setattr__(self, "axis_center", np.asarray(self.axis_center, dtype=float))
        if not 0.0 < self.packet_speed < self.c:
            raise DomainError("packet speed must lie strictly between 0 and c")
        if self.radius <= 0.0 or self.square_half_side <= 0.0:
            raise GeometryError("radius and square half-side must be positive")
        if self._axis_path_distance() <= self.radius:
            raise GeometryError(
                "solenoid wall reaches the interferometer paths; "
                "shrink the solenoid or move it clear of the square"
            )

    def _axis_path_distance(self) -> float:
        """Distance from the solenoid axis to the square's perimeter."""
        ax, ay = abs(self.axis_center[0]), abs(self.axis_center[1])
        half = self.square_half_side
        if max(ax, ay) <= half:
            return half - max(ax, ay)
        dx, dy = max(ax - half, 0.0), max(ay - half, 0.0)
        return math.hypot(dx, dy)

    @property
    def encloses_solenoid(self) -> bool:
        return max(abs(self.axis_center[0]), abs(self.axis_center[1])) < self.square_half_side

    @property
    def split_point(self) -> np.ndarray:
        return three_vec(-self.square_half_side, 0.0, 0.0)

    @property
    def recombine_point(self) -> np.ndarray:
        return three_vec(self.square_half_side, 0.0, 0.0)

    @property
    def solenoid(self) -> SolenoidConfig:
        return SolenoidConfig(
            b0=self.b0,
            radius=self.radius,
            axis_point=self.axis_center,
            axis_dir=three_vec(0.0, 0.0, 1.0),
        )

    @property
    def enclosed_flux(self) -> float:
        return self.b0 * math.pi * self.radius**2 if self.encloses_solenoid else 0.0


def build_solenoid_scenario(s: SolenoidScenario) -> tuple[WorldlinePair, EmConfiguration]:
    """Worldline pair and field configuration for the square solenoid loop.

    Each path is three straight legs (down/up, across, up/down) traversed
    at the scenario's packet speed; the x-direction legs of the two paths
    are simultaneous, which is what the co-moving special frame exploits.
    """
    half, u = s.square_half_side, s.packet_speed
    tq = half / u  # quarter of the traversal
    times = (0.0, tq, 3.0 * tq, 4.0 * tq)

    def path(sign: float) -> Worldline:
        pts = (
            three_vec(-half, 0.0, 0.0),
            three_vec(-half, sign * half, 0.0),
            three_vec(half, sign * half, 0.0),
            three_vec(half, 0.0, 0.0),
        )
        return Worldline([Event(t, p) for t, p in zip(times, pts)])

    pair = WorldlinePair(a=path(-1.0), b=path(+1.0))
    return pair, solenoid_configuration(s.solenoid)


def solenoid_special_frame(s: SolenoidScenario) -> Boost:
    """The frame co-moving with the x-direction legs (v = packet speed x^)."""
    return Boost(three_vec(s.packet_speed, 0.0, 0.0), s.c)


def solenoid_references(s: SolenoidScenario, b: Boost | None = None) -> ReferenceValues:
    """Closed-form phase values for the solenoid loop under boost ``b``.

    ``b=None`` means the lab frame.  The magnetic/electric split on the
    boosted equal-time ruled surface has a closed form only at v = 0 (all
    magnetic) and in the special co-moving frame (all electric); elsewhere
    the parts are left None.
    """
    k = s.q / s.hbar
    phi = k * s.enclosed_flux
    v = 0.0 if b is None else b.speed
    g = 1.0 if b is None else b.gamma
    mag = ele = None
    if v == 0.0:
        mag, ele = phi, 0.0
    elif math.isclose(v, s.packet_speed, rel_tol=1e-12):
        mag, ele = 0.0, phi
    return ReferenceValues(
        phi_rest=phi,
        phi_boosted=phi,
        phi_magnetic_boosted=mag,
        phi_electric_boosted=ele,
        e_prime=-g * v * s.b0,
        b_prime=g * s.b0,
        crossing_duration=(2.0 * s.radius / (v * g)) if v > 0.0 else None,
    )


# ---------------------------------------------------------------------------
# pulsed tilted capacitor


@dataclass(frozen=True)
class CapacitorScenario:
    """Two stations bracketing a tilted capacitor slab pulsed once.

    The slab normal lies in the x-z plane at angle ``theta`` from x^; the
    station chord is tilted by ``-theta``, so the in-slab chord length L
    and the gap obey gap = L cos(2 theta).  Stations hold still from
    before the pulse until after it; the connecting legs (which do cross
    the slab region) are traversed strictly outside the pulse window,
    where all fields and potentials vanish.
    """

    e_mag: float = 1.0
    chord_length: float = 1.0
    theta: float = math.pi / 6.0
    pulse_start: float = 1.0
    pulse_duration: float = 1.0
    station_pad: float = 0.2
    center: np.ndarray = field(default_factory=three_vec)
    q: float = E_CHARGE
    hbar: float = HBAR
    c: float = C_LIGHT

    def __post_init__(self):
        object.__setattr__(self, "center", np.asarray(self.center, dtype=float))
        if self.pulse_start <= 0.0:
            raise DomainError("pulse_start must be positive (legs precede the pulse)")
        if self.station_pad <= 0.0:
            raise GeometryError("stations must sit strictly outside the slab")
        _ = self.capacitor  # validates theta, durations, gap consistency

    @property
    def capacitor(self) -> CapacitorConfig:
        return CapacitorConfig(
            e_mag=self.e_mag,
            theta=self.theta,
            chord_length=self.chord_length,
            t_start=self.pulse_start,
            duration=self.pulse_duration,
            center=self.center,
        )

    @property
    def station_a(self) -> np.ndarray:
        """Station on the reference (V = 0) side of the slab."""
        half_span = 0.5 * self.chord_length * (1.0 + self.station_pad)
        return self.center - half_span * self.capacitor.chord_dir

    @property
    def station_b(self) -> np.ndarray:
        """Station on the far side, which sees the pulsed potential."""
        half_span = 0.5 * self.chord_length * (1.0 + self.station_pad)
        return self.center + half_span * self.capacitor.chord_dir


def build_capacitor_scenario(s: CapacitorScenario) -> tuple[WorldlinePair, EmConfiguration]:
    """Worldline pair and field configuration for the capacitor pulse.

    Path b crosses to its station before the pulse begins; path a holds at
    the shared start and crosses after the pulse ends.  Both paths carry
    explicit vertices at the switching instants so quadrature panels line
    up with the potential's jumps.
    """
    t_on, t_off = s.pulse_start, s.pulse_start + s.pulse_duration
    xa, xb = s.station_a, s.station_b
    hop = float(np.linalg.norm(xb - xa))

    leg = 0.5 * s.pulse_start
    if hop / leg >= 0.8 * s.c:
        leg = hop / (0.8 * s.c) * 1.25
    if leg >= 0.95 * s.pulse_start:
        raise GeometryError(
            "pulse starts too soon for a subluminal crossing; delay the pulse"
        )
    t_end = t_off + s.pulse_start

    a = Worldline(
        [
            Event(0.0, xa),
            Event(t_on, xa),
            Event(t_off, xa),
            Event(t_end - leg, xa),
            Event(t_end, xb),
        ]
    )
    b = Worldline(
        [
            Event(0.0, xa),
            Event(leg, xb),
            Event(t_on, xb),
            Event(t_off, xb),
            Event(t_end, xb),
        ]
    )
    return WorldlinePair(a=a, b=b), capacitor_configuration(s.capacitor)


def capacitor_null_electric_boost(s: CapacitorScenario) -> Boost:
    """The boost along x^ in which the electric phase contribution vanishes.

    Requires gamma = cot(theta), i.e. v = c sqrt(1 - tan(theta)^2), which
    only defines a boost for 0 < theta < pi/4.
    """
    th = s.theta
    if not 0.0 < th < math.pi / 4.0:
        raise DomainError(
            "a null-electric frame needs 0 < theta < pi/4 "
            f"(got theta = {th!r})"
        )
    v = s.c * math.sqrt(1.0 - math.tan(th) ** 2)
    return Boost(three_vec(v, 0.0, 0.0), s.c)


def capacitor_references(s: CapacitorScenario, b: Boost | None = None) -> ReferenceValues:
    """Closed-form phase values for the capacitor pulse under boost ``b``.

    ``b=None`` means the lab frame.  On the boosted equal-time ruled
    surface the chord translates rigidly, so the split has a closed form
    at every speed: the magnetic part is -(q/hbar) E L T (gamma^2 - 1)
    sin^2(theta) and the electric part is the remainder of the invariant
    total.
    """
    k = s.q / s.hbar
    elt = s.e_mag * s.chord_length * s.pulse_duration
    cos2 = math.cos(2.0 * s.theta)
    sin_th = math.sin(s.theta)
    phi = -k * elt * cos2
    g = 1.0 if b is None else b.gamma
    v = 0.0 if b is None else b.speed
    mag = -k * elt * (g**2 - 1.0) * sin_th**2
    tan2 = math.tan(s.theta) ** 2
    return ReferenceValues(
        phi_rest=phi,
        phi_boosted=phi,
        phi_magnetic_boosted=mag,
        phi_electric_boosted=phi - mag,
        e_prime=s.e_mag * math.sqrt(math.cos(s.theta) ** 2 + (g * sin_th) ** 2),
        b_prime=g * v * s.e_mag * sin_th / s.c**2,
        v_null_electric=s.c * math.sqrt(1.0 - tan2) if tan2 < 1.0 else None,
    )
