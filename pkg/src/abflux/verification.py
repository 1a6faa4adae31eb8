"""Randomized property suites behind the ``verify`` CLI command.

Each suite returns a list of :class:`CaseResult`; a case passes when its
residual is at or below its tolerance.  All randomness flows from a
single seeded generator, so a (seed, count) pair pins the whole suite.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .em import polynomial_gauge_configuration
from .holonomy import (
    Box3D,
    SurfacePatch3D,
    flux_phase,
    gauge_shift,
    potential_phase,
    stokes_check,
    stokes_check_3d,
)
from .polynomial import Polynomial4D
from .quadrature import QuadratureSpec
from .scenarios import (
    CapacitorScenario,
    SolenoidScenario,
    build_capacitor_scenario,
    build_solenoid_scenario,
)
from .spacetime import (
    Boost,
    Event,
    Worldline,
    WorldlinePair,
    bulged_ruled_surface,
    ruled_surface_equal_time,
    three_vec,
)


@dataclass(frozen=True)
class CaseResult:
    """One verification case: a named residual against its tolerance."""

    name: str
    residual: float
    tol: float
    passed: bool


def _case(name: str, residual: float, tol: float) -> CaseResult:
    residual = float(residual)
    return CaseResult(name, residual, tol, residual <= tol)


def random_worldline_pair(rng: np.random.Generator, interior: int = 2, span: float = 1.0) -> WorldlinePair:
    """Two jittered piecewise-linear paths sharing random endpoints.

    Times live in [0, 1] with guaranteed monotone gaps; positions are
    uniform in [-span, span]^3.  Speeds are unconstrained -- fine for
    gauge geometry, not for boosting.
    """
    p0 = rng.uniform(-span, span, 3)
    p1 = rng.uniform(-span, span, 3)

    def path() -> Worldline:
        ticks = np.arange(1, interior + 1) + rng.uniform(-0.3, 0.3, interior)
        times = np.concatenate(([0.0], ticks / (interior + 1), [1.0]))
        pts = [p0] + [rng.uniform(-span, span, 3) for _ in range(interior)] + [p1]
        return Worldline([Event(float(t), p) for t, p in zip(times, pts)])

    return WorldlinePair(a=path(), b=path())


# ---------------------------------------------------------------------------
# suites


def suite_stokes(seed: int = 0, count: int = 50) -> list[CaseResult]:
    """Boundary-vs-flux agreement for random polynomial gauges.

    Random cubic potentials on random worldline pairs, alternating plain
    ruled surfaces with bulged ones; each report's relative mismatch must
    stay at or below 1e-8.
    """
    rng = np.random.default_rng(seed)
    spec = QuadratureSpec(base_order=4, initial_panels=(8, 8), tol=1e-11, max_depth=14)
    out = []
    for i in range(count):
        pair = random_worldline_pair(rng, interior=2)
        v_poly = Polynomial4D.random(rng, degree=3, scale=0.7)
        a_polys = tuple(Polynomial4D.random(rng, degree=3, scale=0.7) for _ in range(3))
        cfg = polynomial_gauge_configuration(v_poly, a_polys)
        if i % 2 == 0:
            srf = ruled_surface_equal_time(pair)
            shape = "ruled"
        else:
            srf = bulged_ruled_surface(
                pair,
                amp_pos=rng.uniform(-0.2, 0.2, 3),
                amp_t=float(rng.uniform(-0.05, 0.05)),
                modes=(1 + i % 3, 1 + i % 2),
            )
            shape = "bulged"
        rep = stokes_check(srf, cfg, spec)
        out.append(_case(f"stokes[{i:02d}] {shape} polynomial gauge", rep.rel_err, 1e-8))
    return out


def suite_gauge(seed: int = 0, count: int = 20) -> list[CaseResult]:
    """Invariance of the potential-route phase under re-gauging.

    The capacitor scenario (q/hbar = 1) is re-gauged by chi = x*t and by
    ``count`` random cubic generators; the loop phase may move by at most
    1e-9 rad.
    """
    rng = np.random.default_rng(seed)
    s = CapacitorScenario(q=1.0, hbar=1.0)
    pair, cfg = build_capacitor_scenario(s)
    base = potential_phase(pair, cfg, q=s.q, hbar=s.hbar)

    def shifted(chi) -> float:
        cfg2 = gauge_shift(cfg, chi, h_time=1e-3, h_space=1e-3)
        return potential_phase(pair, cfg2, q=s.q, hbar=s.hbar)

    xt = Polynomial4D({(1, 1, 0, 0): 1.0})
    out = [_case("gauge chi = x*t", abs(shifted(lambda e: xt(e.t, *e.pos)) - base), 1e-9)]
    for i in range(count):
        poly = Polynomial4D.random(rng, degree=3, scale=0.3)
        out.append(
            _case(
                f"gauge[{i:02d}] random cubic chi",
                abs(shifted(lambda e: poly(e.t, *e.pos)) - base),
                1e-9,
            )
        )
    return out


def suite_frames(speeds: tuple[float, ...] = (0.0, 0.3, 0.6, 0.9)) -> list[CaseResult]:
    """Total-phase invariance across boosts, plus route equivalence at rest.

    Both built-in scenarios (q/hbar = 1) are boosted along x at the given
    fractions of c; each flux total must match the rest-frame closed form
    to 1e-6 relative, and at rest the potential route must agree with the
    flux route to the same tolerance.
    """
    out = []
    for label, (pair, cfg, phi, c) in _reference_scenarios().items():
        pot = potential_phase(pair, cfg, q=1.0, hbar=1.0)
        out.append(_case(f"{label} route equivalence (rest)", abs(pot - phi) / abs(phi), 1e-6))
        for f in speeds:
            b = None if f == 0.0 else Boost(three_vec(f * c, 0.0, 0.0), c)
            dec = flux_phase(
                ruled_surface_equal_time(pair, b), cfg, q=1.0, hbar=1.0, frame=b
            )
            out.append(
                _case(f"{label} total invariance v/c={f:.1f}", abs(dec.total - phi) / abs(phi), 1e-6)
            )
    return out


def _reference_scenarios():
    sol = SolenoidScenario(q=1.0, hbar=1.0)
    cap = CapacitorScenario(q=1.0, hbar=1.0)
    sol_pair, sol_cfg = build_solenoid_scenario(sol)
    cap_pair, cap_cfg = build_capacitor_scenario(cap)
    return {
        "solenoid": (sol_pair, sol_cfg, sol.q / sol.hbar * sol.enclosed_flux, sol.c),
        "capacitor": (
            cap_pair,
            cap_cfg,
            -cap.q / cap.hbar * cap.e_mag * cap.chord_length * cap.pulse_duration
            * float(np.cos(2.0 * cap.theta)),
            cap.c,
        ),
    }


def suite_vector3d(seed: int = 0, count: int = 20) -> list[CaseResult]:
    """Classic 3-D boundary/derivative identities on random cubic fields.

    ``count`` divergence checks on random boxes and ``count`` curl checks
    on random curved quadratic patches, each to 1e-9 relative.
    """
    rng = np.random.default_rng(seed)
    out = []
    for i in range(count):
        field = _random_static_field(rng)
        box = Box3D(lo=rng.uniform(-1.5, -0.4, 3), hi=rng.uniform(0.4, 1.5, 3))
        rep = stokes_check_3d("divergence", field, box)
        out.append(_case(f"divergence[{i:02d}] box, cubic field", rep.rel_err, 1e-9))
    for i in range(count):
        field = _random_static_field(rng)
        patch = _random_quadratic_patch(rng)
        rep = stokes_check_3d("curl", field, patch)
        out.append(_case(f"curl[{i:02d}] quadratic patch, cubic field", rep.rel_err, 1e-9))
    return out


def _random_static_field(rng: np.random.Generator):
    comps = [Polynomial4D.random(rng, degree=3, scale=0.8) for _ in range(3)]

    def field(p: np.ndarray) -> np.ndarray:
        x, y, z = p
        return np.array([c(0.0, x, y, z) for c in comps])

    return field


def _random_quadratic_patch(rng: np.random.Generator) -> SurfacePatch3D:
    p0 = rng.uniform(-0.5, 0.5, 3)
    e1, e2 = rng.uniform(-1.0, 1.0, 3), rng.uniform(-1.0, 1.0, 3)
    q1, q2, q12 = (rng.uniform(-0.3, 0.3, 3) for _ in range(3))

    def chart(u: float, v: float) -> np.ndarray:
        return p0 + u * e1 + v * e2 + u * u * q1 + v * v * q2 + u * v * q12

    def jacobian(u: float, v: float):
        return e1 + 2.0 * u * q1 + v * q12, e2 + 2.0 * v * q2 + u * q12

    return SurfacePatch3D(chart=chart, jacobian=jacobian)


SUITES = {
    "stokes": (suite_stokes, 50),
    "gauge": (suite_gauge, 20),
    "frames": (None, 0),  # takes no count; see run_suite
    "vector3d": (suite_vector3d, 20),
}


def run_suite(name: str, seed: int = 0, count: int | None = None) -> list[CaseResult]:
    """Dispatch a named suite; ``count`` falls back to the suite default."""
    if name == "frames":
        return suite_frames()
    try:
        fn, default = SUITES[name]
    except KeyError:
        raise ValueError(f"unknown suite {name!r}; pick from {sorted(SUITES)}") from None
    return fn(seed, count if count is not None else default)
