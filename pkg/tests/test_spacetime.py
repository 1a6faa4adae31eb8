import math

import numpy as np
import pytest

from abflux import (
    Boost,
    Event,
    GeometryError,
    NonMonotoneTime,
    Worldline,
    WorldlinePair,
    boost_event,
    boost_pair,
    boost_surface,
    boost_tangent,
    boost_worldline,
    bulged_ruled_surface,
    ruled_surface_equal_time,
    three_vec,
)
from abflux.constants import C_LIGHT
from abflux.spacetime import surface_jacobian


def boost_matrix(v, c):
    """Independent oracle: the textbook 4x4 boost matrix acting on (ct, x)."""
    v = np.asarray(v, dtype=float)
    beta = v / c
    b2 = float(beta @ beta)
    if b2 == 0.0:
        return np.eye(4)
    g = 1.0 / math.sqrt(1.0 - b2)
    m = np.eye(4)
    m[0, 0] = g
    m[0, 1:] = -g * beta
    m[1:, 0] = -g * beta
    m[1:, 1:] = np.eye(3) + (g - 1.0) * np.outer(beta, beta) / b2
    return m


def test_boost_event_matches_matrix_oracle():
    rng = np.random.default_rng(7)
    c = 1.0
    for _ in range(60):
        v = rng.uniform(-0.6, 0.6, 3)  # |v| < 0.9c guaranteed componentwise bound
        b = Boost(v, c)
        e = Event(float(rng.uniform(-2, 2)), rng.uniform(-2, 2, 3))
        out = boost_event(e, b)
        ct_x = boost_matrix(v, c) @ np.concatenate(([c * e.t], e.pos))
        assert abs(out.t - ct_x[0] / c) <= 1e-12 * max(1.0, abs(ct_x[0]))
        assert np.allclose(out.pos, ct_x[1:], rtol=1e-12, atol=1e-12)


def test_boost_event_known_numbers():
    # v = 0.6c along x, event one second after origin, two meters up the y axis
    b = Boost(three_vec(0.6 * C_LIGHT, 0.0, 0.0))
    e = boost_event(Event(1.0, three_vec(0.0, 2.0, 0.0)), b)
    assert abs(e.t - 1.25) < 1e-15
    assert abs(e.pos[0] - (-0.75 * C_LIGHT)) < 1e-6
    assert e.pos[1] == 2.0 and e.pos[2] == 0.0


def test_boost_roundtrip_and_interval():
    rng = np.random.default_rng(11)
    c = 1.0
    for _ in range(40):
        v = rng.uniform(-0.55, 0.55, 3)
        b = Boost(v, c)
        e = Event(float(rng.uniform(-1, 1)), rng.uniform(-1, 1, 3))
        out = boost_event(e, b)
        back = boost_event(out, b.inverse())
        assert abs(back.t - e.t) < 1e-12
        assert np.allclose(back.pos, e.pos, atol=1e-12)
        s_before = (c * e.t) ** 2 - float(e.pos @ e.pos)
        s_after = (c * out.t) ** 2 - float(out.pos @ out.pos)
        assert abs(s_before - s_after) < 1e-10


def test_boost_tangent_velocity_addition():
    c = 1.0
    u, v = 0.5, 0.3
    b = Boost(three_vec(v, 0.0, 0.0), c)
    tau = boost_tangent(np.array([1.0, u, 0.0, 0.0]), b)
    assert abs(tau[1] / tau[0] - (u - v) / (1.0 - u * v / c**2)) < 1e-14


def test_boost_rejects_superluminal():
    with pytest.raises(ValueError):
        Boost(three_vec(C_LIGHT, 0.0, 0.0))
    with pytest.raises(ValueError):
        Boost(three_vec(2.0, 0.0, 0.0), c=1.0)


def test_worldline_interpolation_and_velocity():
    w = Worldline(
        [
            Event(0.0, three_vec(0.0, 0.0, 0.0)),
            Event(1.0, three_vec(1.0, 0.0, 0.0)),
            Event(3.0, three_vec(1.0, 2.0, 0.0)),
        ]
    )
    assert np.allclose(w.position_at_time(0.5), [0.5, 0.0, 0.0])
    assert np.allclose(w.position_at_time(2.0), [1.0, 1.0, 0.0])
    # clamped outside the time span
    assert np.allclose(w.position_at_time(-5.0), [0.0, 0.0, 0.0])
    assert np.allclose(w.position_at_time(99.0), [1.0, 2.0, 0.0])
    # right-continuous velocity at the kink
    assert np.allclose(w.velocity_at_time(1.0), [0.0, 1.0, 0.0])
    assert abs(w.max_speed() - 1.0) < 1e-15
    assert w.duration == 3.0


def test_worldline_requires_increasing_time():
    with pytest.raises(NonMonotoneTime):
        Worldline([Event(0.0, three_vec()), Event(0.0, three_vec(1.0, 0.0, 0.0))])


def test_boost_worldline_rejects_superluminal_segment():
    w = Worldline([Event(0.0, three_vec()), Event(1.0, three_vec(2.0, 0.0, 0.0))])
    with pytest.raises(NonMonotoneTime):
        boost_worldline(w, Boost(three_vec(0.9, 0.0, 0.0), c=1.0))


def test_pair_requires_shared_endpoints():
    a = Worldline([Event(0.0, three_vec()), Event(1.0, three_vec(1.0, 0.0, 0.0))])
    b = Worldline([Event(0.0, three_vec()), Event(1.0, three_vec(0.0, 1.0, 0.0))])
    with pytest.raises(GeometryError):
        WorldlinePair(a=a, b=b)


def _sample_pair():
    a = Worldline(
        [
            Event(0.0, three_vec(0.0, 0.0, 0.0)),
            Event(1.0, three_vec(1.0, -1.0, 0.0)),
            Event(2.0, three_vec(2.0, 0.0, 0.0)),
        ]
    )
    b = Worldline(
        [
            Event(0.0, three_vec(0.0, 0.0, 0.0)),
            Event(0.5, three_vec(0.5, 1.0, 0.0)),
            Event(2.0, three_vec(2.0, 0.0, 0.0)),
        ]
    )
    return WorldlinePair(a=a, b=b)


def test_ruled_surface_edges_lie_on_worldlines():
    pair = _sample_pair()
    srf = ruled_surface_equal_time(pair)
    for u in np.linspace(0.0, 1.0, 9):
        t = pair.a.t0 + u * pair.a.duration
        e0 = srf.chart(float(u), 0.0)
        e1 = srf.chart(float(u), 1.0)
        assert abs(e0.t - t) < 1e-14 and abs(e1.t - t) < 1e-14
        assert np.allclose(e0.pos, pair.a.position_at_time(t), atol=1e-14)
        assert np.allclose(e1.pos, pair.b.position_at_time(t), atol=1e-14)
    assert srf.degenerate_seams
    # kinks of either worldline show up as u breakpoints
    assert any(abs(u - 0.25) < 1e-12 for u in srf.u_breaks)
    assert any(abs(u - 0.5) < 1e-12 for u in srf.u_breaks)


def test_ruled_surface_jacobian_consistent_with_fd():
    pair = _sample_pair()
    srf = ruled_surface_equal_time(pair)
    smooth = SpacetimeSurfaceNoJac(srf)
    for u, s in [(0.1, 0.3), (0.35, 0.8), (0.6, 0.5), (0.9, 0.1)]:
        du_a, ds_a = surface_jacobian(srf, u, s)
        du_f, ds_f = surface_jacobian(smooth, u, s)
        assert np.allclose(du_a, du_f, atol=5e-6)
        assert np.allclose(ds_a, ds_f, atol=5e-6)


class SpacetimeSurfaceNoJac:
    """Wrapper hiding the analytic jacobian so surface_jacobian falls back to FD."""

    def __init__(self, srf):
        self.chart = srf.chart
        self.jacobian = None
        self.u_breaks = srf.u_breaks
        self.s_breaks = srf.s_breaks
        self.degenerate_seams = srf.degenerate_seams


def test_bulged_surface_pins_the_boundary():
    pair = _sample_pair()
    ruled = ruled_surface_equal_time(pair)
    bulged = bulged_ruled_surface(pair, amp_pos=three_vec(0.0, 0.0, 0.3), amp_t=0.05)
    interior_moved = False
    for u in np.linspace(0.0, 1.0, 7):
        for s in (0.0, 1.0):
            e_r, e_b = ruled.chart(float(u), s), bulged.chart(float(u), s)
            assert abs(e_r.t - e_b.t) < 1e-14
            assert np.allclose(e_r.pos, e_b.pos, atol=1e-14)
    e_r, e_b = ruled.chart(0.5, 0.5), bulged.chart(0.5, 0.5)
    interior_moved = abs(e_b.pos[2] - e_r.pos[2]) > 0.2
    assert interior_moved
    du_a, ds_a = surface_jacobian(bulged, 0.4, 0.6)
    du_f, ds_f = surface_jacobian(SpacetimeSurfaceNoJac(bulged), 0.4, 0.6)
    assert np.allclose(du_a, du_f, atol=5e-6)
    assert np.allclose(ds_a, ds_f, atol=5e-6)


def test_boost_surface_commutes_with_chart():
    pair = _sample_pair()
    srf = ruled_surface_equal_time(pair)
    b = Boost(three_vec(0.4, 0.1, 0.0), c=1e9)  # keep pair speeds < c
    moved = boost_surface(srf, b)
    for u, s in [(0.2, 0.4), (0.7, 0.9)]:
        direct = boost_event(srf.chart(u, s), b)
        via = moved.chart(u, s)
        assert abs(direct.t - via.t) < 1e-12
        assert np.allclose(direct.pos, via.pos, atol=1e-9)


def test_boost_pair_keeps_endpoints_shared():
    pair = _sample_pair()
    moved = boost_pair(pair, Boost(three_vec(0.3, 0.0, 0.0), c=10.0))
    assert moved.a.vertices[0].t == moved.b.vertices[0].t
    assert np.allclose(moved.a.vertices[-1].pos, moved.b.vertices[-1].pos)


def test_sliced_surface_chords_are_simultaneous_in_the_moving_frame():
    pair = _sample_pair()
    b = Boost(three_vec(0.5, 0.0, 0.0), c=1e9)
    srf = ruled_surface_equal_time(pair, slicing=b)
    taus = []
    for u in (0.0, 0.15, 0.5, 0.85, 1.0):
        t_along_chord = [boost_event(srf.chart(u, s), b).t for s in (0.0, 0.3, 0.7, 1.0)]
        assert max(t_along_chord) - min(t_along_chord) < 1e-12
        taus.append(t_along_chord[0])
    # The u parameter runs affinely in the moving observer's time.
    spans = np.diff(taus) / (taus[-1] - taus[0])
    assert np.allclose(spans, np.diff([0.0, 0.15, 0.5, 0.85, 1.0]), atol=1e-12)


def test_sliced_surface_edges_stay_on_the_worldlines():
    pair = _sample_pair()
    b = Boost(three_vec(0.3, 0.2, 0.0), c=1e9)
    srf = ruled_surface_equal_time(pair, slicing=b)
    for u in (0.0, 0.2, 0.55, 1.0):
        ea = srf.chart(u, 0.0)
        eb = srf.chart(u, 1.0)
        assert np.allclose(ea.pos, pair.a.position_at_time(ea.t), atol=1e-12)
        assert np.allclose(eb.pos, pair.b.position_at_time(eb.t), atol=1e-12)
    assert srf.degenerate_seams
    # Vertices of both worldlines land on grid lines of the chart.
    g = b.gamma
    c2 = b.c * b.c
    tau_of = lambda e: g * (e.t - float(b.v @ e.pos) / c2)
    tau0 = tau_of(pair.a.vertices[0])
    tau1 = tau_of(pair.a.vertices[-1])
    for w in (pair.a, pair.b):
        for v in w.vertices:
            frac = (tau_of(v) - tau0) / (tau1 - tau0)
            assert min(abs(frac - x) for x in srf.u_breaks) < 1e-12


def test_sliced_surface_jacobian_consistent_with_fd():
    pair = _sample_pair()
    b = Boost(three_vec(0.45, -0.1, 0.0), c=1e9)
    srf = ruled_surface_equal_time(pair, slicing=b)
    blind = SpacetimeSurfaceNoJac(srf)
    for u, s in [(0.1, 0.3), (0.4, 0.8), (0.62, 0.05), (0.9, 0.5)]:
        du_a, ds_a = surface_jacobian(srf, u, s)
        du_f, ds_f = surface_jacobian(blind, u, s)
        assert np.allclose(du_a, du_f, atol=5e-6)
        assert np.allclose(ds_a, ds_f, atol=5e-6)


def test_sliced_surface_with_zero_speed_matches_the_plain_one():
    pair = _sample_pair()
    rest = Boost(three_vec(0.0, 0.0, 0.0), c=1e9)
    plain = ruled_surface_equal_time(pair)
    sliced = ruled_surface_equal_time(pair, slicing=rest)
    for u, s in [(0.0, 0.0), (0.3, 0.6), (0.75, 0.25), (1.0, 1.0)]:
        ep, es = plain.chart(u, s), sliced.chart(u, s)
        assert abs(ep.t - es.t) < 1e-12
        assert np.allclose(ep.pos, es.pos, atol=1e-12)
    assert plain.u_breaks == sliced.u_breaks


def test_bulged_surface_honours_the_slicing_boundary():
    pair = _sample_pair()
    b = Boost(three_vec(0.35, 0.0, 0.0), c=1e9)
    flat = ruled_surface_equal_time(pair, slicing=b)
    bulged = bulged_ruled_surface(
        pair, amp_pos=three_vec(0.0, 0.0, 0.2), amp_t=0.05, slicing=b
    )
    for u in (0.0, 0.3, 0.7, 1.0):
        for s in (0.0, 1.0):
            ef, eb_ = flat.chart(u, s), bulged.chart(u, s)
            assert abs(ef.t - eb_.t) < 1e-12
            assert np.allclose(ef.pos, eb_.pos, atol=1e-12)
    mid_f = flat.chart(0.5, 0.5)
    mid_b = bulged.chart(0.5, 0.5)
    assert abs(mid_b.pos[2] - mid_f.pos[2]) > 0.1
