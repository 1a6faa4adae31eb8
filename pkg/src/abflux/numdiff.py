"""Finite-difference derivatives of event functions.

Fourth-order central stencils throughout: exact for cubics, so polynomial
test gauges differentiate to machine precision, and the truncation error
for generic smooth inputs scales as h^4.
"""

from __future__ import annotations

from typing import Callable

import numpy as np

from .em import EmConfiguration, FieldSample
from .spacetime import Event

# f'(x) ~ [f(x-2h) - 8 f(x-h) + 8 f(x+h) - f(x+2h)] / (12 h)
_OFFSETS = (-2.0, -1.0, 1.0, 2.0)
_WEIGHTS = (1.0 / 12.0, -8.0 / 12.0, 8.0 / 12.0, -1.0 / 12.0)


def _shifted(e: Event, axis: int, d: float) -> Event:
    if axis == 0:
        return Event(e.t + d, e.pos)
    pos = e.pos.copy()
    pos[axis - 1] += d
    return Event(e.t, pos)


def partial_at(fn: Callable[[Event], float], e: Event, axis: int, h: float) -> float:
    """d(fn)/d(axis) at event ``e``; axis 0..3 = (t, x, y, z)."""
    acc = 0.0
    for o, w in zip(_OFFSETS, _WEIGHTS):
        acc += w * fn(_shifted(e, axis, o * h))
    return acc / h


def gradient(fn: Callable[[Event], float], e: Event, h: float) -> np.ndarray:
    """Spatial gradient of a scalar event function."""
    return np.array([partial_at(fn, e, axis, h) for axis in (1, 2, 3)])


def time_derivative(fn: Callable[[Event], float], e: Event, h: float) -> float:
    return partial_at(fn, e, 0, h)


def curl(vec_fn: Callable[[Event], np.ndarray], e: Event, h: float) -> np.ndarray:
    """Spatial curl of a vector event function."""
    def comp(i: int) -> Callable[[Event], float]:
        return lambda ev: float(vec_fn(ev)[i])

    dzy = partial_at(comp(2), e, 2, h)
    dyz = partial_at(comp(1), e, 3, h)
    dxz = partial_at(comp(0), e, 3, h)
    dzx = partial_at(comp(2), e, 1, h)
    dyx = partial_at(comp(1), e, 1, h)
    dxy = partial_at(comp(0), e, 2, h)
    return np.array([dzy - dyz, dxz - dzx, dyx - dxy])


def fields_from_potentials(
    cfg: EmConfiguration, e: Event, h_time: float, h_space: float
) -> FieldSample:
    """Differentiate a configuration's gauge numerically.

    Returns E = -grad(V) - dA/dt and B = curl(A) from ``potential_fn``
    alone; comparing against ``field_fn`` checks gauge/field consistency.
    Steps must be small enough that the stencil stays inside one smooth
    region of the configuration.
    """
    v_of = lambda ev: cfg.potential_fn(ev).V
    a_of = lambda ev: cfg.potential_fn(ev).A

    da_dt = np.array(
        [partial_at(lambda ev, i=i: float(a_of(ev)[i]), e, 0, h_time) for i in range(3)]
    )
    e_field = -gradient(v_of, e, h_space) - da_dt
    b_field = curl(a_of, e, h_space)
    return FieldSample(e_field, b_field)
