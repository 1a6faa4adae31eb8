"""Sparse polynomials in (t, x, y, z) for synthetic gauge fields.

Kept deliberately tiny: evaluation, exact partial derivatives, and seeded
random draws are all the verification suites need.
"""

from __future__ import annotations

import numpy as np


class Polynomial4D:
    """A polynomial over (t, x, y, z) stored as {(i, j, k, l): coeff}."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: dict[tuple[int, int, int, int], float] | None = None):
        self.coeffs = {k: float(v) for k, v in (coeffs or {}).items() if v != 0.0}

    def __call__(self, t: float, x: float, y: float, z: float) -> float:
        total = 0.0
        for (i, j, k, l), c in self.coeffs.items():
            total += c * t**i * x**j * y**k * z**l
        return total

    def partial(self, axis: int) -> "Polynomial4D":
        """Exact derivative with respect to axis 0..3 = (t, x, y, z)."""
        out: dict[tuple[int, int, int, int], float] = {}
        for mono, c in self.coeffs.items():
            n = mono[axis]
            if n == 0:
                continue
            new = list(mono)
            new[axis] = n - 1
            key = tuple(new)
            out[key] = out.get(key, 0.0) + n * c
        return Polynomial4D(out)

    def scaled(self, factor: float) -> "Polynomial4D":
        return Polynomial4D({k: factor * v for k, v in self.coeffs.items()})

    @classmethod
    def random(
        cls,
        rng: np.random.Generator,
        degree: int = 3,
        scale: float = 1.0,
        axis_scales: tuple[float, float, float, float] = (1.0, 1.0, 1.0, 1.0),
    ) -> "Polynomial4D":
        """Random polynomial with all monomials up to total ``degree``.

        ``axis_scales`` divides each variable, so coordinates of widely
        different magnitude (say SI seconds vs metres) can be normalized.
        """
        coeffs: dict[tuple[int, int, int, int], float] = {}
        for i in range(degree + 1):
            for j in range(degree + 1 - i):
                for k in range(degree + 1 - i - j):
                    for l in range(degree + 1 - i - j - k):
                        c = scale * rng.uniform(-1.0, 1.0)
                        c /= (
                            axis_scales[0] ** i
                            * axis_scales[1] ** j
                            * axis_scales[2] ** k
                            * axis_scales[3] ** l
                        )
                        coeffs[(i, j, k, l)] = c
        return cls(coeffs)
