"""The helix, its first-order equiform motion, and the swept chart X(t, phi)."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Sequence, Tuple

import numpy as np

from .params import N_DIM, MotionParams, omega_matrix
from .trigpoly import TPoly, TrigPoly, cos, phi, sin

__all__ = [
    "MotionParams",
    "SurfaceChart",
    "helix_point",
    "helix_components",
    "omega_matrix",
    "build_chart",
    "tangent_fields",
    "velocity_matrix",
]


def helix_point(lam: float, phi_value: float) -> np.ndarray:
    """Point of the unit-radius helix (cos phi, sin phi, lam phi, 0, 0, 0, 0)."""
    return np.array([math.cos(phi_value), math.sin(phi_value), float(lam) * phi_value, 0, 0, 0, 0], dtype=float)


def helix_components(lam) -> List[TrigPoly]:
    return [cos(1), sin(1), phi(1, lam)] + [TrigPoly.zero()] * 4


def velocity_matrix(params: MotionParams) -> List[List[Fraction]]:
    """s' I + Omega."""
    m = omega_matrix(params)
    for k in range(N_DIM):
        m[k][k] = params.s_prime
    return m


@dataclass(frozen=True)
class SurfaceChart:
    """Exact components X_1..X_7 of the chart, each a TPoly in (t, phi)."""

    components: Tuple[TPoly, ...]
    params: MotionParams

    def __post_init__(self):
        if len(self.components) != N_DIM:
            raise ValueError(f"chart needs {N_DIM} components")

    def point(self, t: float, phi_value: float) -> np.ndarray:
        return np.array([c.eval(t, phi_value) for c in self.components])

    def reparametrize_t(self, c) -> "SurfaceChart":
        """Chart of X(c t, phi)."""
        c = Fraction(c)
        comps = tuple(TPoly([coef.scale(c**k) for k, coef in enumerate(x.coeffs)]) for x in self.components)
        return SurfaceChart(comps, self.params)


def build_chart(params: MotionParams) -> SurfaceChart:
    """X(t, phi) = [I + t (s' I + Omega)] x(phi) + t d'."""
    x = helix_components(params.lam)
    v = velocity_matrix(params)
    comps = []
    for r in range(N_DIM):
        rate = TrigPoly.const(params.b_prime[r])
        for c in range(3):
            if v[r][c]:
                rate = rate + x[c].scale(v[r][c])
        comps.append(TPoly((x[r], rate)))
    return SurfaceChart(tuple(comps), params)


def tangent_fields(chart: SurfaceChart) -> Tuple[Tuple[TPoly, ...], Tuple[TPoly, ...]]:
    """(X_t, X_phi) by exact differentiation of the chart."""
    xt = tuple(c.diff_t() for c in chart.components)
    xp = tuple(c.diff_phi() for c in chart.components)
    return xt, xp


def chart_point_direct(params: MotionParams, t: float, phi_value: float) -> np.ndarray:
    """Floating-point X(t, phi) by plain matrix arithmetic (no symbolic kernel)."""
    v = np.array(velocity_matrix(params), dtype=float)
    b = np.array([float(x) for x in params.b_prime])
    return (np.eye(N_DIM) + t * v) @ helix_point(params.lam, phi_value) + t * b
