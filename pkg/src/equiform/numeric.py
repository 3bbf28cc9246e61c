"""Floating-point oracle for the metric and scalar curvature.

Everything here is computed from point evaluations of the chart by central
differences; nothing touches the exact kernel (only :mod:`equiform.params`
is shared, for the parameter layout).  Agreement with the symbolic pipeline
is therefore evidence rather than a tautology.

Three levels of differencing are nested: chart -> tangents (``step``),
metric -> first derivatives and Christoffels -> their derivatives
(``outer_step``).  The outer level needs a larger step because rounding
noise in the metric is amplified by ``1 / outer_step**2``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .params import N_DIM, MotionParams, omega_matrix

MetricFn = Callable[[float, float], np.ndarray]


class SingularPoint(ArithmeticError):
    """The numeric metric is not invertible at the requested point."""


@dataclass(frozen=True)
class FDConfig:
    """Differencing configuration.

    ``step`` differences the chart into tangents; ``outer_step`` the metric
    and the Christoffel symbols.  ``richardson`` switches extrapolation on:
    one level on the chart, ``outer_levels`` levels on the outer stages.
    """

    step: float = 1e-3
    richardson: bool = True
    tol: float = 1e-6
    outer_step: float = 1e-2
    outer_levels: int = 2

    def __post_init__(self):
        if not 0 < self.step <= 1e-3:
            raise ValueError(f"step must lie in (0, 1e-3], got {self.step}")
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not 0 < self.outer_step < 1:
            raise ValueError("outer_step must lie in (0, 1)")
        if self.outer_levels < 0:
            raise ValueError("outer_levels must be >= 0")

    def outer_order(self) -> int:
        return self.outer_levels if self.richardson else 0


def _central(f, x: float, h: float, levels: int):
    # Richardson tableau over steps h, h/2, ..., h/2**levels
    rows = []
    for k in range(levels + 1):
        hk = h / 2**k
        row = [(f(x + hk) - f(x - hk)) / (2 * hk)]
        for m in range(1, k + 1):
            row.append((4**m * row[m - 1] - rows[k - 1][m - 1]) / (4**m - 1))
        rows.append(row)
    return rows[-1][-1]


def partial(f: Callable[[float, float], np.ndarray], t: float, phi: float, var: int,
            h: float, levels: int = 1):
    """Central-difference partial derivative of ``f(t, phi)`` in ``var`` (0 = t, 1 = phi)."""
    if var == 0:
        return _central(lambda s: f(s, phi), t, h, levels)
    return _central(lambda s: f(t, s), phi, h, levels)


def chart_fn(params: MotionParams) -> Callable[[float, float], np.ndarray]:
    """X(t, phi) by direct matrix arithmetic."""
    vel = np.array(omega_matrix(params), dtype=float) + float(params.s_prime) * np.eye(N_DIM)
    b = np.array([float(x) for x in params.b_prime])
    lam = float(params.lam)

    def X(t: float, phi: float) -> np.ndarray:
        x = np.zeros(N_DIM)
        x[0], x[1], x[2] = math.cos(phi), math.sin(phi), lam * phi
        return x + t * (vel @ x + b)

    return X


def metric_fn(params: MotionParams, cfg: FDConfig = FDConfig()) -> MetricFn:
    X = chart_fn(params)

    def g(t: float, phi: float) -> np.ndarray:
        levels = 1 if cfg.richardson else 0
        xt = partial(X, t, phi, 0, cfg.step, levels)
        xp = partial(X, t, phi, 1, cfg.step, levels)
        g12 = float(xp @ xt)
        return np.array([[float(xt @ xt), g12], [g12, float(xp @ xp)]])

    return g


def numeric_metric(params: MotionParams, t: float, phi: float, cfg: FDConfig = FDConfig()) -> np.ndarray:
    return metric_fn(params, cfg)(t, phi)


def christoffel_fn(g: MetricFn, cfg: FDConfig = FDConfig()) -> Callable[[float, float], np.ndarray]:
    """Returns ``G(t, phi)`` with ``G[l, i, j] = Gamma^l_ij``."""
    h = cfg.outer_step

    def G(t: float, phi: float) -> np.ndarray:
        gm = g(t, phi)
        det = np.linalg.det(gm)
        if abs(det) < 1e-10:
            raise SingularPoint(f"|det g| = {abs(det):.3g} at t={t}, phi={phi}")
        ginv = np.linalg.inv(gm)
        dg = np.stack([partial(g, t, phi, k, h, cfg.outer_order()) for k in (0, 1)], axis=-1)  # dg[i, j, k]
        # bracket[i, j, m] = d_j g_im + d_i g_jm - d_m g_ij
        bracket = np.einsum("imj->ijm", dg) + np.einsum("jmi->ijm", dg) - dg
        return 0.5 * np.einsum("lm,ijm->lij", ginv, bracket)

    return G


def curvature_from_metric(g: MetricFn, t: float, phi: float, cfg: FDConfig = FDConfig()) -> float:
    """Scalar curvature g^{ij}[d_l G^l_ij - d_j G^l_il + G^l_ij G^m_lm - G^m_il G^l_jm]."""
    G = christoffel_fn(g, cfg)
    gam = G(t, phi)
    dG = np.stack([partial(G, t, phi, k, cfg.outer_step, cfg.outer_order()) for k in (0, 1)], axis=-1)
    ricci = (
        np.einsum("lijl->ij", dG)
        - np.einsum("lilj->ij", dG)
        + np.einsum("lij,mlm->ij", gam, gam)
        - np.einsum("mil,ljm->ij", gam, gam)
    )
    return float(np.einsum("ij,ij->", np.linalg.inv(g(t, phi)), ricci))


def numeric_scalar_curvature(params: MotionParams, t: float, phi: float, cfg: FDConfig = FDConfig()) -> float:
    return curvature_from_metric(metric_fn(params, cfg), t, phi, cfg)


def sphere_metric(radius: float = 1.0) -> MetricFn:
    """Round sphere in (theta, phi): diag(r^2, r^2 sin^2 theta)."""

    def g(theta: float, phi: float) -> np.ndarray:
        return np.array([[radius**2, 0.0], [0.0, (radius * math.sin(theta)) ** 2]])

    return g
