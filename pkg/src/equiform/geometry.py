"""First fundamental form, Christoffel symbols and scalar curvature of a chart.

Coordinates are ``x_1 = t`` (index 0) and ``x_2 = phi`` (index 1).  The
inverse metric is the 2x2 adjugate over ``det``, so every Christoffel
symbol shares the denominator ``2 det`` and the scalar curvature comes out
over ``4 det^3``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional, Sequence, Tuple

from .motion import SurfaceChart, tangent_fields
from .trigpoly import CoeffTable, RationalExpr, TPoly, TrigPoly, extract_coeffs

IDX = (0, 1)


class SingularMetric(ArithmeticError):
    """The metric determinant is identically zero."""


class SingularPoint(ArithmeticError):
    """The metric determinant (numerically) vanishes at the requested point."""


def _dot(u: Sequence[TPoly], v: Sequence[TPoly]) -> TPoly:
    total = TPoly.zero()
    for a, b in zip(u, v):
        if a and b:
            total = total + a * b
    return total


@dataclass(frozen=True)
class MetricField:
    g11: TPoly
    g12: TPoly
    g22: TPoly
    det: TPoly = field(default=None)

    def __post_init__(self):
        if self.det is None:
            object.__setattr__(self, "det", self.g11 * self.g22 - self.g12 * self.g12)

    def g(self, i: int, j: int) -> TPoly:
        if i == j:
            return self.g11 if i == 0 else self.g22
        return self.g12

    def adj(self, i: int, j: int) -> TPoly:
        """Adjugate entries, so that g^{ij} = adj(i, j) / det."""
        if i == j:
            return self.g22 if i == 0 else self.g11
        return -self.g12

    def inverse(self, i: int, j: int) -> RationalExpr:
        if self.det.is_zero():
            raise SingularMetric("metric determinant is identically zero")
        return RationalExpr(self.adj(i, j), self.det)

    def truncate(self, order: int) -> "MetricField":
        return MetricField(self.g11.truncate(order), self.g12.truncate(order), self.g22.truncate(order))

    def eval(self, t: float, phi: float):
        return [[self.g(i, j).eval(t, phi) for j in IDX] for i in IDX]


def first_fundamental_form(chart: SurfaceChart) -> MetricField:
    xt, xp = tangent_fields(chart)
    return MetricField(_dot(xt, xt), _dot(xp, xt), _dot(xp, xp))


@dataclass(frozen=True)
class ChristoffelField:
    """gamma[l][i][j] = Gamma^l_{ij}, each over the common denominator 2 det."""

    gamma: Tuple[Tuple[Tuple[RationalExpr, ...], ...], ...]

    def __call__(self, l: int, i: int, j: int) -> RationalExpr:
        return self.gamma[l][i][j]


def _truncated(p: TPoly, order: Optional[int]) -> TPoly:
    return p if order is None else p.truncate(order)


def christoffel(metric: MetricField, t_order: Optional[int] = None) -> ChristoffelField:
    """Gamma^l_ij = 1/2 g^{lm} (d_j g_im + d_i g_jm - d_m g_ij).

    ``t_order`` optionally truncates every product above that power of t;
    leave it ``None`` for the exact symbols.
    """
    if metric.det.is_zero():
        raise SingularMetric("metric determinant is identically zero")
    dg = [[[metric.g(i, j).diff(k) for k in IDX] for j in IDX] for i in IDX]  # dg[i][j][k] = d_k g_ij
    den = _truncated(metric.det * 2, t_order)
    gamma = []
    for l in IDX:
        rows = []
        for i in IDX:
            row = []
            for j in IDX:
                if j < i:
                    row.append(rows[j][i])
                    continue
                num = TPoly.zero()
                for m in IDX:
                    bracket = dg[i][m][j] + dg[j][m][i] - dg[i][j][m]
                    if bracket:
                        num = num + _truncated(metric.adj(l, m) * bracket, t_order)
                row.append(RationalExpr(num, den))
            rows.append(tuple(row))
        gamma.append(tuple(rows))
    return ChristoffelField(tuple(gamma))


@dataclass(frozen=True)
class CurvatureField:
    """Scalar curvature K(t, phi), its t = 0 restriction and coefficient tables.

    ``K`` is ``None`` when only the restriction was computed (truncated path).
    """

    K: Optional[RationalExpr]
    K0: RationalExpr
    coeff_num: CoeffTable
    coeff_den: CoeffTable

    @property
    def numerator0(self) -> TrigPoly:
        return self.K0.num.at_zero()

    @property
    def denominator0(self) -> TrigPoly:
        return self.K0.den.at_zero()


def _curvature_expr(metric: MetricField, gam: ChristoffelField, t_order: Optional[int]) -> RationalExpr:
    """g^{ij} [d_l G^l_ij - d_j G^l_il + G^l_ij G^m_lm - G^m_il G^l_jm] over 4 det^3.

    Works on the shared-denominator numerators directly: with G = N / (2D),
    d_k G = (d_k N D - N d_k D) / (2 D^2) and G G' = N N' / (4 D^2).
    """
    cut = (lambda p: p) if t_order is None else (lambda p: p.truncate(t_order))
    D = cut(metric.det)
    dD = [D.diff(k) for k in IDX]
    N = [[[gam(l, i, j).num for j in IDX] for i in IDX] for l in IDX]
    dN = {}

    def dn(l, i, j, k):
        key = (l, min(i, j), max(i, j), k)
        if key not in dN:
            dN[key] = N[l][i][j].diff(k)
        return dN[key]

    total = TPoly.zero()
    for i in IDX:
        for j in IDX:
            if j < i:
                continue
            # 4 D^2 times the bracket
            acc = TPoly.zero()
            deriv = TPoly.zero()
            lower = TPoly.zero()
            for l in IDX:
                deriv = deriv + dn(l, i, j, l) - dn(l, i, l, j)
                lower = lower + dD[l] * N[l][i][j] - dD[j] * N[l][i][l]
            acc = acc + cut(deriv * D) * 2 - cut(lower) * 2
            for l in IDX:
                for m in IDX:
                    acc = acc + cut(N[l][i][j] * N[m][l][m]) - cut(N[m][i][l] * N[l][j][m])
            weight = 1 if i == j else 2
            total = total + cut(metric.adj(i, j) * acc) * weight
    den = cut(D * D * D * 4)
    return RationalExpr(total, den)


def scalar_curvature(metric: MetricField, gam: Optional[ChristoffelField] = None,
                     t_order: Optional[int] = None) -> CurvatureField:
    """Scalar curvature of the metric.

    With ``t_order=None`` the full K(t, phi) is built.  Any ``t_order >= 2``
    yields the identical exact restriction K0, much faster, since K(0, phi)
    only involves the metric through second order in t; ``K`` is then left
    as ``None``.
    """
    if metric.det.is_zero():
        raise SingularMetric("metric determinant is identically zero")
    if t_order is not None and t_order < 2:
        raise ValueError("t_order must be >= 2 for an exact t = 0 restriction")
    if t_order is not None:
        metric = metric.truncate(t_order)
    if gam is None:
        gam = christoffel(metric, t_order)
    K = _curvature_expr(metric, gam, t_order)
    K0 = K.at_zero()
    if K0.den.is_zero():
        raise SingularMetric("metric determinant vanishes identically at t = 0")
    return CurvatureField(
        K=K if t_order is None else None,
        K0=K0,
        coeff_num=extract_coeffs(K0.num.at_zero()),
        coeff_den=extract_coeffs(K0.den.at_zero()),
    )


def curvature_at(params, t: float, phi: float, metric: Optional[MetricField] = None,
                 curvature: Optional[CurvatureField] = None) -> float:
    """Numeric K(t, phi) from the exact symbolic pipeline."""
    from .motion import build_chart

    if metric is None:
        metric = first_fundamental_form(build_chart(params))
    det = metric.det.eval(t, phi)
    if abs(det) < 1e-12:
        raise SingularPoint(f"metric determinant {det:.3g} at t={t}, phi={phi}")
    if curvature is None or curvature.K is None:
        curvature = scalar_curvature(metric)
    return curvature.K.eval(t, phi)


def curvature_function(params):
    """Compile the symbolic pipeline once and return ``K(t, phi) -> float``."""
    from .motion import build_chart

    metric = first_fundamental_form(build_chart(params))
    field_ = scalar_curvature(metric)

    def K(t: float, phi: float) -> float:
        return curvature_at(params, t, phi, metric=metric, curvature=field_)

    return K
