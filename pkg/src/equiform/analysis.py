"""Coefficient formulas, case analysis and the two theorems as machine checks.

Normalization used throughout: at t = 0 the scalar curvature is
``K0 = P / Q`` with ``Q = 2 det(g)^3`` and ``P = K0 * Q``.  With this choice
the sextic obstructions of the K != 0 case come out exactly as printed in
the literature (up to an exponent typo), while the quartic obstructions of
the K = 0 case come out with the opposite overall sign: the printed
formulas use the opposite sign convention for K.  The curvature itself is
pinned by the round sphere (K = +2).

Every printed formula is kept verbatim next to a corrected one; the
corrected forms are certified against the exact pipeline in the tests.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from .geometry import CurvatureField, MetricField, first_fundamental_form, scalar_curvature
from .motion import build_chart
from .params import OMEGA_SLOTS, MotionParams
from .trigpoly import COS, KIND_NAMES, SIN, Key, TPoly, TrigPoly, cos, phi, sin

HALF = Fraction(1, 2)


# -- alpha coefficients -------------------------------------------------------


@dataclass(frozen=True)
class AlphaSet:
    """alpha_0 .. alpha_9 of the first fundamental form."""

    values: Tuple[Fraction, ...]

    def __getitem__(self, k: int) -> Fraction:
        return self.values[k]

    def __iter__(self):
        return iter(self.values)

    def replace(self, k: int, value) -> "AlphaSet":
        vals = list(self.values)
        vals[k] = Fraction(value)
        return AlphaSet(tuple(vals))


def _sq(x):
    return x * x


def alphas_closed_form(p: MotionParams) -> AlphaSet:
    """The ten alphas, with the three printed typos corrected (see ALPHA_CORRECTIONS)."""
    w, b, lam, s = p.w, p.b, p.lam, p.s_prime
    a0 = _sq(s) + _sq(w(1)) + sum(_sq(b(i)) for i in range(1, 8)) + HALF * sum(_sq(w(i)) for i in range(2, 12))
    a1 = 2 * lam * (b(1) * w(2) + b(2) * w(7) + b(3) * s - sum(b(i) * w(i + 8) for i in range(4, 8)))
    a2 = _sq(lam) * (_sq(s) + _sq(w(2)) + _sq(w(7)) + sum(_sq(w(i)) for i in range(12, 16)))
    a3 = 2 * (b(1) * s - sum(b(i + 1) * w(i) for i in range(1, 7)))
    a4 = 2 * lam * (-w(1) * w(7) + sum(w(i) * w(i + 9) for i in range(3, 7)))
    a5 = 2 * (b(1) * w(1) + b(2) * s - sum(b(i) * w(i + 4) for i in range(3, 8)))
    a6 = 2 * lam * (w(1) * w(2) + sum(w(i) * w(i + 4) for i in range(8, 12)))
    a7 = HALF * sum(_sq(w(i)) - _sq(w(i + 5)) for i in range(2, 7))
    a8 = sum(w(i) * w(i + 5) for i in range(2, 7))
    a9 = (
        (1 + _sq(lam)) * _sq(s)
        + _sq(w(1))
        + HALF * sum(_sq(w(i)) for i in range(2, 12))
        + _sq(lam) * (_sq(w(2)) + _sq(w(7)) + sum(_sq(w(i)) for i in range(12, 16)))
    )
    return AlphaSet(tuple(Fraction(x) for x in (a0, a1, a2, a3, a4, a5, a6, a7, a8, a9)))


def printed_alphas(p: MotionParams) -> AlphaSet:
    """The alphas exactly as printed, typos included."""
    w, b, lam, s = p.w, p.b, p.lam, p.s_prime
    good = alphas_closed_form(p)
    a0 = _sq(s) + _sq(w(1)) + HALF * (sum(_sq(b(i)) for i in range(1, 8)) + sum(_sq(w(i)) for i in range(2, 12)))
    a1 = 2 * lam * (b(1) * w(2) + b(2) * w(2) + b(3) * s - sum(b(i) * w(i + 8) for i in range(4, 8)))
    # "omega_2^7" read literally as omega_2 to the seventh power
    a9 = (
        (1 + _sq(lam)) * _sq(s)
        + _sq(w(1))
        + HALF * sum(_sq(w(i)) for i in range(2, 12))
        + _sq(lam) * (_sq(w(2)) + w(2) ** 7 + sum(_sq(w(i)) for i in range(12, 16)))
    )
    return good.replace(0, a0).replace(1, a1).replace(9, a9)


ALPHA_CORRECTIONS: Dict[int, Tuple[str, str]] = {
    0: ("s'^2 + w1^2 + 1/2 [sum b_i^2 + sum_{i=2}^{11} w_i^2]",
        "s'^2 + w1^2 + sum b'_i^2 + 1/2 sum_{i=2}^{11} w_i^2"),
    1: ("2 lam [b'1 w2 + b'2 w2 + b'3 s' - sum_{i=4}^{7} b'_i w_{i+8}]",
        "2 lam [b'1 w2 + b'2 w7 + b'3 s' - sum_{i=4}^{7} b'_i w_{i+8}]"),
    9: ("(1+lam^2) s'^2 + w1^2 + 1/2 sum_{i=2}^{11} w_i^2 + lam^2 (w2^2 + w2^7 + sum_{i=12}^{15} w_i^2)",
        "(1+lam^2) s'^2 + w1^2 + 1/2 sum_{i=2}^{11} w_i^2 + lam^2 (w2^2 + w7^2 + sum_{i=12}^{15} w_i^2)"),
}


@dataclass(frozen=True)
class AlphaDiff:
    index: int
    printed_text: str
    corrected_text: str
    printed_value: Fraction
    corrected_value: Fraction

    @property
    def differs(self) -> bool:
        return self.printed_value != self.corrected_value


def alpha_diff_report(p: MotionParams) -> List[AlphaDiff]:
    printed, good = printed_alphas(p), alphas_closed_form(p)
    return [AlphaDiff(k, old, new, printed[k], good[k]) for k, (old, new) in sorted(ALPHA_CORRECTIONS.items())]


def a02_gap(p: MotionParams, alphas: Optional[AlphaSet] = None) -> Fraction:
    """(1 + lam^2) alpha_2 - lam^4 s'^2, the factor that keeps the obstructions alive."""
    a = alphas or alphas_closed_form(p)
    return (1 + _sq(p.lam)) * a[2] - p.lam**4 * _sq(p.s_prime)


def a02_sum_of_squares(p: MotionParams) -> Fraction:
    """lam^2 [s'^2 + (1 + lam^2)(w2^2 + w7^2 + sum_{12}^{15} w_i^2)].

    The printed version omits w2, w7; it is only used where w2 = w7 = 0.
    """
    w, lam = p.w, p.lam
    rest = _sq(w(2)) + _sq(w(7)) + sum(_sq(w(i)) for i in range(12, 16))
    return _sq(lam) * (_sq(p.s_prime) + (1 + _sq(lam)) * rest)


# -- first fundamental form from the alphas ----------------------------------


def metric_expansion(p: MotionParams, a: AlphaSet) -> Tuple[TPoly, TPoly, TPoly]:
    """g11, g12, g22 assembled from the alpha displays."""
    lam, s, w, b = p.lam, p.s_prime, p.w, p.b
    one = TrigPoly.one()
    g11 = (
        one.scale(a[0]) + phi(1, a[1]) + phi(2, a[2])
        + cos(1, 0, a[3]) + cos(1, 1, a[4])
        + sin(1, 0, a[5]) + sin(1, 1, a[6])
        + cos(2, 0, a[7]) + sin(2, 0, a[8])
    )
    g12_0 = (
        one.scale(lam * b(3) - w(1)) + phi(1, _sq(lam) * s)
        + cos(1, 0, b(2) - lam * w(2)) + cos(1, 1, lam * w(7))
        - sin(1, 0, b(1) + lam * w(7)) - sin(1, 1, lam * w(2))
    )
    g12_1 = (
        one.scale(a[1]) + phi(1, 2 * a[2])
        + cos(1, 0, a[4] + a[5]) + cos(1, 1, a[6])
        + sin(1, 0, a[6] - a[3]) - sin(1, 1, a[4])
        + cos(2, 0, 2 * a[8]) - sin(2, 0, 2 * a[7])
    ).scale(HALF)
    c = 1 + _sq(lam)
    g22_2 = one.scale(a[9]) + cos(1, 0, a[6]) - cos(2, 0, a[7]) - sin(1, 0, a[4]) - sin(2, 0, a[8])
    return TPoly((g11,)), TPoly((g12_0, g12_1)), TPoly((one.scale(c), one.scale(2 * c * s), g22_2))


@dataclass
class ExpansionCheck:
    ok: bool
    mismatches: List[Tuple[str, int, Key, Fraction, Fraction]] = field(default_factory=list)
    alpha_diffs: List[AlphaDiff] = field(default_factory=list)

    def __bool__(self) -> bool:
        return self.ok


def verify_metric_expansion(p: MotionParams, alphas: Optional[AlphaSet] = None) -> ExpansionCheck:
    """Compare the symbolic g_ij with the alpha expansions term by term.

    Mismatches are ``(entry, power of t, basis key, pipeline value, expansion value)``.
    """
    a = alphas if alphas is not None else alphas_closed_form(p)
    metric = first_fundamental_form(build_chart(p))
    mismatches = []
    for name, got, want in zip(("g11", "g12", "g22"), (metric.g11, metric.g12, metric.g22), metric_expansion(p, a)):
        for k in range(max(len(got), len(want))):
            diff = got.coeff(k) - want.coeff(k)
            for key, _ in diff.sorted_items():
                mismatches.append((name, k, key, got.coeff(k).coeff(*key), want.coeff(k).coeff(*key)))
    return ExpansionCheck(not mismatches, mismatches, alpha_diff_report(p))


# -- K(0, phi) as P / Q ---------------------------------------------------------


@dataclass(frozen=True)
class CurvatureRatio:
    """K(0, phi) = P / Q with Q = 2 det^3 (all at t = 0)."""

    P: TrigPoly
    Q: TrigPoly
    det0: TrigPoly

    def residual(self, K) -> TrigPoly:
        """P - K Q: identically zero iff K(0, phi) is the constant K."""
        return self.P - self.Q.scale(K)


def curvature_ratio(p: MotionParams) -> CurvatureRatio:
    metric = first_fundamental_form(build_chart(p))
    return ratio_from_field(scalar_curvature(metric, t_order=2), metric)


def ratio_from_field(cf: CurvatureField, metric: MetricField) -> CurvatureRatio:
    det0 = metric.det.at_zero()
    Q = (det0 * det0 * det0).scale(2)
    # the pipeline denominator is 4 det^3, so P = numerator / 2
    assert cf.denominator0 == Q.scale(2), "unexpected denominator normalization"
    return CurvatureRatio(P=cf.numerator0.scale(HALF), Q=Q, det0=det0)


# -- obstruction registry -------------------------------------------------------


@dataclass(frozen=True)
class ObstructionReport:
    """One basis coefficient inspected by a check."""

    name: str
    key: Key
    value: Fraction
    branch: str
    printed: Optional[Fraction] = None
    corrected: Optional[Fraction] = None
    printed_key: Optional[Key] = None
    seed: Optional[int] = None

    @property
    def vanished(self) -> bool:
        return self.value == 0

    @property
    def certified(self) -> Optional[bool]:
        """Corrected formula equals the pipeline coefficient (None if no formula)."""
        return None if self.corrected is None else self.corrected == self.value

    def label(self) -> str:
        i, j, kind = self.key
        return f"{self.name}[phi^{i} {KIND_NAMES[kind]}({j} phi)]"

    def to_dict(self) -> dict:
        def enc(x):
            return None if x is None else str(x)

        return {
            "name": self.name,
            "i": self.key[0],
            "j": self.key[1],
            "kind": KIND_NAMES[self.key[2]],
            "value": enc(self.value),
            "vanished": self.vanished,
            "branch": self.branch,
            "printed": enc(self.printed),
            "corrected": enc(self.corrected),
            "certified": self.certified,
            "seed": self.seed,
        }


Formula = Callable[[MotionParams, AlphaSet], Fraction]


@dataclass(frozen=True)
class Obstruction:
    name: str
    key: Key
    branch: str
    applies: Callable[[MotionParams, AlphaSet], bool]
    printed: Formula
    corrected: Formula
    printed_key: Optional[Key] = None
    note: str = ""


def _quartic(w2, w7):
    return w2**4 - 6 * w2**2 * w7**2 + w7**4


def _quartic_printed(w2, w4, w7):
    # "omega_2^4 - 6 omega_2^2 omega_4^2 + omega_7^2"
    return w2**4 - 6 * w2**2 * w4**2 + w7**2


def _w(p):
    return p.w(2), p.w(7)


def _always(p, a):
    return True


def _a78(p, a):
    return a[7] == 0 and a[8] == 0


def _a4678(p, a):
    return _a78(p, a) and a[4] == 0 and a[6] == 0


def _w27(p, a):
    return p.w(2) == 0 and p.w(7) == 0


def _d(p, a):
    return a02_gap(p, a)


def _l4(p):
    return p.lam**4


K0_OBSTRUCTIONS: Tuple[Obstruction, ...] = (
    Obstruction(
        "A4,6", (4, 6, COS), "root", _always,
        printed=lambda p, a: Fraction(1, 4) * _l4(p) * (
            4 * a[8] * p.w(2) * p.w(7) * (p.w(2) ** 2 - p.w(7) ** 2) - a[7] * _quartic_printed(p.w(2), p.w(4), p.w(7))),
        corrected=lambda p, a: -Fraction(1, 4) * _l4(p) * (
            4 * a[8] * p.w(2) * p.w(7) * (p.w(2) ** 2 - p.w(7) ** 2) - a[7] * _quartic(*_w(p))),
        note="w4 -> w7 and w7^2 -> w7^4 in the quartic; overall sign (K convention)",
    ),
    Obstruction(
        "B4,6", (4, 6, SIN), "root", _always,
        printed=lambda p, a: Fraction(1, 4) * _l4(p) * (
            4 * a[7] * p.w(2) * p.w(7) * (p.w(7) ** 2 - p.w(2) ** 2) - a[8] * _quartic_printed(p.w(2), p.w(4), p.w(7))),
        corrected=lambda p, a: -Fraction(1, 4) * _l4(p) * (
            4 * a[7] * p.w(2) * p.w(7) * (p.w(7) ** 2 - p.w(2) ** 2) - a[8] * _quartic(*_w(p))),
        note="same quartic typo; overall sign",
    ),
    Obstruction(
        "A4,5", (4, 5, COS), "alpha7=alpha8=0", _a78,
        printed=lambda p, a: Fraction(1, 4) * _l4(p) * (
            4 * a[4] * p.w(2) * p.w(7) * (p.w(2) ** 2 - p.w(7) ** 2) + a[6] * _quartic_printed(p.w(2), p.w(4), p.w(7))),
        corrected=lambda p, a: -Fraction(1, 4) * _l4(p) * (
            4 * a[4] * p.w(2) * p.w(7) * (p.w(2) ** 2 - p.w(7) ** 2) + a[6] * _quartic(*_w(p))),
        note="quartic typo; overall sign",
    ),
    Obstruction(
        "B4,5", (4, 5, SIN), "alpha7=alpha8=0", _a78,
        printed=lambda p, a: Fraction(1, 4) * _l4(p) * (
            4 * a[6] * p.w(2) * p.w(7) * (p.w(2) ** 2 - p.w(7) ** 2) - a[4] * _quartic_printed(p.w(2), p.w(4), p.w(7))),
        corrected=lambda p, a: -Fraction(1, 4) * _l4(p) * (
            4 * a[6] * p.w(2) * p.w(7) * (p.w(2) ** 2 - p.w(7) ** 2) - a[4] * _quartic(*_w(p))),
        note="quartic typo; overall sign",
    ),
    Obstruction(
        "A4,4", (4, 4, COS), "alpha4=alpha6=alpha7=alpha8=0", _a4678,
        printed=lambda p, a: HALF * _l4(p) * a[9] * _quartic_printed(p.w(2), p.w(4), p.w(7)),
        corrected=lambda p, a: -HALF * _l4(p) * a[9] * _quartic(*_w(p)),
        note="quartic typo; overall sign",
    ),
    Obstruction(
        "B4,4", (4, 4, SIN), "alpha4=alpha6=alpha7=alpha8=0", _a4678,
        printed=lambda p, a: 2 * _l4(p) * p.w(2) * p.w(7) * a[9] * (p.w(2) ** 2 - p.w(7) ** 2),
        corrected=lambda p, a: -2 * _l4(p) * p.w(2) * p.w(7) * a[9] * (p.w(2) ** 2 - p.w(7) ** 2),
        note="overall sign",
    ),
    Obstruction(
        "A4,0", (4, 0, COS), "alpha4=alpha6=alpha7=alpha8=0, w2=w7=0",
        lambda p, a: _a4678(p, a) and _w27(p, a),
        printed=lambda p, a: 4 * _d(p, a) * (
            (p.lam**2 + 1) * a[2] * (a[9] - a[2]) + p.s_prime**2 * ((p.lam**4 - 1) * a[2] - p.lam**4 * a[9])),
        corrected=lambda p, a: -4 * _d(p, a) * (
            (p.lam**2 + 1) * a[2] * (a[9] - a[2]) + p.s_prime**2 * ((p.lam**4 - 1) * a[2] - p.lam**4 * a[9])),
        note="overall sign",
    ),
    Obstruction(
        "A4,0 (branch b)", (4, 1, COS), "alpha7=alpha8=0, w2=w7=0", lambda p, a: _a78(p, a) and _w27(p, a),
        printed=lambda p, a: 4 * p.lam**2 * p.s_prime**2 * a[6] * _d(p, a),
        corrected=lambda p, a: -4 * p.lam**2 * p.s_prime**2 * a[6] * _d(p, a),
        printed_key=(4, 0, COS),
        note="printed label (4,0); the formula is the (4,1) cosine coefficient; overall sign",
    ),
    Obstruction(
        "B4,0 (branch b)", (4, 1, SIN), "alpha7=alpha8=0, w2=w7=0", lambda p, a: _a78(p, a) and _w27(p, a),
        printed=lambda p, a: 4 * p.lam**2 * p.s_prime**2 * a[4] * (p.lam**4 * p.s_prime**2 - (1 + p.lam**2) * a[2]),
        corrected=lambda p, a: -4 * p.lam**2 * p.s_prime**2 * a[4] * (p.lam**4 * p.s_prime**2 - (1 + p.lam**2) * a[2]),
        printed_key=(4, 0, SIN),
        note="printed label (4,0); the formula is the (4,1) sine coefficient; overall sign",
    ),
    Obstruction(
        "A4,1", (4, 1, COS), "w2=w7=0", _w27,
        printed=lambda p, a: 4 * p.lam**2 * p.s_prime**2 * a[6] * _d(p, a),
        corrected=lambda p, a: -4 * p.lam**2 * p.s_prime**2 * a[6] * _d(p, a),
        note="overall sign",
    ),
    Obstruction(
        "B4,1", (4, 1, SIN), "w2=w7=0", _w27,
        printed=lambda p, a: 4 * p.lam**2 * p.s_prime**2 * a[4] * (p.lam**4 * p.s_prime**2 - (1 + p.lam**2) * a[2]),
        corrected=lambda p, a: -4 * p.lam**2 * p.s_prime**2 * a[4] * (p.lam**4 * p.s_prime**2 - (1 + p.lam**2) * a[2]),
        note="overall sign",
    ),
    Obstruction(
        "A4,2", (4, 2, COS), "w2=w7=0, alpha4=alpha6=0",
        lambda p, a: _w27(p, a) and a[4] == 0 and a[6] == 0,
        printed=lambda p, a: -4 * a[7] * _d(p, a) ** 2,
        corrected=lambda p, a: 4 * a[7] * _d(p, a) ** 2,
        note="overall sign",
    ),
    Obstruction(
        "B4,2", (4, 2, SIN), "w2=w7=0, alpha4=alpha6=0",
        lambda p, a: _w27(p, a) and a[4] == 0 and a[6] == 0,
        printed=lambda p, a: -4 * a[8] * _d(p, a) ** 2,
        corrected=lambda p, a: 4 * a[8] * _d(p, a) ** 2,
        note="overall sign",
    ),
)


def _sextic_cos(w2, w7):
    return w7**6 - 15 * w7**4 * w2**2 + 15 * w7**2 * w2**4 - w2**6


def _sextic_cos_printed(w2, w7):
    # "15 omega_7^2 omega_2^2" in the third term
    return w7**6 - 15 * w7**4 * w2**2 + 15 * w7**2 * w2**2 - w2**6


def k_obstructions(K: Fraction) -> Tuple[Obstruction, ...]:
    """Obstructions of P - K Q for a nonzero constant K."""
    return (
        Obstruction(
            "A6,6", (6, 6, COS), "K!=0", _always,
            printed=lambda p, a: Fraction(1, 16) * p.lam**6 * K * _sextic_cos_printed(*_w(p)),
            corrected=lambda p, a: Fraction(1, 16) * p.lam**6 * K * _sextic_cos(*_w(p)),
            note="w7^2 w2^2 -> w7^2 w2^4 in the third term",
        ),
        Obstruction(
            "B6,6", (6, 6, SIN), "K!=0", _always,
            printed=lambda p, a: -Fraction(1, 8) * p.lam**6 * K * p.w(2) * p.w(7) * (
                3 * p.w(7) ** 4 - 10 * p.w(7) ** 2 * p.w(2) ** 2 + 3 * p.w(2) ** 4),
            corrected=lambda p, a: -Fraction(1, 8) * p.lam**6 * K * p.w(2) * p.w(7) * (
                3 * p.w(7) ** 4 - 10 * p.w(7) ** 2 * p.w(2) ** 2 + 3 * p.w(2) ** 4),
            note="exact as printed",
        ),
        Obstruction(
            "A6,0", (6, 0, COS), "K!=0, w2=w7=0", _w27,
            printed=lambda p, a: -2 * K * _d(p, a),
            corrected=lambda p, a: -2 * K * _d(p, a) ** 3,
            note="the gap factor enters cubed, not linearly",
        ),
    )


def _report(ob: Obstruction, p: MotionParams, a: AlphaSet, poly: TrigPoly, seed) -> ObstructionReport:
    return ObstructionReport(
        name=ob.name,
        key=ob.key,
        value=poly.coeff(*ob.key),
        branch=ob.branch,
        printed=ob.printed(p, a),
        corrected=ob.corrected(p, a),
        printed_key=ob.printed_key or ob.key,
        seed=seed,
    )


def _all_keys(max_power: int, max_freq: int):
    for i in range(max_power + 1):
        for j in range(max_freq + 1):
            yield (i, j, COS)
            if j:
                yield (i, j, SIN)


def _coefficient_reports(poly: TrigPoly, max_power: int, max_freq: int, branch: str, seed) -> List[ObstructionReport]:
    keys = list(_all_keys(max_power, max_freq))
    seen = set(keys)
    keys += sorted(k for k, _ in poly.items() if k not in seen)  # anything outside the expected range
    return [ObstructionReport("coeff", k, poly.coeff(*k), branch, seed=seed) for k in keys]


# -- theorem checks --------------------------------------------------------------


def _forward_pre(p: MotionParams):
    if any(p.w(k) for k in range(1, 16)):
        raise ValueError("forward check needs omega_1..omega_15 = 0")
    if p.s_prime == 0:
        raise ValueError("forward check needs s' != 0")


def theorem31_forward(p: MotionParams, seed: Optional[int] = None,
                      ratio: Optional[CurvatureRatio] = None) -> List[ObstructionReport]:
    """Every coefficient of P for a motion with omega_1..omega_15 = 0.

    All reports vanish iff K(0, phi) is identically zero.
    """
    _forward_pre(p)
    ratio = ratio or curvature_ratio(p)
    return _coefficient_reports(ratio.P, 4, 6, "w1..w15=0", seed)


def numerator_reports(p: MotionParams, seed: Optional[int] = None,
                      ratio: Optional[CurvatureRatio] = None) -> List[ObstructionReport]:
    """Like :func:`theorem31_forward` without the precondition (for arbitrary draws)."""
    ratio = ratio or curvature_ratio(p)
    return _coefficient_reports(ratio.P, 4, 6, "K=0", seed)


def classify_branch(p: MotionParams, a: Optional[AlphaSet] = None) -> List[str]:
    """Branch labels of the K = 0 case analysis that this draw satisfies."""
    a = a or alphas_closed_form(p)
    return sorted({ob.branch for ob in K0_OBSTRUCTIONS if ob.applies(p, a)})


def theorem31_converse_cases(p: MotionParams, seed: Optional[int] = None,
                             ratio: Optional[CurvatureRatio] = None) -> List[ObstructionReport]:
    """Evaluate each printed K = 0 obstruction whose branch condition the draw meets."""
    a = alphas_closed_form(p)
    ratio = ratio or curvature_ratio(p)
    return [_report(ob, p, a, ratio.P, seed) for ob in K0_OBSTRUCTIONS if ob.applies(p, a)]


def theorem32_check(p: MotionParams, K, seed: Optional[int] = None,
                    ratio: Optional[CurvatureRatio] = None) -> List[ObstructionReport]:
    """Obstructions of P - K Q for constant K != 0.

    The named sextic obstructions come first, then every coefficient of
    P - K Q up to phi^6, frequency 6.  K(0, phi) == K is possible only if all
    of them vanish.
    """
    K = Fraction(K)
    if K == 0:
        raise ValueError("theorem32_check needs K != 0")
    a = alphas_closed_form(p)
    ratio = ratio or curvature_ratio(p)
    residual = ratio.residual(K)
    named = [_report(ob, p, a, residual, seed) for ob in k_obstructions(K) if ob.applies(p, a)]
    return named + _coefficient_reports(residual, 6, 6, "P-KQ", seed)


def sextic_pair_forces_w2_w7(p: MotionParams, K) -> bool:
    """A6,6 = B6,6 = 0 implies w2 = w7 = 0 (for lam, K != 0).

    A6,6 and -2 B6,6 are the real and imaginary parts of
    lam^6 K (w7 + i w2)^6 / 16, which vanish only when w7 + i w2 = 0.
    """
    K = Fraction(K)
    a66 = Fraction(1, 16) * p.lam**6 * K * _sextic_cos(*_w(p))
    b66 = -Fraction(1, 8) * p.lam**6 * K * p.w(2) * p.w(7) * (
        3 * p.w(7) ** 4 - 10 * p.w(7) ** 2 * p.w(2) ** 2 + 3 * p.w(2) ** 4)
    both_zero = a66 == 0 and b66 == 0
    return (not both_zero) or (p.w(2) == 0 and p.w(7) == 0)


# -- the worked example ------------------------------------------------------------


def example_matrix(mu):
    """The printed 7x7 matrix A(t) of the example, as sympy expressions in t."""
    import sympy as sp

    t = sp.Symbol("t")
    m = sp.sympify(mu)
    c, s = sp.cos, sp.sin
    z = 0
    rows = [
        [c(t), z, z, z, z, s(t) * s(m * t), z],
        [z, c(m * t), z, z, s(t) * s(m * t), z, z],
        [z, z, c(m * t), z, z, z, -s(t) * s(m * t)],
        [z, z, z, c(m * t), s(m * t), z, z],
        [z, z, z, -s(m * t), c(m * t), z, s(m * t) * c(m * t)],
        [-s(t) * s(m * t), z, z, z, z, c(m * t), s(m * t)],
        [s(t) * s(m * t), z, z, z, -s(m * t), -c(t) * s(m * t), c(m * t)],
    ]
    return sp.Matrix(rows), t


EXAMPLE_OMEGA = {16: 1, 20: 1, 21: 1}  # multiples of mu


@dataclass
class ExampleCheck:
    mu: Fraction
    derivative: List[List[Fraction]]
    omega: Dict[int, Fraction]
    mismatches: List[str]
    skew: bool
    orthogonality_defect: float
    params: MotionParams

    @property
    def ok(self) -> bool:
        return self.skew and not self.mismatches

    def __bool__(self) -> bool:
        return self.ok


def example_params(mu=1, lam=Fraction(1, 2), s_prime=1, b_prime=(1, 1, 1, 0, 0, 0, 0)) -> MotionParams:
    mu = Fraction(mu)
    omega = [Fraction(0)] * 21
    for k, mult in EXAMPLE_OMEGA.items():
        omega[k - 1] = mult * mu
    return MotionParams(lam, s_prime, tuple(omega), tuple(b_prime))


def example_motion_check(mu, lam=Fraction(1, 2), s_prime=1, b_prime=(1, 1, 1, 0, 0, 0, 0),
                         probe_t: float = 0.5) -> ExampleCheck:
    """Differentiate the printed A(t) at t = 0 and compare with the claimed omegas.

    Also measures how far the printed A(t) is from orthogonal at ``probe_t``;
    only the derivative at t = 0 enters the first-order theory.
    """
    import sympy as sp

    mu = Fraction(mu)
    if mu == 0:
        raise ValueError("mu must be nonzero")
    A, t = example_matrix(sp.Rational(mu.numerator, mu.denominator))
    dA = A.diff(t).subs(t, 0)
    deriv = [[Fraction(str(sp.nsimplify(dA[i, j]))) for j in range(7)] for i in range(7)]
    a0 = A.subs(t, 0)
    mismatches = []
    if a0 != sp.eye(7):
        mismatches.append("A(0) is not the identity")
    skew = all(deriv[i][j] == -deriv[j][i] for i in range(7) for j in range(7))
    omega = {k + 1: deriv[r][c] for k, (r, c) in enumerate(OMEGA_SLOTS)}
    for k in range(1, 22):
        claimed = EXAMPLE_OMEGA.get(k, 0) * mu
        if omega[k] != claimed:
            mismatches.append(f"omega_{k}: derivative gives {omega[k]}, claimed {claimed}")
    At = sp.matrix2numpy(A.subs(t, probe_t).evalf(), dtype=float)
    defect = float(np.abs(At.T @ At - np.eye(7)).max())
    params = example_params(mu, lam, s_prime, b_prime)
    return ExampleCheck(mu, deriv, omega, mismatches, skew, defect, params)
