"""Motion parameters at the zero position and the skew-symmetric layout of omega.

This module deliberately imports nothing from the symbolic kernel so the
floating-point oracle can share it.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import List, Sequence, Tuple

N_DIM = 7
N_OMEGA = 21

# (row, col), zero-based, of omega_k for k = 1..21: the upper triangle, row-major.
OMEGA_SLOTS: Tuple[Tuple[int, int], ...] = tuple(
    (r, c) for r in range(N_DIM) for c in range(r + 1, N_DIM)
)


class InvalidParams(ValueError):
    pass


def _exact(value, name: str) -> Fraction:
    if isinstance(value, float) and not math.isfinite(value):
        raise InvalidParams(f"{name} is not finite: {value!r}")
    try:
        return Fraction(value)
    except (TypeError, ValueError) as exc:
        raise InvalidParams(f"{name}: {exc}") from None


@dataclass(frozen=True)
class MotionParams:
    """The 30 scalars of a first-order equiform motion of the helix.

    ``lam`` is the helix pitch, ``s_prime`` the scaling rate, ``omega`` the
    21 entries of the angular velocity matrix and ``b_prime`` the
    translational velocity.  All values are stored as exact fractions.
    """

    lam: Fraction
    s_prime: Fraction = Fraction(0)
    omega: Tuple[Fraction, ...] = field(default=(Fraction(0),) * N_OMEGA)
    b_prime: Tuple[Fraction, ...] = field(default=(Fraction(0),) * N_DIM)

    def __post_init__(self):
        lam = _exact(self.lam, "lambda")
        if lam == 0:
            raise InvalidParams("lambda must be nonzero (lambda = 0 is a circle, not a helix)")
        if len(self.omega) != N_OMEGA:
            raise InvalidParams(f"omega needs {N_OMEGA} entries, got {len(self.omega)}")
        if len(self.b_prime) != N_DIM:
            raise InvalidParams(f"b_prime needs {N_DIM} entries, got {len(self.b_prime)}")
        object.__setattr__(self, "lam", lam)
        object.__setattr__(self, "s_prime", _exact(self.s_prime, "s_prime"))
        object.__setattr__(
            self, "omega", tuple(_exact(w, f"omega_{k + 1}") for k, w in enumerate(self.omega))
        )
        object.__setattr__(
            self, "b_prime", tuple(_exact(b, f"b'_{k + 1}") for k, b in enumerate(self.b_prime))
        )

    def w(self, k: int) -> Fraction:
        """omega_k with the 1-based index used throughout the literature."""
        return self.omega[k - 1]

    def b(self, k: int) -> Fraction:
        """b'_k, 1-based."""
        return self.b_prime[k - 1]

    def replace(self, **changes) -> "MotionParams":
        """Copy with some fields changed; ``omega``/``b_prime`` may be given as {k: value} (1-based)."""
        data = {"lam": self.lam, "s_prime": self.s_prime, "omega": list(self.omega), "b_prime": list(self.b_prime)}
        for key, value in changes.items():
            if key in ("omega", "b_prime") and isinstance(value, dict):
                for k, v in value.items():
                    data[key][k - 1] = v
            else:
                data[key] = value
        return MotionParams(data["lam"], data["s_prime"], tuple(data["omega"]), tuple(data["b_prime"]))

    @classmethod
    def from_dict(cls, data: dict) -> "MotionParams":
        allowed = {"lambda", "s_prime", "omega", "b_prime"}
        unknown = set(data) - allowed
        if unknown:
            raise InvalidParams(f"unknown keys: {sorted(unknown)}")
        if "lambda" not in data:
            raise InvalidParams("missing key 'lambda'")
        return cls(
            lam=data["lambda"],
            s_prime=data.get("s_prime", 0),
            omega=tuple(data.get("omega", [0] * N_OMEGA)),
            b_prime=tuple(data.get("b_prime", [0] * N_DIM)),
        )

    def to_dict(self) -> dict:
        """Exact JSON-ready form; rationals as ``"p/q"`` strings, integers as ints."""

        def enc(x: Fraction):
            return x.numerator if x.denominator == 1 else f"{x.numerator}/{x.denominator}"

        return {
            "lambda": enc(self.lam),
            "s_prime": enc(self.s_prime),
            "omega": [enc(w) for w in self.omega],
            "b_prime": [enc(b) for b in self.b_prime],
        }


def omega_matrix(params: MotionParams) -> List[List[Fraction]]:
    """Skew-symmetric 7x7 matrix with omega_1..omega_21 on the upper triangle, row-major."""
    m = [[Fraction(0)] * N_DIM for _ in range(N_DIM)]
    for w, (r, c) in zip(params.omega, OMEGA_SLOTS):
        m[r][c] = w
        m[c][r] = -w
    return m


def omega_index(row: int, col: int) -> Tuple[int, int]:
    """1-based omega index and sign for a zero-based off-diagonal entry."""
    if row == col:
        raise ValueError("diagonal has no omega")
    if row < col:
        return OMEGA_SLOTS.index((row, col)) + 1, 1
    return OMEGA_SLOTS.index((col, row)) + 1, -1
