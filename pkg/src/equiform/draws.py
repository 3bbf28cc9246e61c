"""Seeded random parameter draws, including draws pinned to a case branch.

Values are exact multiples of 1/100, uniform on [-2, 2]; a parameter that
must be nonzero is redrawn until its magnitude is at least 0.1.
"""

from __future__ import annotations

import random
from fractions import Fraction
from typing import Dict, Iterable, List, Optional, Sequence

from .params import N_DIM, N_OMEGA, MotionParams

GRID = 100
LOW, HIGH = -2, 2
MIN_NONZERO = Fraction(1, 10)


def uniform(rng: random.Random, low=LOW, high=HIGH) -> Fraction:
    return Fraction(rng.randint(int(low * GRID), int(high * GRID)), GRID)


def nonzero(rng: random.Random, low=LOW, high=HIGH) -> Fraction:
    while True:
        v = uniform(rng, low, high)
        if abs(v) >= MIN_NONZERO:
            return v


def generic(rng: random.Random) -> MotionParams:
    """Every parameter drawn; lambda and s' nonzero."""
    return MotionParams(
        lam=nonzero(rng),
        s_prime=nonzero(rng),
        omega=tuple(uniform(rng) for _ in range(N_OMEGA)),
        b_prime=tuple(uniform(rng) for _ in range(N_DIM)),
    )


def theorem31(rng: random.Random) -> MotionParams:
    """omega_1..omega_15 = 0; lambda, s' in [0.1, 2]; the rest free."""
    omega = [Fraction(0)] * 15 + [uniform(rng) for _ in range(6)]
    return MotionParams(
        lam=nonzero(rng, MIN_NONZERO, HIGH),
        s_prime=nonzero(rng, MIN_NONZERO, HIGH),
        omega=tuple(omega),
        b_prime=tuple(uniform(rng) for _ in range(N_DIM)),
    )


def converse(rng: random.Random) -> MotionParams:
    """At least one of omega_1..omega_15 nonzero.

    Alternates between fully generic draws and sparse ones where only a
    random subset of one to three of omega_1..omega_15 is switched on.
    """
    p = generic(rng)
    if rng.random() < 0.5:
        return p
    on = set(rng.sample(range(1, 16), rng.randint(1, 3)))
    omega = {k: (nonzero(rng) if k in on else 0) for k in range(1, 16)}
    return p.replace(omega=omega)


def _cayley(rng: random.Random, n: int) -> List[List[Fraction]]:
    """Random rational orthogonal matrix (I - S)(I + S)^-1, S skew."""
    s = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            v = Fraction(rng.randint(-9, 9), 7)
            s[i][j], s[j][i] = v, -v
    plus = [[(1 if i == j else 0) + s[i][j] for j in range(n)] for i in range(n)]
    minus = [[(1 if i == j else 0) - s[i][j] for j in range(n)] for i in range(n)]
    inv = _inverse(plus)
    return [[sum(minus[i][k] * inv[k][j] for k in range(n)) for j in range(n)] for i in range(n)]


def _inverse(m: Sequence[Sequence[Fraction]]) -> List[List[Fraction]]:
    n = len(m)
    a = [list(row) + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(m)]
    for col in range(n):
        pivot = next(r for r in range(col, n) if a[r][col])
        a[col], a[pivot] = a[pivot], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col]:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [row[n:] for row in a]


def _matvec(m, v):
    return [sum(a * b for a, b in zip(row, v)) for row in m]


def solve2(a11, a12, a21, a22, r1, r2):
    """Exact solution of a 2x2 linear system, or None when singular."""
    det = a11 * a22 - a12 * a21
    if det == 0:
        return None
    return (r1 * a22 - a12 * r2) / det, (a11 * r2 - a21 * r1) / det


def with_alpha78_zero(rng: random.Random, p: MotionParams, keep_w2_w7_zero: bool = False) -> MotionParams:
    """Force alpha_7 = alpha_8 = 0.

    With u = (w2..w6) and v = (w7..w11) the two conditions read |u| = |v| and
    u . v = 0.  Take x, then Jx (a quarter turn in coordinate pairs, which has
    the same norm and is orthogonal to x) and rotate both by a random
    rational orthogonal matrix.  With ``keep_w2_w7_zero`` the construction
    runs in the four coordinates (w3..w6), (w8..w11) instead.
    """
    w: Dict[int, Fraction] = {k: p.w(k) for k in range(1, 22)}
    if keep_w2_w7_zero:
        x = [nonzero(rng) for _ in range(4)]
        jx = [-x[1], x[0], -x[3], x[2]]
        q = _cayley(rng, 4)
        u, v = _matvec(q, x), _matvec(q, jx)
        w[2] = w[7] = Fraction(0)
        for k in range(4):
            w[3 + k], w[8 + k] = u[k], v[k]
    else:
        x = [nonzero(rng) for _ in range(4)] + [Fraction(0)]
        jx = [-x[1], x[0], -x[3], x[2], Fraction(0)]
        while True:
            q = _cayley(rng, 5)
            u, v = _matvec(q, x), _matvec(q, jx)
            if u[0] and v[0]:
                break
        for k in range(5):
            w[2 + k], w[7 + k] = u[k], v[k]
    return p.replace(omega=w)


def with_alpha46_zero(p: MotionParams) -> Optional[MotionParams]:
    """Force alpha_4 = alpha_6 = 0 by solving for (omega_1, omega_12).

    Both are linear in that pair:
    -w1 w7 + w3 w12 = -(w4 w13 + w5 w14 + w6 w15) and
     w1 w2 + w8 w12 = -(w9 w13 + w10 w14 + w11 w15).
    Returns None if the system is singular for this draw.
    """
    w = p.w
    r4 = -(w(4) * w(13) + w(5) * w(14) + w(6) * w(15))
    r6 = -(w(9) * w(13) + w(10) * w(14) + w(11) * w(15))
    sol = solve2(-w(7), w(3), w(2), w(8), r4, r6)
    if sol is None:
        return None
    return p.replace(omega={1: sol[0], 12: sol[1]})


def branch(rng: random.Random, name: str) -> MotionParams:
    """Draw pinned to one branch of the K = 0 case analysis.

    ``root``: generic.  ``1``: alpha_7 = alpha_8 = 0 with w2, w7 != 0.
    ``1a``: additionally alpha_4 = alpha_6 = 0.  ``1a-end``: w2 = w7 = 0 and
    alpha_4 = alpha_6 = alpha_7 = alpha_8 = 0 (only w12..w15 survive among
    omega_1..omega_15).  ``1b``: w2 = w7 = 0, alpha_7 = alpha_8 = 0.
    ``2``: w2 = w7 = 0 (alpha_7, alpha_8 generic).  ``2'``: w2 = w7 = 0 and
    alpha_4 = alpha_6 = 0, done by zeroing w1 and w12..w15.
    """
    p = generic(rng)
    if name == "root":
        return p
    if name == "1":
        return with_alpha78_zero(rng, p)
    if name == "1a":
        while True:
            q = with_alpha46_zero(with_alpha78_zero(rng, generic(rng)))
            if q is not None:
                return q
    if name == "1a-end":
        zero = {k: 0 for k in range(1, 12)}
        return p.replace(omega=zero)
    if name == "1b":
        return with_alpha78_zero(rng, p, keep_w2_w7_zero=True)
    if name == "2":
        return p.replace(omega={2: 0, 7: 0})
    if name == "2'":
        return p.replace(omega={1: 0, 2: 0, 7: 0, 12: 0, 13: 0, 14: 0, 15: 0})
    raise ValueError(f"unknown branch {name!r}")


BRANCHES = ("root", "1", "1a", "1a-end", "1b", "2", "2'")


def seeded(seed: int) -> random.Random:
    return random.Random(seed)


def sequence(kind, seed: int, count: int) -> List[MotionParams]:
    """``count`` draws from one seeded stream; ``kind`` is a draw function."""
    rng = seeded(seed)
    return [kind(rng) for _ in range(count)]
