import json
import math
import random
from fractions import Fraction

import numpy as np
import pytest

from equiform import draws
from equiform.motion import build_chart, chart_point_direct, helix_point, tangent_fields, velocity_matrix
from equiform.params import InvalidParams, MotionParams, omega_index, omega_matrix
from equiform.trigpoly import TPoly, TrigPoly, cos, phi, sin


def test_helix_point_examples():
    assert np.allclose(helix_point(0.7, 0.0), [1, 0, 0, 0, 0, 0, 0])
    assert np.allclose(helix_point(0.7, math.pi / 2), [0, 1, 0.7 * math.pi / 2, 0, 0, 0, 0])
    assert np.allclose(helix_point(1 / (2 * math.pi), 2 * math.pi), [1, 0, 1, 0, 0, 0, 0])


def test_omega_matrix_zero_and_unit():
    assert all(v == 0 for row in omega_matrix(MotionParams(1)) for v in row)
    m = omega_matrix(MotionParams(1).replace(omega={1: 1}))
    nonzero = {(r, c): v for r, row in enumerate(m) for c, v in enumerate(row) if v}
    assert nonzero == {(0, 1): 1, (1, 0): -1}


def test_omega_layout_row_major():
    p = MotionParams(1, omega=tuple(range(1, 22)))
    m = omega_matrix(p)
    assert m[0][1:] == list(range(1, 7))
    assert m[1][2:] == list(range(7, 12))
    assert m[2][3:] == list(range(12, 16))
    assert m[3][4:] == [16, 17, 18]
    assert m[4][5:] == [19, 20]
    assert m[5][6] == 21
    # the entry printed with the wrong sign: (6, 2) in 1-based indexing is -omega_10
    assert m[5][1] == -10
    assert omega_index(5, 1) == (10, -1)


def test_example_omega_pattern():
    mu = Fraction(3, 2)
    p = MotionParams(1).replace(omega={16: mu, 20: mu, 21: mu})
    m = omega_matrix(p)
    nonzero = {(r + 1, c + 1): v for r, row in enumerate(m) for c, v in enumerate(row) if v}
    assert nonzero == {(4, 5): mu, (5, 4): -mu, (5, 7): mu, (7, 5): -mu, (6, 7): mu, (7, 6): -mu}


def test_skew_symmetry_random():
    rng = draws.seeded(11)
    for _ in range(50):
        m = omega_matrix(draws.generic(rng))
        assert all(m[r][c] == -m[c][r] for r in range(7) for c in range(7))


def test_params_validation():
    with pytest.raises(InvalidParams):
        MotionParams(0)
    with pytest.raises(InvalidParams):
        MotionParams(1, omega=(0,) * 20)
    with pytest.raises(InvalidParams):
        MotionParams(float("nan"))
    with pytest.raises(InvalidParams):
        MotionParams.from_dict({"lambda": 1, "mu": 2})
    with pytest.raises(InvalidParams):
        MotionParams.from_dict({"s_prime": 1})


def test_params_roundtrip_exact():
    p = draws.generic(draws.seeded(12))
    q = MotionParams.from_dict(json.loads(json.dumps(p.to_dict())))
    assert p == q


def test_replace_one_based():
    p = MotionParams(1).replace(omega={2: 5}, b_prime={7: 1})
    assert p.w(2) == 5 and p.omega[1] == 5 and p.b(7) == 1


def test_identity_motion_chart():
    p = MotionParams(Fraction(1, 3))
    chart = build_chart(p)
    for c in chart.components:
        assert c.degree <= 0
    xt, xp = tangent_fields(chart)
    assert all(x.is_zero() for x in xt)


def test_chart_at_zero_is_helix():
    p = draws.generic(draws.seeded(13))
    chart = build_chart(p)
    helix = [cos(), sin(), phi(1, p.lam)] + [TrigPoly.zero()] * 4
    assert [c.at_zero() for c in chart.components] == helix


def test_example_third_component():
    p = MotionParams(Fraction(1, 2), 1, tuple(1 if k in (16, 20, 21) else 0 for k in range(1, 22)), (1, 1, 1, 0, 0, 0, 0))
    x3 = build_chart(p).components[2]
    lam = p.lam
    assert x3 == TPoly((phi(1, lam), TrigPoly.const(p.b(3)) + phi(1, lam * p.s_prime)))


def test_chart_shape():
    p = draws.generic(draws.seeded(14))
    for c in build_chart(p).components:
        assert c.degree <= 1
        for coef in c.coeffs:
            assert coef.max_power <= 1 and coef.max_freq <= 1


def test_tangents_at_zero():
    p = draws.generic(draws.seeded(15))
    _, xp = tangent_fields(build_chart(p))
    assert [x.at_zero() for x in xp] == [-sin(), cos(), TrigPoly.const(p.lam)] + [TrigPoly.zero()] * 4
    norm2 = sum((x.at_zero() * x.at_zero() for x in xp), TrigPoly.zero())
    assert norm2 == TrigPoly.const(1 + p.lam**2)


def test_tangent_t_matches_velocity():
    p = draws.generic(draws.seeded(16))
    xt, _ = tangent_fields(build_chart(p))
    v = velocity_matrix(p)
    x = [cos(), sin(), phi(1, p.lam)]
    for r in range(7):
        expected = TrigPoly.const(p.b_prime[r]) + sum((x[c].scale(v[r][c]) for c in range(3)), TrigPoly.zero())
        assert xt[r] == TPoly.const(expected)


def test_numeric_consistency():
    rng = random.Random(17)
    p = draws.generic(draws.seeded(17))
    chart = build_chart(p)
    for _ in range(50):
        t, x = rng.uniform(-1, 1), rng.uniform(0, 2 * math.pi)
        assert np.max(np.abs(chart.point(t, x) - chart_point_direct(p, t, x))) < 1e-12
