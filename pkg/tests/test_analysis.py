import random
from fractions import Fraction

import pytest

from equiform import analysis as an
from equiform import draws
from equiform.geometry import first_fundamental_form
from equiform.motion import build_chart
from equiform.params import MotionParams
from equiform.trigpoly import COS, SIN, extract_coeffs

N_BRANCH_DRAWS = 100


# -- alphas ------------------------------------------------------------------------


def test_alphas_pure_scaling():
    sigma, lam = Fraction(3, 4), Fraction(2, 5)
    a = an.alphas_closed_form(MotionParams(lam, sigma))
    assert a[0] == sigma**2 and a[2] == lam**2 * sigma**2 and a[9] == (1 + lam**2) * sigma**2
    assert all(a[k] == 0 for k in (1, 3, 4, 5, 6, 7, 8))


def test_alpha78_vanish_without_w2_to_w11():
    p = draws.generic(draws.seeded(50)).replace(omega={k: 0 for k in range(2, 12)})
    a = an.alphas_closed_form(p)
    assert a[7] == 0 and a[8] == 0


def test_alpha78_are_double_frequency_coefficients():
    rs = draws.seeded(51)
    for _ in range(20):
        p = draws.generic(rs)
        g11 = extract_coeffs(first_fundamental_form(build_chart(p)).g11.at_zero())
        a = an.alphas_closed_form(p)
        assert g11.get(0, 2, COS) == a[7] and g11.get(0, 2, SIN) == a[8]


def test_alpha_signs():
    rs = draws.seeded(52)
    for _ in range(100):
        p = draws.generic(rs)
        a = an.alphas_closed_form(p)
        assert a[0] >= 0 and a[2] > 0 and a[9] >= 0


def test_a02_identity_general_form():
    rs = draws.seeded(53)
    for _ in range(100):
        p = draws.generic(rs)
        assert an.a02_gap(p) == an.a02_sum_of_squares(p)
        assert an.a02_gap(p) > 0


def test_a02_printed_form_holds_when_w2_w7_vanish():
    rs = draws.seeded(54)
    for _ in range(50):
        p = draws.generic(rs).replace(omega={2: 0, 7: 0})
        lam = p.lam
        printed = lam**2 * (p.s_prime**2 + (1 + lam**2) * sum(p.w(i) ** 2 for i in range(12, 16)))
        assert an.a02_gap(p) == printed


def test_a02_positive_with_only_w12_to_w15():
    p = MotionParams(Fraction(1, 2), 0).replace(omega={13: Fraction(1, 3)})
    assert an.a02_gap(p) > 0


# -- metric expansion ----------------------------------------------------------------


def test_metric_expansion_identity_plus_scaling():
    assert an.verify_metric_expansion(MotionParams(Fraction(1, 3), 2))


def test_metric_expansion_random_draws():
    rs = draws.seeded(55)
    for _ in range(100):
        p = draws.generic(rs)
        chk = an.verify_metric_expansion(p)
        assert chk.ok, chk.mismatches[:3]


def test_metric_expansion_negative_control():
    p = draws.generic(draws.seeded(56))
    a = an.alphas_closed_form(p)
    chk = an.verify_metric_expansion(p, a.replace(7, a[7] + 1))
    assert not chk
    # alpha_7 multiplies cos 2 phi in g11 and in the t^2 part of g22, and sin 2 phi in the t part of g12
    hit = {(name, k, key) for name, k, key, _, _ in chk.mismatches}
    assert ("g11", 0, (0, 2, COS)) in hit
    assert ("g12", 1, (0, 2, SIN)) in hit
    assert ("g22", 2, (0, 2, COS)) in hit
    assert len(hit) == 3


def test_printed_alphas_fail_the_expansion():
    p = draws.generic(draws.seeded(57))
    assert not an.verify_metric_expansion(p, an.printed_alphas(p))


def test_alpha_diff_report():
    p = draws.generic(draws.seeded(58))
    diffs = an.alpha_diff_report(p)
    assert [d.index for d in diffs] == sorted(an.ALPHA_CORRECTIONS)
    assert all(d.printed_text != d.corrected_text for d in diffs)
    assert all(d.differs for d in diffs)


# -- theorem 3.1 -----------------------------------------------------------------------


def test_forward_example_params():
    reports = an.theorem31_forward(an.example_params(1))
    assert reports and all(r.vanished for r in reports)


def test_forward_rejects_bad_params():
    with pytest.raises(ValueError):
        an.theorem31_forward(draws.generic(draws.seeded(59)))


def test_forward_perturbed_w2():
    p = draws.theorem31(draws.seeded(60)).replace(omega={2: Fraction(1, 2)})
    assert any(not r.vanished for r in an.numerator_reports(p))


def test_numerator_index_ranges():
    rs = draws.seeded(61)
    for _ in range(10):
        P = an.curvature_ratio(draws.generic(rs)).P
        assert P.max_power <= 4 and P.max_freq <= 6
    assert an.curvature_ratio(draws.generic(rs)).P.coeff(4, 6, COS) != 0


def test_root_branch_example():
    p = draws.generic(draws.seeded(62)).replace(omega={2: 1, 7: 2})
    assert an.alphas_closed_form(p)[7] != 0
    P = an.curvature_ratio(p).P
    assert P.coeff(4, 6, COS) != 0 or P.coeff(4, 6, SIN) != 0


def test_w2_w7_zero_kills_top_frequencies():
    p = draws.branch(draws.seeded(63), "2")
    P = an.curvature_ratio(p).P
    for j in (6, 5):
        assert P.coeff(4, j, COS) == 0 and P.coeff(4, j, SIN) == 0


def test_branch_two_quadratic_pair_sign():
    # alpha_7 forced nonzero through w3..w6 with w2 = w7 = 0 and alpha_4 = alpha_6 = 0
    p = draws.branch(draws.seeded(64), "2'")
    a = an.alphas_closed_form(p)
    assert a[7] != 0 and a[4] == 0 and a[6] == 0
    P = an.curvature_ratio(p).P
    gap = an.a02_gap(p)
    assert P.coeff(4, 2, COS) == 4 * a[7] * gap**2
    assert P.coeff(4, 2, SIN) == 4 * a[8] * gap**2


@pytest.mark.parametrize("name", draws.BRANCHES)
def test_obstructions_certified_per_branch(name):
    """Corrected formulas equal the pipeline coefficients on every draw of a branch."""
    rs = draws.seeded(1000 + draws.BRANCHES.index(name))
    expected = {
        "root": {"A4,6", "B4,6"},
        "1": {"A4,5", "B4,5"},
        "1a": {"A4,4", "B4,4"},
        "1a-end": {"A4,0"},
        "1b": {"A4,0 (branch b)", "B4,0 (branch b)"},
        "2": {"A4,1", "B4,1"},
        "2'": {"A4,2", "B4,2"},
    }[name]
    for _ in range(N_BRANCH_DRAWS):
        p = draws.branch(rs, name)
        reports = an.theorem31_converse_cases(p)
        assert all(r.certified for r in reports), [r.label() for r in reports if not r.certified]
        named = {r.name: r for r in reports}
        assert expected <= set(named)
        # the branch's own obstruction pair is not simultaneously zero
        assert any(not named[n].vanished for n in expected)


def test_printed_quartic_obstructions_differ():
    p = draws.branch(draws.seeded(65), "root")
    reports = {r.name: r for r in an.theorem31_converse_cases(p)}
    assert reports["A4,6"].printed != reports["A4,6"].value


def test_classify_branch():
    p = draws.branch(draws.seeded(66), "1b")
    labels = an.classify_branch(p)
    assert "alpha7=alpha8=0, w2=w7=0" in labels and "w2=w7=0" in labels


# -- theorem 3.2 -----------------------------------------------------------------------


def test_theorem32_rejects_zero():
    with pytest.raises(ValueError):
        an.theorem32_check(draws.generic(draws.seeded(67)), 0)


def test_theorem32_sextic_pair():
    p = draws.generic(draws.seeded(68)).replace(omega={2: 1, 7: 0})
    reports = {r.name: r for r in an.theorem32_check(p, 1)}
    assert not reports["A6,6"].vanished
    assert reports["A6,6"].certified and reports["B6,6"].certified


def test_theorem32_a60_corrected_form():
    p = MotionParams(1, 1).replace(omega={13: Fraction(1, 2)}, b_prime={1: 1})
    named = {r.name: r for r in an.theorem32_check(p, 1)}
    a60 = named["A6,0"]
    assert a60.key == (6, 0, COS)
    assert a60.value != 0 and a60.certified
    gap = an.a02_gap(p)
    assert a60.value == -2 * gap**3


def test_sextic_pair_forces_w2_w7():
    rs = draws.seeded(69)
    for _ in range(200):
        p = draws.generic(rs)
        if rs.random() < 0.3:
            p = p.replace(omega={2: 0, 7: 0})
        assert an.sextic_pair_forces_w2_w7(p, Fraction(rs.choice([1, -1, 3]), rs.choice([1, 2])))


def test_residual_index_ranges():
    p = draws.generic(draws.seeded(70))
    res = an.curvature_ratio(p).residual(1)
    assert res.max_power <= 6 and res.max_freq <= 6
    assert res.coeff(6, 6, COS) != 0


# -- the worked example ------------------------------------------------------------------


def test_example_motion_derivative():
    chk = an.example_motion_check(1)
    assert chk.ok and chk.skew
    nonzero = {(i + 1, j + 1): v for i, row in enumerate(chk.derivative) for j, v in enumerate(row) if v}
    assert nonzero == {(4, 5): 1, (5, 4): -1, (5, 7): 1, (7, 5): -1, (6, 7): 1, (7, 6): -1}
    assert {k: v for k, v in chk.omega.items() if v} == {16: 1, 20: 1, 21: 1}


def test_example_not_orthogonal_away_from_zero():
    assert an.example_motion_check(1).orthogonality_defect > 1e-3


def test_example_other_mu():
    chk = an.example_motion_check(Fraction(-2, 3))
    assert chk.ok
    assert all(r.vanished for r in an.theorem31_forward(chk.params))


def test_example_mu_zero_rejected():
    with pytest.raises(ValueError):
        an.example_motion_check(0)


def test_report_serialization():
    p = draws.branch(draws.seeded(71), "root")
    d = an.theorem31_converse_cases(p, seed=71)[0].to_dict()
    assert d["seed"] == 71 and d["kind"] in ("cos", "sin") and isinstance(d["value"], str)
