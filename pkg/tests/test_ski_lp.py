from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from learnaug.enclosure import Interval, exp_enclosure
from learnaug.simplex import EQ, dump_lp, lp_feasible
from learnaug.ski_lp import (
    analytic_distribution,
    analytic_k,
    asymptotic_bound_enclosure,
    asymptotic_lower_bound,
    bisect_boundary,
    build_lp,
    consistency_row,
    extended_lp,
    feasibility,
    finite_b_bound_enclosure,
    is_feasible,
    power_chord_margin,
    min_consistency,
    robustness_row,
    verify_tightness,
)
from learnaug.ski_rental import expected_cost, rand_distribution, rand_worst_case

F = Fraction
mpmath.mp.dps = 50

B3_FIXTURE = """\
1/1 1/1 1/1 1/1 1/1 = 1/1
3/1 4/1 5/1 6/1 7/1 <= 9/2
3/1 1/1 1/1 1/1 1/1 <= 2/1
3/1 4/1 2/1 2/1 2/1 <= 4/1
"""


def test_b3_dump_fixture():
    assert dump_lp(build_lp(3, F(3, 2), 2)) == B3_FIXTURE


@pytest.mark.parametrize("B", [2, 3, 8, 20])
def test_lp_shape(B):
    lp = build_lp(B, F(3, 2), 2)
    assert lp.num_vars == 2 * B - 1
    assert len(lp.constraints) == B + 1
    prob_rows = [c for c in lp.constraints if c.relation == EQ]
    assert len(prob_rows) == 1 and all(a == 1 for a in prob_rows[0].coeffs)


def test_rows_are_expected_costs():
    # coefficient of p_i is the cost when buying on day i
    B, x = 6, 3
    row = robustness_row(B, x, 11, F(2))
    assert list(row.coeffs) == [6, 7, 8] + [3] * 8
    assert row.rhs == 6
    row = consistency_row(B, 13, F(5, 4))
    assert list(row.coeffs[:11]) == [B + i for i in range(11)] and list(row.coeffs[11:]) == [11, 11]
    assert row.rhs == F(15, 2)


@pytest.mark.parametrize(
    "B, beta, gamma",
    [(1, 2, 3), (5, F(1, 2), 3), (5, 3, 3), (5, 4, 3)],
)
def test_bad_parameters(B, beta, gamma):
    with pytest.raises(ValueError):
        build_lp(B, beta, gamma)


def _k_by_logs(B, gamma):
    return int(mpmath.ceil(mpmath.log(1 + 1 / (mpmath.mpf(gamma.numerator) / gamma.denominator - 1))
                           / mpmath.log(1 + mpmath.mpf(1) / (B - 1))))


@given(st.integers(min_value=2, max_value=200), st.fractions(min_value=F(11, 10), max_value=10, max_denominator=97))
@settings(max_examples=100)
def test_analytic_k_matches_log_formula(B, gamma):
    k = analytic_k(B, gamma)
    grow = F(B, B - 1)
    assert (gamma - 1) * (grow**k - 1) >= 1
    assert k == 1 or (gamma - 1) * (grow ** (k - 1) - 1) < 1
    assert k == _k_by_logs(B, gamma)


@given(st.integers(min_value=2, max_value=30), st.fractions(min_value=F(3, 2), max_value=5, max_denominator=30))
@settings(max_examples=60, deadline=None)
def test_analytic_distribution_structure(B, gamma):
    k = analytic_k(B, gamma)
    if k > B:
        with pytest.raises(ValueError):
            analytic_distribution(B, gamma)
        return
    dist = analytic_distribution(B, gamma)
    assert dist.support_end == k
    beta = min_consistency(B, gamma)
    if beta >= gamma:
        return
    lp = build_lp(B, beta, gamma)
    point = list(dist.probs) + [F(0)] * (lp.num_vars - k)
    rows = lp.constraints
    # consistency row is tight at the closed-form optimum
    assert rows[1].lhs(point) == rows[1].rhs
    # robustness rows x = 1 .. k-1 are tight, the rest hold
    for x in range(1, B):
        r = rows[1 + x]
        assert r.lhs(point) == r.rhs if x < k else r.lhs(point) <= r.rhs
    assert lp.satisfied_by(point)


@pytest.mark.parametrize("B", [4, 7, 12])
@pytest.mark.parametrize("gamma", [F(8, 5), F(2), F(3)])
def test_bisection_brackets_closed_form(B, gamma):
    lo, hi = bisect_boundary(B, gamma, 30)
    beta = min_consistency(B, gamma)
    assert lo < beta <= hi
    assert hi - lo == (gamma - 1) / 2**30
    assert is_feasible(B, beta, gamma)
    below = feasibility(B, beta - (gamma - 1) / 2**40, gamma)
    assert not below and below.certificate is not None


def test_verify_tightness_report():
    rep = verify_tightness(6, F(2), 20, inequality_points=11)
    assert rep.ok and rep.failures == ()
    assert rep.infeasible_below < rep.beta_min <= rep.feasible_at


def test_min_consistency_raises_when_robustness_unreachable():
    # below the classic e/(e-1) the support would need more than B days
    with pytest.raises(ValueError):
        min_consistency(10, F(3, 2))


@st.composite
def reduction_cases(draw):
    B = draw(st.integers(min_value=2, max_value=6))
    gamma = draw(st.fractions(min_value=F(8, 5), max_value=4, max_denominator=10))
    beta = draw(st.fractions(min_value=1, max_value=gamma, max_denominator=40).filter(lambda b: b < gamma))
    return B, beta, gamma


@given(reduction_cases())
@settings(max_examples=40, deadline=None)
def test_extra_rows_and_variables_do_not_change_feasibility(case):
    B, beta, gamma = case
    base = is_feasible(B, beta, gamma)
    assert lp_feasible(extended_lp(B, beta, gamma, robustness_upto=2 * B - 1)).feasible == base
    assert lp_feasible(extended_lp(B, beta, gamma, extra_vars=2)).feasible == base


@pytest.mark.parametrize("B", [2, 10, 100])
def test_technical_inequality(B):
    assert power_chord_margin(B, 0) == Interval.point(0)
    assert power_chord_margin(B, 1) == Interval.point(0)
    for j in range(1, 20):
        m = power_chord_margin(B, F(j, 20))
        assert m.lo > 0
        assert m.width < F(1, 10**12)


@given(st.fractions(min_value=F(21, 20), max_value=50, max_denominator=1000))
@settings(max_examples=50)
def test_asymptotic_enclosure_matches_mpmath(gamma):
    g = mpmath.mpf(gamma.numerator) / gamma.denominator
    ref = g * mpmath.log(1 + 1 / (g - 1))
    enc = asymptotic_bound_enclosure(gamma)
    assert mpmath.mpf(enc.lo.numerator) / enc.lo.denominator <= ref <= mpmath.mpf(enc.hi.numerator) / enc.hi.denominator
    lb = asymptotic_lower_bound(gamma)
    assert lb <= enc.hi and enc.lo - lb < F(1, 10**12)


def test_classic_point_is_a_fixed_point():
    # at robustness e/(e-1) the bound gives consistency e/(e-1) as well
    gamma = 1 / (1 - exp_enclosure(-1))
    enc = asymptotic_bound_enclosure(gamma)
    assert enc.overlaps(gamma)
    assert enc.width < F(1, 10**20)


@pytest.mark.parametrize("B", [5, 10, 20, 50])
@pytest.mark.parametrize("gamma", [F(8, 5), F(7, 4), F(2), F(3)])
def test_finite_b_bound_between(B, gamma):
    fb = finite_b_bound_enclosure(B, gamma)
    beta = min_consistency(B, gamma)
    assert fb.hi <= beta <= asymptotic_bound_enclosure(gamma).lo
    assert asymptotic_bound_enclosure(gamma).lo - fb.hi < F(1, B)


@pytest.mark.parametrize("B", [10, 20, 40])
@pytest.mark.parametrize("lam", [F(1, 4), F(1, 2), F(3, 4)])
def test_randomized_rule_respects_lp_optimum(B, lam):
    # the rule is a feasible LP point at its own robustness, so its cost at
    # y = x = 2B - 1 cannot beat the LP minimum
    gamma = rand_worst_case(B, lam).gamma
    y = 2 * B - 1
    achieved = expected_cost(rand_distribution(B, y, lam), B, y) / B
    assert achieved >= min_consistency(B, gamma)
