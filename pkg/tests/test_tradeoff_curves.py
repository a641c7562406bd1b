import xml.etree.ElementTree as ET
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from learnaug.core import TradeoffPoint
from learnaug.ski_lp import asymptotic_bound_enclosure
from learnaug.tradeoff_curves import (
    CSV_HEADER,
    LOWER,
    MEASURED,
    UPPER,
    CurveRow,
    CurveSeries,
    decimal_string,
    dominance_violations,
    emit,
    family_of,
    prior_two_job_point,
    read_csv,
    rows_of,
    sched_curves,
    ski_curves,
)

F = Fraction
LAMS = [F(k, 10) for k in range(1, 10)]


@pytest.fixture(scope="module")
def ski():
    return ski_curves(100, LAMS)


@pytest.fixture(scope="module")
def sched2():
    return sched_curves(2, [F(k, 30) for k in range(1, 10)], step=F(1, 5), cap=2)


def test_ski_series_layout(ski):
    assert [s.name for s in ski] == ["ski-det", "ski-rand", "ski-rand-lower", "ski-rand-measured"]
    assert [s.kind for s in ski] == [UPPER, UPPER, LOWER, MEASURED]
    det = ski[0]
    assert det.points[4] == TradeoffPoint(F(1, 2), F(3, 2), F(3))


def test_ski_dominance(ski):
    assert dominance_violations(rows_of(ski)) == []


def test_ski_lower_curve_sits_under_randomized_guarantee(ski):
    upper, lower = ski[1], ski[2]
    for u, lo in zip(upper.points, lower.points):
        assert lo.gamma <= u.gamma and lo.beta <= u.beta
        # the bound at the guarantee's own robustness is lower still
        assert asymptotic_bound_enclosure(u.gamma).hi <= u.beta


def test_sched2_dominance_and_prior_is_worse(sched2):
    names = [s.name for s in sched2]
    assert names == ["sched2", "sched2-lower", "sched2-prior", "sched2-measured"]
    assert dominance_violations(rows_of(sched2)) == []
    tight, lower, prior = sched2[0], sched2[1], sched2[2]
    for t, lo, p in zip(tight.points, lower.points, prior.points):
        assert t.gamma == lo.gamma
        assert p.beta == t.beta and p.gamma > t.gamma


def test_prior_point_formula():
    # m = 1/(1+2 lam): consistency (1+m)/(2m) = 1 + lam
    p = prior_two_job_point(F(1, 4))
    assert p.beta == F(5, 4) and p.gamma == 4 / (3 - 3 * F(2, 3))


def test_sched2_curve_limits():
    s = sched_curves(2, [F(1, 10**6), F(1, 3) - F(1, 10**6)], step=F(1, 2), cap=1)
    near0, near13 = s[0].points
    assert abs(near0.beta - 1) < F(1, 10**5) and abs(near0.gamma - 2) < F(1, 10**4)
    assert abs(near13.beta - F(4, 3)) < F(1, 10**5) and abs(near13.gamma - F(4, 3)) < F(1, 10**4)


def test_rand_robustness_approaches_classic_optimum():
    # e/(e-1) = 1.58197...; at B = 100, lam = 99/100 the shift lam - 1/B costs about 0.022
    top = ski_curves(100, [F(99, 100)])[1].points[0]
    assert F(158197670686933, 10**14) < top.gamma < F(161, 100)


def test_sched_n_lower_only():
    s = sched_curves(4, [0, F(1, 5), F(3, 5)])
    assert [x.name for x in s] == ["sched4-lower"]
    assert s[0].points[0].gamma == 4 and s[0].points[-1].gamma == F(8, 5)


def test_parameter_checks():
    with pytest.raises(ValueError):
        ski_curves(10, [F(1, 20)])
    with pytest.raises(ValueError):
        sched_curves(2, [F(1, 2)])
    with pytest.raises(ValueError):
        CurveSeries("x", (TradeoffPoint(F(1, 2), 1, 2), TradeoffPoint(F(1, 4), 1, 2)), UPPER)
    with pytest.raises(ValueError):
        CurveSeries("x", (), "sideways")


def test_family_of():
    assert family_of("ski-rand-lower") == "ski-rand"
    assert family_of("sched2-measured") == "sched2"
    assert family_of("ski-det") == "ski-det"


def test_dominance_detects_violation():
    rows = [
        CurveRow("a", F(1, 2), F(3, 2), F(3), UPPER),
        CurveRow("a-lower", F(1, 2), F(2), F(3), LOWER),
        CurveRow("b-lower", F(1, 2), F(9), F(9), LOWER),
    ]
    assert len(dominance_violations(rows)) == 1


@given(st.fractions(min_value=-1000, max_value=1000))
def test_decimal_string_is_12_significant_digits(q):
    text = decimal_string(q)
    digits = text.replace("-", "").replace(".", "").lstrip("0")
    assert len(digits) <= 12
    if q:
        assert abs(F(text) - q) <= abs(q) * F(1, 10**11)


def test_csv_round_trip_is_lossless(tmp_path, ski, sched2):
    path = tmp_path / "curves.csv"
    series = ski + sched2
    emit(series, path)
    text = path.read_text().splitlines()
    assert text[0] == ",".join(CSV_HEADER)
    assert text[1] == "ski-det,0.1,1.1,11,upper-bound,11/10,11/1"
    back = read_csv(path)
    src = rows_of(series)
    assert [(r.series, r.beta, r.gamma, r.kind) for r in back] == [(r.series, r.beta, r.gamma, r.kind) for r in src]
    # lambda has no exact column; its decimal is within 12 significant digits
    assert all(abs(a.lam - b.lam) <= b.lam * F(1, 10**11) for a, b in zip(back, src))


def test_svg_is_well_formed(tmp_path, ski):
    svg = tmp_path / "c.svg"
    emit(ski, tmp_path / "c.csv", svg)
    root = ET.parse(svg).getroot()
    assert root.tag.endswith("svg")
    text = svg.read_text()
    assert "consistency" in text and "robustness" in text and "ski-rand-lower" in text


def test_emit_errors(tmp_path):
    with pytest.raises(ValueError):
        emit([], tmp_path / "x.csv")
    with pytest.raises(OSError, match="nope"):
        emit(ski_curves(10, [F(1, 2)]), tmp_path / "nope" / "x.csv")


def test_read_csv_rejects_foreign_header(tmp_path):
    p = tmp_path / "bad.csv"
    p.write_text("a,b\n")
    with pytest.raises(ValueError):
        read_csv(p)
