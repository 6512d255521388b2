from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from annulus_cusps.oracle import (
    CoefficientCurve,
    DegenerateSample,
    check_genus_formula,
    count_double_points,
    double_point_polynomial,
    sample_curve,
)
from annulus_cusps.profile import AnnulusProfile, two_delta_max

P = AnnulusProfile


def test_sampling_is_reproducible():
    a = sample_curve(P(1, 2, 1, 2), 1)
    assert a == sample_curve(P(1, 2, 1, 2), 1)
    assert len(a.x_coeffs) == 2 and len(a.y_coeffs) == 4
    assert a.x_coeffs[-1] != 0 and a.y_coeffs[-1] != 0
    assert all(abs(c) <= 9 for c in a.x_coeffs + a.y_coeffs)


def test_distinct_seeds_rarely_collide():
    curves = {(c.x_coeffs, c.y_coeffs) for c in (sample_curve(P(2, 3, 2, 3), sd) for sd in range(100))}
    assert len(curves) == 100


def test_curve_validation():
    with pytest.raises(ValueError):
        CoefficientCurve(P(1, 2, 1, 2), (Fraction(1), Fraction(0)), (Fraction(1),) * 4)
    with pytest.raises(ValueError):
        CoefficientCurve(P(1, 2, 1, 2), (Fraction(1),), (Fraction(1),) * 4)


@pytest.mark.parametrize("key,count", [((1, 2, 1, 2), 1), ((1, 2, 1, 3), 2), ((2, 3, 2, 3), 7)])
def test_count_examples(key, count):
    assert count_double_points(sample_curve(P(*key), 0)) == count


def test_smooth_conic_like_curve_is_degenerate_or_zero():
    # x = t + 1/t, y = t^2 + 1/t^2 lies on y = x^2 - 2: the map is 2:1
    c = CoefficientCurve(P(1, 2, 1, 2), (Fraction(0), Fraction(1)),
                         (Fraction(0), Fraction(0), Fraction(0), Fraction(1)))
    with pytest.raises(DegenerateSample):
        double_point_polynomial(c)


@pytest.mark.parametrize("key", [(1, 2, 1, 2), (1, 2, 1, 3), (2, 3, 2, 3)])
def test_genus_formula_reports(key):
    rep = check_genus_formula(P(*key), trials=3, seed=7)
    assert rep.passed and rep.agreeing == 3
    doc = rep.to_json()
    assert doc["twoDeltaMax"] == two_delta_max(P(*key))
    # root degree audit: two roots per unordered pair
    assert all(t["rootDegree"] == doc["twoDeltaMax"] for t in doc["trials"])


@given(st.integers(0, 10_000), st.sampled_from([Fraction(2), Fraction(-1), Fraction(1, 3), Fraction(-3, 2)]))
@settings(max_examples=8)
def test_rescaling_invariance(seed, c):
    curve = sample_curve(P(1, 2, 1, 3), seed)
    try:
        n = count_double_points(curve)
    except DegenerateSample:
        return
    assert count_double_points(curve.rescaled(c)) == n


def test_size_cap():
    with pytest.raises(ValueError):
        check_genus_formula(P(9, 12, 9, 12), trials=1)
