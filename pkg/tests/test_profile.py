from __future__ import annotations

from fractions import Fraction

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from annulus_cusps.profile import (
    TYPE_MM,
    TYPE_MP,
    TYPE_MPPM,
    TYPE_PP,
    AnnulusProfile,
    BudgetError,
    ProfileError,
    SingularityBudget,
    canonical_form,
    check_budget,
    classify_type,
    codim_bound,
    cost_free_moves,
    det_prime,
    direct_type,
    eta_deduction,
    eta_floor,
    hidden_capacity,
    is_handsome,
    is_reduced,
    normalize_to_handsome,
    orbit,
    parse_profile,
    profile_invariants,
    reserve,
    two_delta_max,
)

P = AnnulusProfile
BOUNDARY = P(2, 3, 2, 3)
BOUNDARY_BUDGET = SingularityBudget((2, 2, 2, 2), (1, 1, 1, 1), nu_tan=2)

exps = st.integers(-9, 9)


@st.composite
def classified(draw):
    p = draw(st.integers(1, 9))
    s = draw(st.integers(1, 9))
    prof = P(p, draw(exps), draw(exps), s)
    try:
        canonical_form(prof)
    except ProfileError:
        assume(False)
    return prof


def test_parse_profile():
    assert parse_profile("2, 3, 2, 3") == BOUNDARY
    for bad in ("1,2,3", "a,b,c,d", "0,1,1,1"):
        with pytest.raises(ProfileError):
            parse_profile(bad)


def test_positive_ends_required():
    with pytest.raises(ProfileError):
        P(0, 1, 1, 1)
    with pytest.raises(ProfileError):
        P(1, 1, 1, -1)


@pytest.mark.parametrize("key,typ", [
    ((2, 3, 2, 3), TYPE_PP),
    ((3, 2, 1, 2), TYPE_MPPM),
    ((2, 3, -1, 2), TYPE_MP),
    ((5, -1, -2, 3), TYPE_MM),
])
def test_classify(key, typ):
    assert classify_type(P(*key)) == typ


def test_unclassifiable():
    with pytest.raises(ProfileError):
        classify_type(P(2, 2, 2, 2))


@given(classified())
def test_types_exclusive_and_canonical(prof):
    canon, typ = canonical_form(prof)
    assert direct_type(*canon.key) == typ
    assert canon.key in orbit(prof)
    # canonical form is a class function on the orbit
    for t in orbit(prof):
        try:
            assert canonical_form(P(*t)) == (canon, typ)
        except ProfileError:
            pass


@pytest.mark.parametrize("key,handsome", [
    ((2, 4, 1, 3), False),
    ((2, 3, 2, 3), True),
    ((4, 2, 1, 3), True),
])
def test_handsome_examples(key, handsome):
    assert is_handsome(P(*key)) is handsome


def test_normalize_examples():
    assert normalize_to_handsome(BOUNDARY) == BOUNDARY
    out = normalize_to_handsome(P(2, 4, 1, 3))
    assert is_handsome(out)
    assert out.q <= 3


@pytest.mark.parametrize("k", range(2, 9))
def test_normalize_line_like(k):
    for r in range(1, 5):
        for s in range(r + 1, 9):
            prof = P(1, k, r, s)
            try:
                canonical_form(prof)
            except ProfileError:
                continue
            try:
                out = normalize_to_handsome(prof)
            except ProfileError:
                continue  # degenerates: rejected, not looped
            assert is_handsome(out)


@given(classified())
def test_normalize_idempotent(prof):
    try:
        out = normalize_to_handsome(prof)
    except ProfileError:
        assume(False)
    assert is_handsome(out)
    assert normalize_to_handsome(out) == out


def test_cost_free_moves():
    # y - x^2 at infinity leaves s = 2 r untouched
    assert cost_free_moves(P(2, 4, 2, 4)) == ["y-x^k@oo", "y-x^k@0"]
    assert cost_free_moves(P(5, 10, -1, 1)) == ["y-x^k@oo"]
    assert cost_free_moves(BOUNDARY) == []
    assert not is_reduced(P(2, 4, 2, 4))
    # ugly after t -> 1/t
    assert is_handsome(P(2, 3, 6, 12)) and not is_reduced(P(2, 3, 6, 12))
    assert is_reduced(BOUNDARY)


@pytest.mark.parametrize("key,val", [((2, 3, 2, 3), 14), ((1, 2, 1, 3), 4), ((1, 2, 1, 2), 2)])
def test_two_delta_max(key, val):
    assert two_delta_max(P(*key)) == val


@given(classified())
def test_two_delta_max_symmetric(prof):
    for t in orbit(prof):
        assert two_delta_max(P(*t)) == two_delta_max(prof)


@pytest.mark.parametrize("key,val", [((1, 2, 1, 3), 0), ((2, 5, 1, 3), 0), ((3, 2, 1, 2), 3)])
def test_det_prime(key, val):
    assert det_prime(P(*key)) == val


def test_det_prime_needs_nonzero_det():
    with pytest.raises(ProfileError):
        det_prime(BOUNDARY)


@given(classified())
def test_det_prime_lower_bounds(prof):
    canon, typ = canonical_form(prof)
    assume(canon.det != 0)
    assert det_prime(canon) >= 0
    if typ == TYPE_MPPM:
        assert det_prime(canon) >= canon.p_gcd * canon.r_gcd + 1


@pytest.mark.parametrize("key,val", [((2, 3, 2, 3), 10), ((3, 2, 1, 2), 9), ((5, 7, -2, 3), 14)])
def test_codim_bound(key, val):
    assert codim_bound(P(*key)) == val


def test_codim_bound_needs_direct_form():
    with pytest.raises(ProfileError):
        codim_bound(P(2, 3, 2, 3), TYPE_MPPM)


@pytest.mark.parametrize("ms,val", [((3, 3, 3, 3), 3), ((2, 2, 2, 2), 4), ((2, 2, 2, 3), 4)])
def test_eta_deduction(ms, val):
    assert eta_deduction(ms) == val


def test_eta_floor_values():
    assert eta_floor((2, 2, 2, 2)) == (Fraction(10, 3), False)
    assert eta_floor((2, 2, 2, 3)) == (Fraction(3), True)
    with pytest.raises(BudgetError):
        eta_deduction((2, 2, 2))


def test_boundary_budget():
    assert hidden_capacity(BOUNDARY, BOUNDARY_BUDGET) == 14
    assert reserve(BOUNDARY, BOUNDARY_BUDGET) == 0


def test_forced_zero_at_infinity():
    prof = P(1, 3, 3, 4)
    b = SingularityBudget((2, 2, 2, 2), (4, 1, 1, 1))
    assert hidden_capacity(prof, b) == sum(2 * e for e in b.extnu)
    assert reserve(prof, b) == 8
    for bad in (SingularityBudget((2, 2, 2, 2), (1, 1, 1, 1), nu_inf=1),
                SingularityBudget((2, 2, 2, 2), (1, 1, 1, 1), nu0=1),
                SingularityBudget((2, 2, 2, 2), (1, 1, 1, 1), nu_tan=1)):
        with pytest.raises(BudgetError):
            check_budget(prof, bad)


def test_empty_budget():
    b = SingularityBudget((), ())
    assert hidden_capacity(BOUNDARY, b, n_points=None) == 2  # (p'+r')(0+1)
    assert reserve(P(1, 3, 3, 4), b, n_points=None) == two_delta_max(P(1, 3, 3, 4))


def test_budget_violations_name_the_rule():
    with pytest.raises(BudgetError, match="floor"):
        check_budget(BOUNDARY, SingularityBudget((3, 2, 2, 2), (2, 1, 1, 1)))
    with pytest.raises(BudgetError, match="multiplicity room"):
        check_budget(BOUNDARY, SingularityBudget((3, 3, 2, 2), (3, 3, 1, 1)))
    with pytest.raises(BudgetError, match="cap"):
        check_budget(BOUNDARY, SingularityBudget((2, 2, 2, 2), (4, 1, 1, 1)))


@given(st.sampled_from([BOUNDARY, P(4, 6, 2, 8)]), st.integers(0, 3), st.integers(0, 3),
       st.sampled_from(["nu0", "nu_inf", "nu_tan"]))
def test_capacity_monotone(prof, i, bump, key):
    # the formula itself, on both lines (ps = rq and ps != rq)
    base = SingularityBudget((2, 2, 2, 2), (1, 1, 1, 1))
    ext = list(base.extnu)
    ext[i] += bump
    before = hidden_capacity(prof, base, check=False)
    assert hidden_capacity(prof, SingularityBudget(base.m, tuple(ext)), check=False) >= before
    bumped = SingularityBudget(base.m, base.extnu, **{key: bump})
    assert hidden_capacity(prof, bumped, check=False) >= before


def test_profile_invariants_json():
    doc = profile_invariants(BOUNDARY).to_json()
    assert doc["typeTag"] == TYPE_PP
    assert doc["twoDeltaMax"] == 14 and doc["sBound"] == 10
    assert doc["detPrime"] is None
    assert doc["multiplicityCap"] == 4
    e = profile_invariants(P(5, -1, -2, 3))
    assert (e.k_gap, e.l_gap) == (3, 2)
