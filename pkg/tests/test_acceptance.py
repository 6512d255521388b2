"""Acceptance gate: one test per criterion, each recording a PASS/FAIL line
that the terminal summary prints (see conftest.py)."""

from __future__ import annotations

import time
from fractions import Fraction

import pytest

from annulus_cusps.branch import (
    BranchTopology,
    delta_invariant,
    excess_floor,
    external_codimension,
    y_codimension,
)
from annulus_cusps.chains import symbolic_case_bound
from annulus_cusps.lattice import excess, resolve_branch, rough_m_number
from annulus_cusps.oracle import check_genus_formula
from annulus_cusps.profile import TYPE_MPPM, AnnulusProfile, canonical_form, det_prime, two_delta_max
from annulus_cusps.verifier import (
    BOUNDARY,
    COUNTEREXAMPLE,
    enumerate_profiles,
    max_hidden_capacity,
    report_bytes,
    run_census,
)

from corpus import CORPUS, SINGLE_PAIRS
from oracles import delta_by_gaps, exhaustive_max_capacity

RESULTS: dict[int, str] = {}


def record(n: int, ok: bool, detail: str) -> None:
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    print(RESULTS[n])


@pytest.fixture(scope="module")
def census20():
    t0 = time.perf_counter()
    rep = run_census(20, workers=1)
    return rep, time.perf_counter() - t0


def test_criterion_1_m_number_equals_external_codimension():
    t0 = time.perf_counter()
    bad = [str(t) for t in CORPUS if rough_m_number(resolve_branch(t)) != external_codimension(t)]
    dt = time.perf_counter() - t0
    ok = not bad and dt < 10
    record(1, ok, f"{len(CORPUS)} topologies, {len(bad)} mismatches, {dt:.2f}s (< 10s)")
    assert not bad, bad
    assert dt < 10


def test_criterion_2_stratum_values():
    m2 = all(y_codimension(BranchTopology(((2, 2 * k + 1),))) == k for k in range(1, 21))
    m4 = [y_codimension(BranchTopology(p)) for p in
          (((4, 5),), ((2, 3), (2, 11)), ((2, 5), (2, 11)))]
    ok = m2 and m4 == [3, 6, 7]
    record(2, ok, f"m=2 family exact: {m2}; m=4 strata nu = {m4} (expected [3, 6, 7])")
    assert ok


def test_criterion_3_excess_suite():
    cusp = excess(resolve_branch(BranchTopology(((2, 3),))))
    failures = []
    for t in CORPUS:
        eta = excess(resolve_branch(t))
        m, n = t.pairs[0]
        if eta < excess_floor(m, n) or eta <= Fraction(1, 2):
            failures.append(str(t))
        if t.multiplicity == 2 and eta < Fraction(5, 6):
            failures.append(str(t))
    ok = cusp == Fraction(5, 6) and not failures
    record(3, ok, f"eta(2,3) = {cusp}; floor, > 1/2 and m=2 bounds on {len(CORPUS)} topologies, "
                  f"{len(failures)} failures")
    assert cusp == Fraction(5, 6)
    assert not failures, failures


def test_criterion_4_delta_suite():
    a_rule = all(delta_invariant(BranchTopology(((2, 2 * k + 1),))) == k for k in range(1, 11))
    gaps = [str(t) for t in SINGLE_PAIRS if delta_invariant(t) != delta_by_gaps(list(t.pairs))]
    bound = [str(t) for t in CORPUS
             if 2 * delta_invariant(t) > t.multiplicity * (external_codimension(t) - t.multiplicity + 2)]
    ok = a_rule and not gaps and not bound
    record(4, ok, f"A_mu rule k<=10: {a_rule}; gap oracle mismatches {len(gaps)}/{len(SINGLE_PAIRS)}; "
                  f"delta bound violations {len(bound)}")
    assert ok, (gaps, bound)


ORACLE_PROFILES = [(1, 2, 1, 2), (1, 2, 1, 3), (2, 3, 2, 3), (1, 3, 1, 2), (2, 3, 1, 4)]


def test_criterion_5_genus_formula():
    t0 = time.perf_counter()
    base = two_delta_max(AnnulusProfile(2, 3, 2, 3))
    lines, ok = [], base == 14
    for key in ORACLE_PROFILES:
        rep = check_genus_formula(AnnulusProfile(*key), trials=3, seed=0)
        good = rep.valid >= 3 and rep.agreeing == rep.valid
        ok &= good
        lines.append(f"{key}:{rep.agreeing}/{rep.valid}")
    dt = time.perf_counter() - t0
    ok &= dt < 120
    record(5, ok, f"2delta_max(2,3,2,3) = {base}; oracle " + " ".join(lines) + f"; {dt:.1f}s (< 120s)")
    assert ok


def test_criterion_6_det_prime():
    neg, weak, checked = [], [], 0
    # every handsome profile, including those the census reduces further
    for prof in enumerate_profiles(20, reduced_only=False):
        if prof.det == 0:
            continue
        checked += 1
        d = det_prime(prof)
        if d < 0:
            neg.append(prof.key)
        if canonical_form(prof)[1] == TYPE_MPPM and d < prof.p_gcd * prof.r_gcd + 1:
            weak.append(prof.key)
    ok = not neg and not weak
    record(6, ok, f"{checked} profiles with ps != rq (handsome, maxExp 20); det' < 0: {len(neg)}; "
                  f"(-+,+-) below p'r'+1: {len(weak)}")
    assert ok, (neg[:5], weak[:5])


def test_criterion_7_main_census(census20):
    rep, dt = census20
    s = rep["summary"]
    boundary = [c for c in rep["certificates"] if c["verdict"] == BOUNDARY]
    audit = boundary[0]["audit"] if boundary else {}
    ok = (s["verdicts"][COUNTEREXAMPLE] == 0
          and s["boundary_profiles"] == [[2, 3, 2, 3]]
          and audit.get("intersection_index") == 5
          and audit.get("nu_tan_forced_with_minimal_finite") == [2]
          and audit.get("delta_sum_witness") == "9/1"
          and audit.get("required_delta") == 10
          and dt < 600)
    record(7, ok, f"{s['profiles']} profiles, {s['verdicts'][COUNTEREXAMPLE]} counterexamples, "
                  f"boundary {s['boundary_profiles']}, I = {audit.get('intersection_index')}, "
                  f"nu_tan = {audit.get('nu_tan_forced_with_minimal_finite')}, "
                  f"{audit.get('delta_sum_witness')} < {audit.get('required_delta')}; {dt:.1f}s (< 600s)")
    assert ok, s["counterexamples"][:10]


def test_criterion_8_soundness_and_greedy():
    t0 = time.perf_counter()
    unsound, n12 = [], 0
    for prof in enumerate_profiles(12, reduced_only=False):
        n12 += 1
        cap, _ = max_hidden_capacity(prof)
        if symbolic_case_bound(prof) > two_delta_max(prof) - cap:
            unsound.append(prof.key)
    greedy_bad, n8 = [], 0
    for prof in enumerate_profiles(8, reduced_only=False):
        n8 += 1
        if max_hidden_capacity(prof)[0] != exhaustive_max_capacity(prof):
            greedy_bad.append(prof.key)
    dt = time.perf_counter() - t0
    ok = not unsound and not greedy_bad and dt < 300
    record(8, ok, f"symbolic <= exact on {n12} profiles (handsome, maxExp 12), {len(unsound)} violations; "
                  f"greedy = exhaustive on {n8} profiles (handsome, maxExp 8), {len(greedy_bad)} mismatches; "
                  f"{dt:.1f}s (< 300s)")
    assert ok, (unsound[:5], greedy_bad[:5])


def test_criterion_9_determinism(census20):
    rep, _ = census20
    other = run_census(20, workers=2)
    same = report_bytes(rep) == report_bytes(other)
    record(9, same, f"maxExp 20 report, workers 1 vs 2: byte-identical = {same}")
    assert same
