"""Census of annulus profiles: maximize the hidden capacity over admissible
singularity budgets and certify that the reserve stays positive."""

from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Iterator

import numpy as np

from .branch import SMOOTH, BranchPairContact, branch_intersection_index
from .profile import (
    N_POINTS,
    TYPE_PP,
    AnnulusProfile,
    ProfileError,
    SingularityBudget,
    canonical_form,
    codim_bound,
    direct_type,
    eta_deduction,
    hidden_capacity,
    is_handsome,
    is_reduced,
    orbit,
    point_capacity,
    two_delta_max,
)

log = logging.getLogger(__name__)

POSITIVE = "Positive"
BOUNDARY = "BoundaryExcluded"
VACUOUS = "VacuouslyExcluded"
COUNTEREXAMPLE = "Counterexample"


@dataclass(frozen=True)
class VerifierConfig:
    n_points: int = N_POINTS
    relax_extnu_floor: bool = False


# ------------------------------------------------------------------ enumeration


def is_feasible(prof: AnnulusProfile, n_points: int = N_POINTS) -> bool:
    p, q, r, s = prof.key
    return min(p + r, q + s) >= n_points


def enumerate_profiles(max_exp: int, n_points: int = N_POINTS,
                       rejected: dict[str, int] | None = None,
                       reduced_only: bool = True) -> Iterator[AnnulusProfile]:
    """Canonical handsome, reduced, feasible profiles in the box, lexicographic order.

    ``rejected`` (if given) collects counts of skipped tuples by reason.
    With ``reduced_only=False`` profiles admitting a cost-free move or an ugly
    orientation are kept (handsome in the canonical orientation suffices).
    """
    if max_exp < n_points:
        raise ValueError(f"max exponent must be >= {n_points}")
    rng = range(-max_exp, max_exp + 1)
    pos = range(1, max_exp + 1)

    def bump(reason: str) -> None:
        if rejected is not None:
            rejected[reason] = rejected.get(reason, 0) + 1

    for p, q, r, s in itertools.product(pos, rng, rng, pos):
        if min(p + r, q + s) < n_points:
            continue
        prof = AnnulusProfile(p, q, r, s)
        try:
            canon, typ = canonical_form(prof)
        except ProfileError:
            bump("unclassifiable")
            continue
        if canon.key != prof.key:
            continue  # another member of the orbit represents it
        if not is_handsome(canon):
            bump("ugly_orbit")
            continue
        if reduced_only and not is_reduced(canon):
            bump("reducible")
            continue
        yield canon


# ------------------------------------------------------------------ optimizer


@lru_cache(maxsize=None)
def _multiplicity_table(n_points: int, max_excess: int) -> np.ndarray:
    """All non-increasing (m_1, ..., m_N), m_i >= 2, sum(m_i - 1) <= max_excess,
    in descending lexicographic order."""
    rows = []

    def rec(prefix: list[int], budget: int, cap: int) -> None:
        if len(prefix) == n_points:
            rows.append(tuple(prefix))
            return
        left = n_points - len(prefix) - 1
        for m in range(min(cap, budget - left + 1), 1, -1):
            rec(prefix + [m], budget - (m - 1), m)

    rec([], max_excess, max_excess + 1)
    return np.array(rows, dtype=np.int64).reshape(-1, n_points)


@lru_cache(maxsize=None)
def _table_columns(n_points: int, max_excess: int, relax: bool):
    ms = _multiplicity_table(n_points, max_excess)
    floors = np.ones_like(ms) if relax else 2 * ms - 3
    base = (ms * (floors - ms + 2)).sum(axis=1)
    floor_sum = floors.sum(axis=1)
    ded = np.array([eta_deduction(tuple(row), n_points=n_points) for row in ms], dtype=np.int64)
    excess = (ms - 1).sum(axis=1)
    return ms, floors, base, floor_sum, ded, excess


def infinity_slot(prof: AnnulusProfile) -> tuple[str | None, int]:
    """Best codimension variable at infinity and its capacity coefficient."""
    pp, rp = prof.p_gcd, prof.r_gcd
    if prof.det == 0:
        return "nu_tan", pp + rp
    options = []
    if pp > 1:
        options.append((pp, 1, "nu_inf"))
    if rp > 1:
        options.append((rp, 0, "nu0"))
    if not options:
        return None, 0
    coef, _, name = max(options)
    return name, coef


class InfeasibleProfile(ValueError):
    pass


def max_hidden_capacity(prof: AnnulusProfile, config: VerifierConfig = VerifierConfig()
                        ) -> tuple[int, SingularityBudget]:
    """Exact maximum of the hidden capacity with its witness budget.

    For each multiplicity vector the objective is linear under one linear cap,
    so the whole slack goes to the variable with the largest coefficient; ties
    go to the codimension at infinity.
    """
    p, q, r, s = prof.key
    n = config.n_points
    max_excess = min(p + r, q + s)
    if max_excess < n:
        raise InfeasibleProfile(f"{prof}: sum(m_i - 1) <= {max_excess} leaves no room for {n} cusps")
    ms, floors, base, floor_sum, ded, excess = _table_columns(n, max_excess, config.relax_extnu_floor)
    s_bound = codim_bound(prof)
    slack = s_bound - ded - floor_sum
    ok = slack >= 0
    if not ok.any():
        raise InfeasibleProfile(f"{prof}: codimension cap below the floors for every multiplicity vector")
    slot, coef_inf = infinity_slot(prof)
    m1 = ms[:, 0]
    coef = np.maximum(m1, coef_inf) if slot else m1
    const = prof.p_gcd + prof.r_gcd if prof.det == 0 else 0
    value = np.where(ok, base + coef * np.where(ok, slack, 0) + const, np.iinfo(np.int64).min)
    i = int(np.argmax(value))
    extnu = [int(x) for x in floors[i]]
    nus = {"nu0": 0, "nu_inf": 0, "nu_tan": 0}
    b = int(slack[i])
    if slot is not None and coef_inf >= int(m1[i]):
        nus[slot] = b
    else:
        extnu[0] += b
    witness = SingularityBudget(tuple(int(x) for x in ms[i]), tuple(extnu), **nus)
    return int(value[i]), witness


def iter_budgets(prof: AnnulusProfile, config: VerifierConfig = VerifierConfig()
                 ) -> Iterator[SingularityBudget]:
    """Every admissible budget (multiplicities non-increasing)."""
    p, q, r, s = prof.key
    n = config.n_points
    max_excess = min(p + r, q + s)
    if max_excess < n:
        return
    ms_tab, floors_tab, _, floor_sum, ded, _ = _table_columns(n, max_excess, config.relax_extnu_floor)
    s_bound = codim_bound(prof)
    free_inf = []
    if prof.det == 0:
        free_inf.append("nu_tan")
    if prof.p_gcd > 1:
        free_inf.append("nu_inf")
    if prof.r_gcd > 1:
        free_inf.append("nu0")
    for row, fl, fs, d in zip(ms_tab, floors_tab, floor_sum, ded):
        slack = s_bound - int(d) - int(fs)
        if slack < 0:
            continue
        k = n + len(free_inf)
        for extra in _compositions_upto(slack, k):
            extnu = tuple(int(f) + e for f, e in zip(fl, extra[:n]))
            nus = dict(zip(free_inf, extra[n:]))
            yield SingularityBudget(tuple(int(m) for m in row), extnu, **nus)


def _compositions_upto(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 0:
        yield ()
        return
    for first in range(total + 1):
        for rest in _compositions_upto(total - first, parts - 1):
            yield (first,) + rest


# ------------------------------------------------------------------ boundary family


def is_boundary_family(prof: AnnulusProfile) -> bool:
    p, q, r, s = prof.key
    return direct_type(p, q, r, s) == TYPE_PP and prof.det == 0 and p + r == 4 and q + s == 6


def contact_order_at_infinity(p: int, q: int, nu_tan: int) -> Fraction:
    """Contact order, in the local coordinates u = x/y, w = 1/y, of the two
    branches at infinity whose expansions y = sum c_k x**((q - k)/p) share
    their first ``nu_tan`` terms."""
    a = Fraction(q - nu_tan, p)
    return (p * a - 2 * q) / (p - q)


def boundary_audit(prof: AnnulusProfile, config: VerifierConfig = VerifierConfig()) -> dict:
    """Arithmetic exclusion of the reserve-zero family.

    Every budget with reserve <= 0 is checked against the genus count of the
    projective closure: the finite cusps hide at most m(ext nu - m + 2)/2
    double points each, the point at infinity hides the intersection index of
    its two smooth branches, and a rational curve of degree d needs
    (d-1)(d-2)/2 in total.
    """
    p, q, r, s = prof.key
    smooth = (q - p == 1) and (s - r == 1)
    degree = max(p + r, q + s)
    required = (degree - 1) * (degree - 2) // 2
    two_dm = two_delta_max(prof)
    rows = []
    for b in iter_budgets(prof, config):
        res = two_dm - hidden_capacity(prof, b, check=False)
        if res > 0:
            continue
        finite = Fraction(sum(point_capacity(m, e) for m, e in zip(b.m, b.extnu)), 2)
        contact = BranchPairContact(SMOOTH, SMOOTH, contact_order_at_infinity(p, q, b.nu_tan))
        at_inf = branch_intersection_index(contact)
        rows.append({"budget": b, "reserve": res, "finite_delta": finite,
                     "delta_at_infinity": at_inf, "total": finite + at_inf})
    minimal = [row for row in rows if all(e == 2 * m - 3 for m, e in zip(row["budget"].m, row["budget"].extnu))]
    forced_tan = sorted({row["budget"].nu_tan for row in minimal})
    key = next((row for row in rows if row["budget"].nu_tan == 2 and row in minimal), None)
    passed = smooth and bool(rows) and all(row["total"] < required for row in rows)
    return {
        "applies": True,
        "smooth_branches_at_infinity": smooth,
        "degree": degree,
        "required_delta": required,
        "zero_reserve_budgets": len(rows),
        "nu_tan_forced_with_minimal_finite": forced_tan,
        "intersection_index": key["delta_at_infinity"] if key else None,
        "delta_sum_witness": _frac(key["total"]) if key else None,
        "max_delta_sum": _frac(max((row["total"] for row in rows), default=Fraction(0))),
        "passed": passed,
    }


# ------------------------------------------------------------------ certificates


def _frac(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


@dataclass
class Certificate:
    profile: AnnulusProfile
    type_tag: str
    handsome: bool
    two_delta_max: int
    s_bound: int | None
    eta_deduction: int | None
    max_capacity: int | None
    min_reserve: int | None
    witness: SingularityBudget | None
    symbolic_bound: Fraction | None
    verdict: str
    orbit_size: int = 1
    audit: dict | None = field(default=None)

    def to_json(self) -> dict:
        out = {
            "profile": list(self.profile.key),
            "type": self.type_tag,
            "handsome": self.handsome,
            "two_delta_max": self.two_delta_max,
            "s_bound": self.s_bound,
            "eta_deduction": self.eta_deduction,
            "max_capacity": self.max_capacity,
            "min_reserve": self.min_reserve,
            "witness": self.witness.to_json() if self.witness else None,
            "symbolic_bound": _frac(self.symbolic_bound) if self.symbolic_bound is not None else None,
            "verdict": self.verdict,
            "orbit_size": self.orbit_size,
        }
        if self.audit is not None:
            out["audit"] = self.audit
        return out


def verify_profile(prof: AnnulusProfile, config: VerifierConfig = VerifierConfig()) -> Certificate:
    from .chains import symbolic_case_bound

    canon, typ = canonical_form(prof)
    handsome = is_handsome(canon)
    two_dm = two_delta_max(canon)
    common = dict(profile=canon, type_tag=typ, handsome=handsome, two_delta_max=two_dm,
                  orbit_size=len(orbit(canon)))
    if not handsome:
        raise ProfileError(f"{canon} is ugly; normalize it first")
    s_bound = codim_bound(canon, typ)
    symbolic = symbolic_case_bound(canon) if config.n_points == N_POINTS else None
    try:
        cap, witness = max_hidden_capacity(canon, config)
    except InfeasibleProfile as exc:
        log.debug("vacuous: %s", exc)
        return Certificate(s_bound=s_bound, eta_deduction=None, max_capacity=None,
                           min_reserve=None, witness=None, symbolic_bound=symbolic,
                           verdict=VACUOUS, **common)
    reserve = two_dm - cap
    audit = None
    if reserve > 0:
        verdict = POSITIVE
    elif is_boundary_family(canon):
        audit = boundary_audit(canon, config)
        verdict = BOUNDARY if audit["passed"] else COUNTEREXAMPLE
    else:
        verdict = COUNTEREXAMPLE
    return Certificate(s_bound=s_bound, eta_deduction=eta_deduction(witness.m, canon, n_points=len(witness.m)),
                       max_capacity=cap, min_reserve=reserve, witness=witness,
                       symbolic_bound=symbolic, verdict=verdict, audit=audit, **common)


# ------------------------------------------------------------------ census


def _verify_key(args: tuple[tuple[int, int, int, int], VerifierConfig]) -> dict:
    key, config = args
    return verify_profile(AnnulusProfile(*key), config).to_json()


def _dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))


def run_census(max_exp: int, workers: int = 1, config: VerifierConfig = VerifierConfig(),
               stream_path: Path | None = None, resume: bool = False) -> dict:
    """Certify every enumerated profile; the result does not depend on ``workers``.

    With ``stream_path`` certificates are appended as JSON lines while they are
    produced; ``resume`` skips profiles already present there.
    """
    rejected: dict[str, int] = {}
    keys = [prof.key for prof in enumerate_profiles(max_exp, config.n_points, rejected)]
    done: dict[tuple, dict] = {}
    if resume and stream_path and stream_path.exists():
        for line in stream_path.read_text().splitlines():
            if line.strip():
                cert = json.loads(line)
                done[tuple(cert["profile"])] = cert
    todo = [k for k in keys if k not in done]
    sink = open(stream_path, "a") if stream_path else None
    try:
        jobs = [(k, config) for k in todo]
        if workers > 1 and len(jobs) > 1:
            import multiprocessing as mp

            with mp.get_context("spawn").Pool(workers) as pool:
                results = pool.imap(_verify_key, jobs, chunksize=64)
                for cert in results:
                    done[tuple(cert["profile"])] = cert
                    if sink:
                        sink.write(_dumps(cert) + "\n")
        else:
            for job in jobs:
                cert = _verify_key(job)
                done[tuple(cert["profile"])] = cert
                if sink:
                    sink.write(_dumps(cert) + "\n")
    finally:
        if sink:
            sink.close()
    certs = [done[k] for k in sorted(keys)]
    counts = {v: 0 for v in (POSITIVE, BOUNDARY, VACUOUS, COUNTEREXAMPLE)}
    for c in certs:
        counts[c["verdict"]] += 1
    summary = {
        "max_exponent": max_exp,
        "n_points": config.n_points,
        "relax_extnu_floor": config.relax_extnu_floor,
        "profiles": len(certs),
        "verdicts": counts,
        "rejected": dict(sorted(rejected.items())),
        "boundary_profiles": [c["profile"] for c in certs if c["verdict"] == BOUNDARY],
        "counterexamples": [c["profile"] for c in certs if c["verdict"] == COUNTEREXAMPLE],
        "status": "PASS" if counts[COUNTEREXAMPLE] == 0 else "FAIL",
    }
    return {"summary": summary, "certificates": certs}


def report_bytes(report: dict) -> bytes:
    return (json.dumps(report, sort_keys=True, indent=1) + "\n").encode()
