"""Closed-form lower bounds on the reserve, one chain per case of the
case analysis.  Each case has a "finite" chain (double points hidden at the
cusps) and an "infinite" chain (hidden at infinity); the weaker one is the
case bound.  Used only to cross-check the exact optimizer."""

from __future__ import annotations

from fractions import Fraction

from .profile import (
    TYPE_MM,
    TYPE_MP,
    TYPE_MPPM,
    TYPE_PP,
    AnnulusProfile,
    classify_type,
    det_prime,
    direct_type,
    two_delta_max,
)


def case_label(prof: AnnulusProfile) -> str:
    typ = direct_type(*prof.key) or classify_type(prof)
    if typ == TYPE_PP:
        return "A" if prof.det else "B"
    return {TYPE_MPPM: "C", TYPE_MP: "D", TYPE_MM: "E"}[typ]


def chain_a(prof: AnnulusProfile) -> dict[str, int]:
    p, q, r, s = prof.key
    a, b = p + r, q + s
    out = {"A1": a + b - 9}
    big = max(prof.p_gcd, prof.r_gcd)
    if big >= 2:
        out["A2"] = (a - 1 - big) * (b - 1 - big) - big * big + 5 * big - 8
    return out


def chain_b(prof: AnnulusProfile) -> dict[str, int]:
    p, q, r, s = prof.key
    e, f = p + r, q + s
    ep = prof.p_gcd + prof.r_gcd
    small = min(e, f) <= 5  # four cusps in little room: sum eta > 3
    if small:
        # one more unit comes off ext nu_1
        b1 = (e - 1) * (f - 1) - ep + 1 - ((e - 2) * (f - 3) + 6)
        b2 = (e - ep - 1) * (f - ep - 1) - 7 - ep * ep + 4 * ep
    else:
        b1 = e + f - ep - 8
        b2 = (e - ep - 1) * (f - ep - 1) - 7 - ep * ep + 3 * ep
    return {"B1": b1, "B2": b2}


def chain_c(prof: AnnulusProfile) -> dict[str, int]:
    p, q, r, s = prof.key
    dp = det_prime(prof)
    if q + s <= 5:
        c1 = p + r + q + s + dp - 9
    else:
        c1 = (q + s - 1) + dp - 6
    out = {"C1": c1}
    big = max(prof.p_gcd, prof.r_gcd)
    if big >= 2:
        out["C2"] = (p + r - 1 - big) * (q + s - 1 - big) - big * big + 4 * big - 8 + dp
    return out


def chain_d(prof: AnnulusProfile) -> dict[str, int]:
    p, q, r, s = prof.key
    ar = abs(r)
    fl = (ar - 1) // s
    pp, rp = prof.p_gcd, prof.r_gcd
    out = {}
    if min(p + r, q + s) >= 6:  # room for m_1 >= m_2 >= 3
        out["D1.i"] = 2 * (q + s) - pp - rp - 11 + p * s + ar * q - (p - ar - 3) * fl
    out["D1.ii"] = q + s - pp - rp - 6 + p * s + ar * q - (p - ar - 2) * fl
    big = max(pp, rp)
    if big >= 2:
        out["D2"] = ((p - ar - 1) * (q + s - 1) + p * s + ar * q - pp - rp - 7
                     - big * (p - ar + q + s + fl - 5))
    return out


def chain_e(prof: AnnulusProfile) -> dict[str, int]:
    p, q, r, s = prof.key
    ar, aq = abs(r), abs(q)
    k, l = p - ar, s - aq
    pp, rp = prof.p_gcd, prof.r_gcd
    fq = (aq - 1) // p
    fr = (ar - 1) // s
    out = {}
    if fq > 0:
        out["E1.i"] = k * l + k * (aq - 2) + l * (ar + 1) - (k - 2) * fq - pp - rp - 2
    else:
        out["E1.ii"] = k * l + k * (aq - 2) + l * (ar + 1) - (k - 2) * fr - pp - rp - 2
    big = max(pp, rp)
    if big >= 2:
        out["E2"] = two_delta_max(prof) - (big * (k + l - 4 + fq + fr) + 8)
    return out


_CHAINS = {"A": chain_a, "B": chain_b, "C": chain_c, "D": chain_d, "E": chain_e}


def case_bounds(prof: AnnulusProfile) -> dict[str, int]:
    return _CHAINS[case_label(prof)](prof)


def symbolic_case_bound(prof: AnnulusProfile) -> Fraction:
    """Weakest subcase bound of the profile's case."""
    return Fraction(min(case_bounds(prof).values()))
