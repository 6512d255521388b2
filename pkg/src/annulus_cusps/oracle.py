"""Coefficient-level double point counts for sampled Laurent curves.

A curve x = t**p + a_1 t**(p-1) + ... + a_{p+r} t**(-r),
y = t**q + b_1 t**(q-1) + ... + b_{q+s} t**(-s) has a double point for every
unordered pair t1 != t2 with equal images.  The pairs are found exactly:
divided differences of x and y are polynomials in (t1, t2), the resultant in
t2 leaves a polynomial in t1 whose roots are the parameters of double points,
each pair contributing two roots.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

import sympy as sp

from .profile import AnnulusProfile, two_delta_max

T1, T2 = sp.symbols("t1 t2")
COEFF_BOX = 9
DEGREE_CAP = 400


class DegenerateSample(ValueError):
    """The sample is not generic enough for the count; draw another one."""


@dataclass(frozen=True)
class CoefficientCurve:
    profile: AnnulusProfile
    x_coeffs: tuple[Fraction, ...]
    y_coeffs: tuple[Fraction, ...]
    seed: int | None = None

    def __post_init__(self) -> None:
        p, q, r, s = self.profile.key
        if len(self.x_coeffs) != p + r or len(self.y_coeffs) != q + s:
            raise ValueError("coefficient count does not match the profile")
        if self.x_coeffs[-1] == 0 or self.y_coeffs[-1] == 0:
            raise ValueError("a_{p+r} and b_{q+s} must be nonzero")

    def exponents(self) -> tuple[list[int], list[int]]:
        p, q, _, _ = self.profile.key
        return ([p - i for i in range(len(self.x_coeffs) + 1)],
                [q - i for i in range(len(self.y_coeffs) + 1)])

    def laurent(self, t):
        """(phi(t), psi(t)) as sympy expressions."""
        ex, ey = self.exponents()
        xs = [Fraction(1), *self.x_coeffs]
        ys = [Fraction(1), *self.y_coeffs]
        phi = sum(sp.Rational(c.numerator, c.denominator) * t**e for c, e in zip(xs, ex))
        psi = sum(sp.Rational(c.numerator, c.denominator) * t**e for c, e in zip(ys, ey))
        return phi, psi

    def rescaled(self, c: Fraction) -> CoefficientCurve:
        """Same image curve after t -> c t, renormalized to monic leading terms
        by scaling x and y (an affine change of coordinates)."""
        c = Fraction(c)
        if c == 0:
            raise ValueError("scale must be nonzero")
        p, q, _, _ = self.profile.key
        xs = tuple(a * c ** (-i) for i, a in enumerate(self.x_coeffs, start=1))
        ys = tuple(b * c ** (-i) for i, b in enumerate(self.y_coeffs, start=1))
        return CoefficientCurve(self.profile, xs, ys, self.seed)

    def to_json(self) -> dict:
        return {
            "profile": list(self.profile.key),
            "xCoeffs": [f"{a.numerator}/{a.denominator}" for a in self.x_coeffs],
            "yCoeffs": [f"{b.numerator}/{b.denominator}" for b in self.y_coeffs],
            "seed": self.seed,
        }


def sample_curve(prof: AnnulusProfile, seed: int) -> CoefficientCurve:
    rng = random.Random(seed)
    p, q, r, s = prof.key
    if p + r < 1 or q + s < 1:
        raise ValueError(f"profile {prof} leaves no room for coefficients")

    def draw(n: int) -> tuple[Fraction, ...]:
        vals = [rng.randint(-COEFF_BOX, COEFF_BOX) for _ in range(n)]
        while vals[-1] == 0:
            vals[-1] = rng.randint(-COEFF_BOX, COEFF_BOX)
        return tuple(Fraction(v) for v in vals)

    return CoefficientCurve(prof, draw(p + r), draw(q + s), seed)


def _divided_difference(f, shift: int) -> sp.Poly:
    """(f(t1) - f(t2)) t1**shift t2**shift / (t1 - t2) as a polynomial."""
    num = sp.expand((f.subs(T2, T1) - f) * T1**shift * T2**shift)
    quo, rem = sp.div(sp.Poly(num, T1, T2), sp.Poly(T1 - T2, T1, T2))
    if not rem.is_zero:
        raise AssertionError("divided difference left a remainder")
    return quo


def double_point_polynomial(c: CoefficientCurve) -> tuple[sp.Poly, int]:
    """Square-free polynomial in t1 whose roots are double point parameters,
    plus the degree of the raw resultant (before removing t1 = 0)."""
    p, q, r, s = c.profile.key
    phi, psi = c.laurent(T2)
    g = _divided_difference(phi, max(r, 0))
    h = _divided_difference(psi, max(s, 0))
    if sp.gcd(g, h).total_degree() > 0:
        raise DegenerateSample("divided differences share a component")
    res = sp.Poly(sp.resultant(g.as_expr(), h.as_expr(), T2), T1)
    if res.is_zero:
        raise DegenerateSample("resultant vanishes identically")
    raw_degree = res.degree()
    # roots at t1 = 0 come from clearing denominators, not from the curve
    while res.eval(0) == 0:
        res = sp.Poly(sp.cancel(res.as_expr() / T1), T1)
    if sp.gcd(res, res.diff(T1)).degree() > 0:
        raise DegenerateSample("double point parameters are not simple")
    # parameters where both derivatives vanish would be cusps on the diagonal
    dphi, dpsi = sp.diff(phi, T2), sp.diff(psi, T2)
    num_x = sp.Poly(sp.numer(sp.together(dphi.subs(T2, T1))), T1)
    num_y = sp.Poly(sp.numer(sp.together(dpsi.subs(T2, T1))), T1)
    if sp.gcd(sp.gcd(num_x, num_y), res).degree() > 0:
        raise DegenerateSample("a singular parameter meets the diagonal")
    return res, raw_degree


def count_double_points(c: CoefficientCurve) -> int:
    res, _ = double_point_polynomial(c)
    deg = res.degree()
    if deg % 2:
        raise DegenerateSample(f"odd number of double point parameters ({deg})")
    return deg // 2


@dataclass
class GenusReport:
    profile: AnnulusProfile
    formula: int
    counts: list[int | None]
    degrees: list[int | None]
    seeds: list[int]
    degenerate: int

    @property
    def agreeing(self) -> int:
        return sum(1 for n in self.counts if n is not None and 2 * n == self.formula)

    @property
    def valid(self) -> int:
        return sum(1 for n in self.counts if n is not None)

    @property
    def mismatches(self) -> list[dict]:
        return [{"seed": sd, "count": n} for sd, n in zip(self.seeds, self.counts)
                if n is not None and 2 * n != self.formula]

    @property
    def passed(self) -> bool:
        return self.valid > 0 and self.agreeing == self.valid

    def to_json(self) -> dict:
        return {
            "profile": list(self.profile.key),
            "twoDeltaMax": self.formula,
            "trials": [{"seed": sd, "count": n, "rootDegree": d}
                       for sd, n, d in zip(self.seeds, self.counts, self.degrees)],
            "agreement": f"{self.agreeing}/{self.valid}",
            "degenerateResamples": self.degenerate,
            "mismatches": self.mismatches,
            "passed": self.passed,
        }


def check_genus_formula(prof: AnnulusProfile, trials: int = 3, seed: int = 0,
                        max_resamples: int = 20) -> GenusReport:
    """Compare 2 * (double point count) with the genus formula on sampled curves.

    Each trial uses its own seed stream; degenerate samples are redrawn up to
    ``max_resamples`` times per trial.
    """
    p, q, r, s = prof.key
    if (p + r) * (q + s) * 2 > DEGREE_CAP:
        raise ValueError(f"profile {prof} is too large for the resultant oracle")
    formula = two_delta_max(prof)
    counts, degrees, seeds, degenerate = [], [], [], 0
    for i in range(trials):
        base = seed * 100_003 + i * 1_009
        for j in range(max_resamples):
            sd = base + j
            try:
                res, _ = double_point_polynomial(sample_curve(prof, sd))
            except DegenerateSample:
                degenerate += 1
                continue
            deg = res.degree()
            counts.append(deg // 2 if deg % 2 == 0 else None)
            degrees.append(deg)
            seeds.append(sd)
            break
        else:
            counts.append(None)
            degrees.append(None)
            seeds.append(base)
    if not any(n is not None for n in counts):
        raise DegenerateSample(f"all trials on {prof} were degenerate")
    return GenusReport(prof, formula, counts, degrees, seeds, degenerate)
