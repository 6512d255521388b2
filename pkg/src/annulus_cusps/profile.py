"""Exponent-level model of an annulus x = phi(t), y = psi(t) with Laurent
polynomials of orders (p, q) at t -> infinity and (-r, -s) at t -> 0."""

from __future__ import annotations

import math
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import Sequence

TYPE_PP = "(+,+)"
TYPE_MPPM = "(-+,+-)"
TYPE_MP = "(-,+)"
TYPE_MM = "(-,-)"
TYPES = (TYPE_PP, TYPE_MPPM, TYPE_MP, TYPE_MM)

N_POINTS = 4


class ProfileError(ValueError):
    pass


class BudgetError(ValueError):
    pass


@dataclass(frozen=True, order=True)
class AnnulusProfile:
    p: int
    q: int
    r: int
    s: int

    def __post_init__(self) -> None:
        if self.p <= 0 or self.s <= 0:
            raise ProfileError(f"need p > 0 and s > 0, got {self.key}")

    @property
    def key(self) -> tuple[int, int, int, int]:
        return (self.p, self.q, self.r, self.s)

    @property
    def p_gcd(self) -> int:
        """p' = gcd(p, q)"""
        return math.gcd(abs(self.p), abs(self.q))

    @property
    def r_gcd(self) -> int:
        """r' = gcd(r, s)"""
        return math.gcd(abs(self.r), abs(self.s))

    @property
    def det(self) -> int:
        return self.p * self.s - self.r * self.q

    @property
    def k_gap(self) -> int:
        return self.p - abs(self.r)

    @property
    def l_gap(self) -> int:
        return self.s - abs(self.q)

    def swapped(self) -> tuple[int, int, int, int]:
        """x <-> y"""
        return (self.q, self.p, self.s, self.r)

    def inverted(self) -> tuple[int, int, int, int]:
        """t -> 1/t"""
        return (self.r, self.s, self.p, self.q)

    def __str__(self) -> str:
        return "{},{},{},{}".format(*self.key)


def parse_profile(text: str) -> AnnulusProfile:
    parts = [s.strip() for s in text.split(",")]
    if len(parts) != 4:
        raise ProfileError(f"malformed profile {text!r}; expected 'p,q,r,s'")
    try:
        return AnnulusProfile(*(int(x) for x in parts))
    except ValueError as exc:
        if isinstance(exc, ProfileError):
            raise
        raise ProfileError(f"non-integer entry in {text!r}") from exc


# ---------------------------------------------------------------- classification


def direct_type(p: int, q: int, r: int, s: int) -> str | None:
    """Type of the exponents as written, first matching clause wins."""
    if 0 < p < q and 0 < r < s and p + r < q + s:
        return TYPE_PP
    if 0 < q < p and 0 < r < s and p + r <= q + s:
        return TYPE_MPPM
    if r < 0 and q > 0:
        return TYPE_MP
    if r < 0 and q < 0 and p + r <= q + s:
        return TYPE_MM
    return None


def orbit(prof: AnnulusProfile) -> list[tuple[int, int, int, int]]:
    """Images under x<->y, t->1/t and both that keep p, s > 0."""
    p, q, r, s = prof.key
    imgs = {(p, q, r, s), (q, p, s, r), (r, s, p, q), (s, r, q, p)}
    return sorted(t for t in imgs if t[0] > 0 and t[3] > 0)


def _direct_ugly(t: tuple[int, int, int, int], typ: str) -> bool:
    p, q, r, s = t
    if typ == TYPE_PP:
        return q % p == 0 and r < p
    if typ == TYPE_MPPM:
        return (p % q == 0 and s < q) or (s % r == 0 and p < r)
    if typ == TYPE_MP:
        return p % q == 0 and s < q
    return False


def canonical_form(prof: AnnulusProfile, prefer_handsome: bool = True) -> tuple[AnnulusProfile, str]:
    """Canonical orbit representative and its type.

    Classified members are ranked by (ugly?, type order, lexicographic key);
    with ``prefer_handsome`` a handsome member wins over an ugly one.
    """
    ranked = []
    for t in orbit(prof):
        typ = direct_type(*t)
        if typ is None:
            continue
        ugly = _direct_ugly(t, typ) if prefer_handsome else False
        ranked.append((ugly, TYPES.index(typ), t))
    if not ranked:
        raise ProfileError(f"profile {prof} fits no type even after the symmetries")
    ranked.sort()
    _, ti, t = ranked[0]
    return AnnulusProfile(*t), TYPES[ti]


def classify_type(prof: AnnulusProfile) -> str:
    typ = direct_type(*prof.key)
    if typ is not None:
        return typ
    return canonical_form(prof, prefer_handsome=False)[1]


def is_handsome(prof: AnnulusProfile) -> bool:
    typ = direct_type(*prof.key)
    if typ is None:
        canon, typ = canonical_form(prof, prefer_handsome=False)
        return not _direct_ugly(canon.key, typ)
    return not _direct_ugly(prof.key, typ)


def cost_free_moves(prof: AnnulusProfile) -> list[str]:
    """De Jonquieres moves that lower one order and raise none.

    ``y -> y - c x**k`` with q = k p can cancel the leading term at t -> oo;
    at t -> 0 it leaves s alone when x**k is no worse there (r <= 0 or
    k r <= s).  The other three are the same move at the other end or with
    x, y exchanged.
    """
    p, q, r, s = prof.key
    out = []
    if q > 0 and q % p == 0 and (r <= 0 or (q // p) * r <= s):
        out.append("y-x^k@oo")
    if q > 0 and p % q == 0 and (p // q) * s <= r:
        out.append("x-y^k@oo")
    if r > 0 and s % r == 0 and (q <= 0 or (s // r) * p <= q):
        out.append("y-x^k@0")
    if r > 0 and r % s == 0 and (q <= 0 or (r // s) * q <= p):
        out.append("x-y^k@0")
    return out


def is_reduced(prof: AnnulusProfile) -> bool:
    """Census normal form: every classified orientation of the orbit is
    handsome and no cost-free move applies."""
    for t in orbit(prof):
        typ = direct_type(*t)
        if typ is not None and _direct_ugly(t, typ):
            return False
    return not cost_free_moves(prof)


def normalize_to_handsome(prof: AnnulusProfile, max_moves: int = 1000) -> AnnulusProfile:
    """Reach a handsome profile by t -> 1/t (and x <-> y) or de Jonquieres moves.

    A move ``y -> y - x**k`` with q = k p lowers q by one and raises s to
    ``max(s, k r)`` when r > 0 (generic coefficients); the other moves are its
    images under the symmetries.
    """
    cur = prof
    for _ in range(max_moves):
        canon, typ = canonical_form(cur)
        if not _direct_ugly(canon.key, typ):
            return cur if direct_type(*cur.key) and is_handsome(cur) else canon
        p, q, r, s = canon.key
        if typ == TYPE_PP:
            k = q // p
            nxt = (p, q - 1, r, max(s, k * r))
        elif typ == TYPE_MPPM and p % q == 0 and s < q:
            k = p // q
            nxt = (p - 1, q, max(r, k * s), s)
        elif typ == TYPE_MPPM:
            k = s // r
            nxt = (p, max(q, k * p), r, s - 1)
        else:  # (-,+): x -> x - y**k makes the order at t -> 0 equal k s > 0
            k = p // q
            nxt = (p - 1, q, max(r, k * s), s)
        try:
            cur = AnnulusProfile(*nxt)
            canonical_form(cur)
        except ProfileError as exc:
            raise ProfileError(f"normalization of {prof} degenerates at {nxt}: {exc}") from exc
    raise ProfileError(f"normalization of {prof} did not terminate in {max_moves} moves")


# ---------------------------------------------------------------- global counts


def two_delta_max(prof: AnnulusProfile) -> int:
    p, q, r, s = prof.key
    return (p + r - 1) * (q + s - 1) + abs(prof.det) - prof.p_gcd - prof.r_gcd + 1


def det_prime(prof: AnnulusProfile) -> int:
    if prof.det == 0:
        raise ProfileError("det' is defined only when ps != rq")
    return abs(prof.det) - prof.p_gcd - prof.r_gcd + 1


def codim_bound(prof: AnnulusProfile, typ: str | None = None) -> int:
    """Upper bound on S = sum(ext nu_i + eta_i) + nu_inf for a handsome annulus
    whose complement is of general type."""
    p, q, r, s = prof.key
    typ = typ or classify_type(prof)
    if direct_type(p, q, r, s) != typ:
        raise ProfileError(f"{prof} is not written in its {typ} form")
    if typ == TYPE_PP:
        return p + r + q + s + 1 - min(q // p, s // r)
    if typ == TYPE_MPPM:
        return p + r + q + s + 1
    if typ == TYPE_MP:
        return p - abs(r) + q + s + 2 + (abs(r) - 1) // s - q // p
    return p - abs(r) - abs(q) + s + 3 + (abs(r) - 1) // s + (abs(q) - 1) // p


def eta_floor(ms: Sequence[int]) -> tuple[Fraction, bool]:
    """Sum of the per-point excess floors and whether the bound is strict."""
    total = Fraction(0)
    strict = False
    for m in ms:
        if m == 2:
            total += Fraction(5, 6)
        else:
            total += Fraction(1, 2)
            strict = True
    return total, strict


def eta_deduction(ms: Sequence[int], prof: AnnulusProfile | None = None,
                  n_points: int = N_POINTS) -> int:
    """Integer amount the excesses remove from the codimension bound.

    Sum eta > F (strict) caps the integer part by S - floor(F) - 1, and
    Sum eta >= F by S - ceil(F).
    """
    if len(ms) != n_points:
        raise BudgetError(f"expected {n_points} multiplicities, got {len(ms)}")
    total, strict = eta_floor(ms)
    if strict:
        return math.floor(total) + 1
    return math.ceil(total)


# ---------------------------------------------------------------- budgets


@dataclass(frozen=True)
class SingularityBudget:
    m: tuple[int, ...]
    extnu: tuple[int, ...]
    nu0: int = 0
    nu_inf: int = 0
    nu_tan: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "m", tuple(self.m))
        object.__setattr__(self, "extnu", tuple(self.extnu))
        if len(self.m) != len(self.extnu):
            raise BudgetError("m and extnu lengths differ")

    @property
    def nu_total(self) -> int:
        return self.nu0 + self.nu_inf + self.nu_tan

    def to_json(self) -> dict:
        return {"m": list(self.m), "extnu": list(self.extnu), "nu0": self.nu0,
                "nuInf": self.nu_inf, "nuTan": self.nu_tan}


def check_budget(prof: AnnulusProfile, b: SingularityBudget, *, relax_floor: bool = False,
                 enforce_cap: bool = True, n_points: int | None = N_POINTS) -> None:
    """Raise BudgetError naming the violated constraint."""
    if n_points is not None and len(b.m) != n_points:
        raise BudgetError(f"expected {n_points} finite points, got {len(b.m)}")
    for m, e in zip(b.m, b.extnu):
        if m < 2:
            raise BudgetError(f"multiplicity {m} < 2")
        floor = 1 if relax_floor else 2 * m - 3
        if e < floor:
            raise BudgetError(f"ext nu {e} below floor {floor} for m = {m}")
    if min(b.nu0, b.nu_inf, b.nu_tan) < 0:
        raise BudgetError("negative codimension at infinity")
    p, q, r, s = prof.key
    if sum(m - 1 for m in b.m) > min(p + r, q + s):
        raise BudgetError("multiplicity room: sum(m_i - 1) exceeds min(p+r, q+s)")
    if prof.det != 0 and b.nu_tan:
        raise BudgetError("nu_tan must vanish when ps != rq")
    if prof.p_gcd == 1 and b.nu_inf:
        raise BudgetError("nu_inf must vanish when p' = 1 (quasi-homogeneous)")
    if prof.r_gcd == 1 and b.nu0:
        raise BudgetError("nu_0 must vanish when r' = 1 (quasi-homogeneous)")
    if enforce_cap and b.m:
        cap = codim_bound(prof) - eta_deduction(b.m, prof, n_points=len(b.m))
        if sum(b.extnu) + b.nu_total > cap:
            raise BudgetError(
                f"codimension cap: {sum(b.extnu) + b.nu_total} > {cap}")


def point_capacity(m: int, extnu: int) -> int:
    """Upper bound for 2 delta at one finite cusp."""
    return m * (extnu - m + 2)


def hidden_capacity(prof: AnnulusProfile, b: SingularityBudget, *, check: bool = True,
                    **check_kw) -> int:
    """E: twice the number of double points the budget can hide."""
    if check:
        check_budget(prof, b, **check_kw)
    finite = sum(point_capacity(m, e) for m, e in zip(b.m, b.extnu))
    if prof.det != 0:
        return finite + prof.p_gcd * b.nu_inf + prof.r_gcd * b.nu0
    return finite + (prof.p_gcd + prof.r_gcd) * (b.nu_total + 1)


def reserve(prof: AnnulusProfile, b: SingularityBudget, **kw) -> int:
    return two_delta_max(prof) - hidden_capacity(prof, b, **kw)


# ---------------------------------------------------------------- summary record


@dataclass(frozen=True)
class ProfileInvariants:
    type_tag: str
    handsome: bool
    reduced: bool
    two_delta_max: int
    det_prime: int | None
    s_bound: int | None
    multiplicity_cap: int
    k_gap: int
    l_gap: int

    def to_json(self) -> dict:
        d = asdict(self)
        return {
            "typeTag": d["type_tag"], "handsome": d["handsome"], "reduced": d["reduced"],
            "twoDeltaMax": d["two_delta_max"], "detPrime": d["det_prime"],
            "sBound": d["s_bound"], "multiplicityCap": d["multiplicity_cap"],
            "kGap": d["k_gap"], "lGap": d["l_gap"],
        }


def profile_invariants(prof: AnnulusProfile) -> ProfileInvariants:
    typ = classify_type(prof)
    handsome = is_handsome(prof)
    direct = direct_type(*prof.key) == typ
    p, q, r, s = prof.key
    return ProfileInvariants(
        type_tag=typ,
        handsome=handsome,
        reduced=handsome and is_reduced(prof),
        two_delta_max=two_delta_max(prof),
        det_prime=det_prime(prof) if prof.det else None,
        s_bound=codim_bound(prof, typ) if handsome and direct else None,
        multiplicity_cap=min(p + r, q + s),
        k_gap=prof.k_gap,
        l_gap=prof.l_gap,
    )
