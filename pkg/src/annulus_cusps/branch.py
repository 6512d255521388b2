"""Topology of plane curve branches given by their characteristic pairs.

A branch is encoded by the pairs ``(m_j, n_j)`` of its topologically
arranged Puiseux expansion: the j-th characteristic term is
``x**(n_j / (m_1 * ... * m_j))``.  With ``x = tau**m`` the same term sits at
tau-index ``e_j = n_j * m / D_j`` where ``D_j = m_1 * ... * m_j``.  Only the
vanishing pattern of the coefficients matters here, so coefficients are never
stored.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence


class TopologyError(ValueError):
    """Raised when a pair sequence is not a valid characteristic sequence."""


@dataclass(frozen=True)
class BranchTopology:
    pairs: tuple[tuple[int, int], ...]
    leading_exponent: int | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "pairs", tuple((int(a), int(b)) for a, b in self.pairs))

    @property
    def genus(self) -> int:
        """Number of characteristic pairs (0 for a smooth branch)."""
        return len(self.pairs)

    @property
    def multiplicity(self) -> int:
        return math.prod(m for m, _ in self.pairs)

    @property
    def is_smooth(self) -> bool:
        return not self.pairs

    def partial_products(self) -> list[int]:
        """D_0 = 1, D_1, ..., D_g."""
        out = [1]
        for m, _ in self.pairs:
            out.append(out[-1] * m)
        return out

    def tau_indices(self) -> list[int]:
        """tau-indices e_1..e_g of the characteristic terms (x = tau**m)."""
        m = self.multiplicity
        dj = self.partial_products()
        return [n * (m // dj[j + 1]) for j, (_, n) in enumerate(self.pairs)]

    def characteristic_exponents(self) -> list[Fraction]:
        """Exponents in x of the characteristic terms."""
        m = self.multiplicity
        return [Fraction(e, m) for e in self.tau_indices()]

    def to_json(self) -> list[list[int]]:
        return [[m, n] for m, n in self.pairs]

    def __str__(self) -> str:
        return ";".join(f"{m},{n}" for m, n in self.pairs) or "smooth"


SMOOTH = BranchTopology(())


def parse_pairs(text: str) -> BranchTopology:
    """Parse ``"m1,n1;m2,n2;..."``; the empty string or ``smooth`` gives a smooth branch."""
    text = text.strip()
    if text in ("", "smooth"):
        return SMOOTH
    pairs = []
    for chunk in text.split(";"):
        parts = [s.strip() for s in chunk.split(",")]
        if len(parts) != 2:
            raise TopologyError(f"malformed pair {chunk!r}; expected 'm,n'")
        try:
            pairs.append((int(parts[0]), int(parts[1])))
        except ValueError as exc:
            raise TopologyError(f"non-integer entry in pair {chunk!r}") from exc
    return BranchTopology(tuple(pairs))


def validate(topology: BranchTopology) -> BranchTopology:
    pairs = topology.pairs
    for j, (m, n) in enumerate(pairs):
        if m < 2:
            raise TopologyError(f"pair {j + 1}: m_j = {m} < 2")
        if n < 1:
            raise TopologyError(f"pair {j + 1}: n_j = {n} < 1")
        if math.gcd(m, n) != 1:
            raise TopologyError(f"pair {j + 1}: gcd({m}, {n}) != 1")
    if pairs and pairs[0][1] <= pairs[0][0]:
        # x = tau**m must be the multiplicity direction: ord y > ord x
        raise TopologyError(f"first pair {pairs[0]}: need n_1 > m_1")
    for j in range(1, len(pairs)):
        prev_n = pairs[j - 1][1]
        m, n = pairs[j]
        if n <= prev_n * m:
            raise TopologyError(
                f"pair {j + 1}: exponents must increase, need {n} > {prev_n}*{m}")
    if topology.leading_exponent is not None:
        n0 = topology.leading_exponent
        if n0 < 1 or (pairs and Fraction(n0) >= Fraction(pairs[0][1], pairs[0][0])):
            raise TopologyError(f"leading exponent {n0} must precede the first pair")
    return topology


def _require_singular(topology: BranchTopology) -> None:
    validate(topology)
    if topology.is_smooth:
        raise TopologyError("smooth branch: invariant defined as 0 by the caller")


def essential_indices(topology: BranchTopology) -> list[int]:
    """tau-indices i of the coefficients c_i that are vanishing essential quantities.

    In stage j (e_{j-1} < i < e_j) the index is inessential exactly when it is
    divisible by m / D_{j-1}.
    """
    _require_singular(topology)
    m = topology.multiplicity
    dj = topology.partial_products()
    ej = [0] + topology.tau_indices()
    out = []
    for j in range(1, len(ej)):
        step = m // dj[j - 1]
        out.extend(i for i in range(ej[j - 1] + 1, ej[j]) if i % step)
    return out


def y_codimension(topology: BranchTopology) -> int:
    return len(essential_indices(topology))


def external_codimension(topology: BranchTopology) -> int:
    return y_codimension(topology) + topology.multiplicity - 2


def multiplicity_sequence(topology: BranchTopology) -> list[int]:
    """Multiplicities at the successive infinitely near points of the branch.

    Euclid's algorithm on (beta_1, beta_0), then on (beta_j - beta_{j-1}, e_{j-1})
    for the later characteristic exponents; the trailing ones run up to the
    last satellite point, i.e. exactly the points of the minimal embedded
    resolution.
    """
    validate(topology)
    if topology.is_smooth:
        return []
    m = topology.multiplicity
    betas = topology.tau_indices()
    seq: list[int] = []
    prev_beta, gcd_so_far = 0, m
    for beta in betas:
        a, b = beta - prev_beta, gcd_so_far
        # first stage starts from beta_1 over beta_0 = m; the quotient counts
        # the blow-ups at multiplicity b
        while b:
            q, rem = divmod(a, b)
            seq.extend([b] * q)
            a, b = b, rem
        prev_beta, gcd_so_far = beta, a
    return seq


def delta_invariant(topology: BranchTopology) -> int:
    validate(topology)
    return sum(mu * (mu - 1) // 2 for mu in multiplicity_sequence(topology))


def milnor_number(topology: BranchTopology) -> int:
    return 2 * delta_invariant(topology)


def excess_floor(m: int, n: int) -> Fraction:
    """Lower bound on the excess of a branch whose first pair is (m, n)."""
    if m < 2 or n < 2:
        raise TopologyError("excess floor needs m, n >= 2")
    if math.gcd(m, n) != 1:
        raise TopologyError(f"gcd({m}, {n}) != 1")
    a, b = Fraction(m, n), Fraction(n, m)
    return (math.ceil(a) - a) + (math.ceil(b) - b)


# ---------------------------------------------------------------- pairs of branches


@dataclass(frozen=True)
class BranchPairContact:
    """Two branches y = f_1(x), y = f_2(x) sharing their expansion up to a point.

    ``first_disagreement_exponent`` is the x-exponent of the first term where
    the two expansions differ, after the root-of-unity alignment that makes
    the common part longest.  Both branches must be transversal to x = 0.
    """

    left: BranchTopology
    right: BranchTopology
    first_disagreement_exponent: Fraction

    def __post_init__(self) -> None:
        c = Fraction(self.first_disagreement_exponent)
        object.__setattr__(self, "first_disagreement_exponent", c)
        validate(self.left)
        validate(self.right)
        if c <= 0:
            raise TopologyError("disagreement exponent must be positive")
        lc = [b for b in self.left.characteristic_exponents() if b < c]
        rc = [b for b in self.right.characteristic_exponents() if b < c]
        if lc != rc:
            raise TopologyError(
                "characteristic exponents below the disagreement exponent differ; "
                "the common part would end earlier")
        # the disagreement term must exist on at least one side
        m1, m2 = self.left.multiplicity, self.right.multiplicity
        if (c * m1).denominator != 1 and (c * m2).denominator != 1:
            raise TopologyError(f"exponent {c} is not a term of either branch")

    def common_exponents(self) -> list[Fraction]:
        """x-exponents 0 < eps < c present in both expansions."""
        g = math.gcd(self.left.multiplicity, self.right.multiplicity)
        c = self.first_disagreement_exponent
        top = math.ceil(c * g)
        return [Fraction(k, g) for k in range(1, top) if Fraction(k, g) < c]

    @property
    def shared_prefix_length(self) -> int:
        return len(self.common_exponents())


def _is_inessential(topology: BranchTopology, eps: Fraction) -> bool:
    if topology.is_smooth:
        return True
    m = topology.multiplicity
    i = eps * m
    if i.denominator != 1:
        return False
    i = int(i)
    dj = topology.partial_products()
    ej = topology.tau_indices()
    for j, e in enumerate(ej):
        if i < e:
            return i % (m // dj[j]) == 0
        if i == e:
            return False
    return True


def tangency_codimension(contact: BranchPairContact) -> int:
    """Inessential plus nonzero essential quantities in the common part."""
    chars = set(contact.left.characteristic_exponents())
    return sum(
        1 for eps in contact.common_exponents()
        if eps in chars or _is_inessential(contact.left, eps)
    )


def _nu_or_zero(t: BranchTopology) -> int:
    return 0 if t.is_smooth else y_codimension(t)


def two_branch_external_codimension(contact: BranchPairContact) -> int:
    a, b = contact.left, contact.right
    return (_nu_or_zero(a) + _nu_or_zero(b) + tangency_codimension(contact)
            + a.multiplicity + b.multiplicity - 2)


def _contact_sum(t: BranchTopology, c: Fraction) -> Fraction:
    # sum over the m conjugates of t of ord_x(y^(i) - y_other)
    m = t.multiplicity
    dj = t.partial_products()
    total = Fraction(0)
    remaining = m
    for j, beta in enumerate(t.characteristic_exponents()):
        if beta >= c:
            break
        nxt = m // dj[j + 1]
        total += (remaining - nxt) * beta
        remaining = nxt
    return total + remaining * c


def branch_intersection_index(contact: BranchPairContact) -> int:
    """Intersection multiplicity of the two branches.

    Evaluates the conjugate sum ``m_2 * sum_i ord_x(y_2 - y_1^(i))``: conjugates
    of the left branch split off at its characteristic exponents below the
    contact exponent and all remaining ones meet the right branch at order c.
    """
    val = contact.right.multiplicity * _contact_sum(contact.left, contact.first_disagreement_exponent)
    if val.denominator != 1:
        raise TopologyError(f"non-integral intersection index {val}")
    return int(val)

