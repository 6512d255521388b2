"""Resolution dual graphs of branches and exact divisor algebra on them."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from .branch import BranchTopology, TopologyError, multiplicity_sequence, validate

QDivisor = tuple[Fraction, ...]


class LatticeError(ValueError):
    pass


@dataclass(frozen=True)
class ExceptionalGraph:
    """Weighted dual graph; vertex i is E_{i+1}.  ``arrows[k]`` is the vertex
    met by the k-th strict-transform branch."""

    weights: tuple[int, ...]
    edges: frozenset[frozenset[int]]
    arrows: tuple[int, ...] = ()
    _form: tuple[tuple[int, ...], ...] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        n = len(self.weights)
        rows = [[0] * n for _ in range(n)]
        for i, w in enumerate(self.weights):
            rows[i][i] = w
        for e in self.edges:
            i, j = sorted(e)
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise LatticeError(f"bad edge {sorted(e)}")
            rows[i][j] = rows[j][i] = 1
        for a in self.arrows:
            if not 0 <= a < n:
                raise LatticeError(f"arrow on missing vertex {a}")
        object.__setattr__(self, "_form", tuple(tuple(r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.weights)

    def form(self) -> list[list[int]]:
        return [list(r) for r in self._form]

    def neighbors(self, v: int) -> list[int]:
        return sorted(next(iter(e - {v})) for e in self.edges if v in e)

    def basis(self, i: int) -> QDivisor:
        return tuple(Fraction(int(k == i)) for k in range(self.size))

    def reduced_exceptional(self) -> QDivisor:
        """E = E_1 + ... + E_l (the exceptional part of D)."""
        return tuple(Fraction(1) for _ in range(self.size))


def divisor(values: Iterable) -> QDivisor:
    return tuple(Fraction(v) for v in values)


# ------------------------------------------------------------------ linear algebra


def bareiss_solve(matrix: Sequence[Sequence[int]], rhs: Sequence[Fraction]) -> list[Fraction]:
    """Solve A x = b for integer A by fraction-free (Bareiss) elimination."""
    n = len(matrix)
    if any(len(r) != n for r in matrix) or len(rhs) != n:
        raise LatticeError("dimension mismatch")
    den = 1
    for b in rhs:
        den = den * Fraction(b).denominator // _gcd(den, Fraction(b).denominator)
    aug = [[int(x) for x in matrix[i]] + [int(Fraction(rhs[i]) * den)] for i in range(n)]
    prev = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k] != 0), None)
        if piv is None:
            raise LatticeError("singular intersection matrix")
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        for i in range(k + 1, n):
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[i][j] * aug[k][k] - aug[i][k] * aug[k][j]) // prev
            aug[i][k] = 0
        prev = aug[k][k]
    x = [Fraction(0)] * n
    for i in range(n - 1, -1, -1):
        s = Fraction(aug[i][n]) - sum(aug[i][j] * x[j] for j in range(i + 1, n))
        x[i] = s / aug[i][i]
    return [v / den for v in x]


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return a


def is_negative_definite(form: Sequence[Sequence[int]]) -> bool:
    """Sylvester's criterion on -form: all leading minors of -form positive."""
    n = len(form)
    neg = [[-Fraction(x) for x in r] for r in form]
    for k in range(1, n + 1):
        if _det([row[:k] for row in neg[:k]]) <= 0:
            return False
    return True


def _det(m: list[list[Fraction]]) -> Fraction:
    m = [r[:] for r in m]
    n, det = len(m), Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        det *= m[k][k]
        for i in range(k + 1, n):
            f = m[i][k] / m[k][k]
            for j in range(k, n):
                m[i][j] -= f * m[k][j]
    return det


# ------------------------------------------------------------------ construction


def proximity(mults: Sequence[int]) -> list[list[int]]:
    """Points proximate to each infinitely near point of a branch.

    For a branch the proximate points of P_i form a run P_{i+1}, ..., P_{i+k}
    whose multiplicities add up to mult(P_i) (proximity equality); the last
    point has none.
    """
    out = []
    for i, mi in enumerate(mults):
        run, total = [], 0
        for j in range(i + 1, len(mults)):
            if total + mults[j] > mi:
                break
            run.append(j)
            total += mults[j]
            if total == mi:
                break
        if run and total != mi:
            raise TopologyError(f"proximity equality fails at point {i}: {mults}")
        out.append(run)
    return out


def resolve_branch(topology: BranchTopology, allow_smooth: bool = False) -> ExceptionalGraph:
    """Minimal normal crossing resolution graph of a single branch.

    E_i is the exceptional curve of the i-th blow-up.  Its final self
    intersection is -1 minus the number of later points proximate to P_i, and
    E_i meets E_j (i < j) iff P_j is proximate to P_i and no later point lies
    on both.
    """
    validate(topology)
    if topology.is_smooth:
        if not allow_smooth:
            raise TopologyError("smooth branch needs no resolution")
        return ExceptionalGraph((-1,), frozenset(), (0,))
    mults = multiplicity_sequence(topology)
    prox = proximity(mults)
    n = len(mults)
    weights = tuple(-1 - len(prox[i]) for i in range(n))
    edges = set()
    for i in range(n):
        for j in prox[i]:
            if not any(k > j and j in prox_k_of(prox, k) and i in prox_k_of(prox, k)
                       for k in range(j + 1, n)):
                edges.add(frozenset((i, j)))
    return ExceptionalGraph(weights, frozenset(edges), (n - 1,))


def prox_k_of(prox: list[list[int]], k: int) -> set[int]:
    """Points to which P_k is proximate."""
    return {i for i, run in enumerate(prox) if k in run}


# ------------------------------------------------------------------ divisor algebra


def pairing(g: ExceptionalGraph, a: Sequence[Fraction], b: Sequence[Fraction]) -> Fraction:
    if len(a) != g.size or len(b) != g.size:
        raise LatticeError("divisor dimension does not match the graph")
    form = g._form
    return sum((a[i] * form[i][j] * b[j] for i in range(g.size) for j in range(g.size)
                if form[i][j] and a[i] and b[j]), Fraction(0))


def canonical_divisor(g: ExceptionalGraph) -> QDivisor:
    """K with K.E_j = -2 - E_j^2 for every component."""
    rhs = [Fraction(-2 - w) for w in g.weights]
    return tuple(bareiss_solve(g.form(), rhs))


def arrow_pairing(g: ExceptionalGraph, a: Sequence[Fraction]) -> Fraction:
    """a . (sum of strict transforms): each arrow meets its vertex once."""
    return sum((Fraction(a[v]) for v in g.arrows), Fraction(0))


def d_pairing(g: ExceptionalGraph, a: Sequence[Fraction]) -> Fraction:
    """a . D with D = E_1 + ... + E_l + strict transforms."""
    return pairing(g, a, g.reduced_exceptional()) + arrow_pairing(g, a)


def rough_m_number(g: ExceptionalGraph) -> Fraction:
    if not g.arrows:
        raise LatticeError("graph carries no strict transform")
    k = canonical_divisor(g)
    return pairing(g, k, k) + d_pairing(g, k)


def _k_plus_d_dot(g: ExceptionalGraph, k: QDivisor, v: int) -> Fraction:
    """(K + D) . E_v"""
    ev = g.basis(v)
    return pairing(g, k, ev) + pairing(g, g.reduced_exceptional(), ev) + g.arrows.count(v)


def maximal_twigs(g: ExceptionalGraph) -> list[list[int]]:
    """Maximal twigs: chains starting at a tip, no arrows, ending before the
    first vertex that branches or carries an arrow."""
    deg = {v: len(g.neighbors(v)) for v in range(g.size)}
    arrowed = set(g.arrows)
    twigs = []
    for tip in range(g.size):
        if deg[tip] != 1 or tip in arrowed:
            continue
        chain, prev, cur = [tip], None, tip
        while True:
            nxt = [u for u in g.neighbors(cur) if u != prev]
            if len(nxt) != 1:
                break
            u = nxt[0]
            if deg[u] != 2 or u in arrowed:
                break
            chain.append(u)
            prev, cur = cur, u
        twigs.append(chain)
    return twigs


def _negative_part_on(g: ExceptionalGraph, support: Sequence[int]) -> QDivisor:
    """N supported on ``support`` with (K + D - N).E = 0 for E in the support."""
    support = sorted(support)
    if not support:
        return tuple(Fraction(0) for _ in range(g.size))
    k = canonical_divisor(g)
    form = g.form()
    sub = [[form[i][j] for j in support] for i in support]
    rhs = [_k_plus_d_dot(g, k, v) for v in support]
    coeffs = bareiss_solve(sub, rhs)
    out = [Fraction(0)] * g.size
    for v, c in zip(support, coeffs):
        out[v] = c
    return tuple(out)


def zariski_fujita(g: ExceptionalGraph) -> tuple[QDivisor, QDivisor]:
    """K + D = P + N with N the bark of the maximal twigs of D."""
    support = sorted(v for tw in maximal_twigs(g) for v in tw)
    n = _negative_part_on(g, support)
    k = canonical_divisor(g)
    kd = [k[i] + 1 for i in range(g.size)]
    p = tuple(kd[i] - n[i] for i in range(g.size))
    return p, n


def zariski_fujita_iterative(g: ExceptionalGraph) -> tuple[QDivisor, QDivisor]:
    """General decomposition by support growth: start from the components
    where K + D is negative, enlarge while P fails to be nef on them."""
    k = canonical_divisor(g)
    kd = tuple(k[i] + 1 for i in range(g.size))
    support = {v for v in range(g.size) if _k_plus_d_dot(g, k, v) < 0}
    while True:
        n = _negative_part_on(g, support)
        p = tuple(kd[i] - n[i] for i in range(g.size))
        bad = {v for v in range(g.size) if v not in support and positive_part_dot(g, n, v) < 0}
        if not bad:
            return p, n
        support |= bad


def positive_part_dot(g: ExceptionalGraph, n: Sequence[Fraction], v: int) -> Fraction:
    """P . E_v for P = K + D - N, strict transforms included in D."""
    return _k_plus_d_dot(g, canonical_divisor(g), v) - pairing(g, n, g.basis(v))


def excess(g: ExceptionalGraph) -> Fraction:
    _, n = zariski_fujita(g)
    return -pairing(g, n, n)


# ------------------------------------------------------------------ export


def _frac(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def graph_to_json(g: ExceptionalGraph) -> dict:
    return {
        "weights": list(g.weights),
        "edges": sorted(sorted(e) for e in g.edges),
        "arrows": list(g.arrows),
    }


def divisor_to_json(d: Sequence[Fraction]) -> list[str]:
    return [_frac(x) for x in d]


def graph_to_dot(g: ExceptionalGraph, name: str = "resolution") -> str:
    lines = [f"graph {name} {{"]
    for i, w in enumerate(g.weights):
        lines.append(f'  E{i + 1} [label="E{i + 1} ({w})"];')
    for e in sorted(sorted(e) for e in g.edges):
        lines.append(f"  E{e[0] + 1} -- E{e[1] + 1};")
    for k, v in enumerate(g.arrows):
        lines.append(f'  A{k + 1} [shape=box, label="strict transform {k + 1}"];')
        lines.append(f"  E{v + 1} -- A{k + 1};")
    lines.append("}")
    return "\n".join(lines) + "\n"
