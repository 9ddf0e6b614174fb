"""Combinatorics of the A_{l-1} resolution as a quiver variety.

Vertices of the cyclic quiver are labelled 0..l-1; chart and arrow labels run
over 1..l with l identified with 0.  Divisors are plain integers 0..l, chart j
meets D_{j-1} and D_j.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .weyl import SymbolPoly, as_fraction


class ToricError(ValueError):
    pass


class BadSum(ToricError):
    pass


class InvalidTheta(ToricError):
    def __init__(self, arcs):
        self.arcs = arcs
        super().__init__(f"vanishing arc sums on arcs {arcs}")


class MomentNonzero(ToricError):
    pass


class IndexRange(ToricError):
    pass


def arc_sum(v, i: int, j: int):
    """v_i + v_{i+1} + ... + v_{j-1} with indices read mod l (i = j gives the empty arc)."""
    l = len(v)
    total = 0
    k = i % l
    while k != j % l:
        total += v[k]
        k = (k + 1) % l
    return total


def _arcs(l):
    return [(i, j) for i in range(1, l + 1) for j in range(1, l + 1) if i != j]


def validate_theta(theta):
    """Return [] when every proper cyclic arc has nonzero sum, else the offending (i, j)."""
    theta = [int(t) for t in theta]
    if sum(theta) != 0:
        raise BadSum(f"theta sums to {sum(theta)}, expected 0")
    return [(i, j) for i, j in _arcs(len(theta)) if arc_sum(theta, i, j) == 0]


def dominates(theta, i: int, j: int) -> bool:
    """i |> j: the arc theta_i + ... + theta_{j-1} is negative."""
    return arc_sum(theta, i, j) < 0


def ordering_eta(theta) -> tuple[int, ...]:
    bad = validate_theta(theta)
    if bad:
        raise InvalidTheta(bad)
    l = len(theta)
    labels = range(1, l + 1)
    score = {i: sum(dominates(theta, i, j) for j in labels if j != i) for i in labels}
    return tuple(sorted(labels, key=lambda i: -score[i]))


def _prefix(c):
    out = [Fraction(0)]
    for v in c:
        out.append(out[-1] + v)
    return out


def c_tilde(c, eta) -> tuple[Fraction, ...]:
    c = [as_fraction(v) for v in c]
    if sum(c) != 0:
        raise BadSum(f"c sums to {sum(c)}, expected 0")
    l = len(c)
    pc = _prefix(c)
    return tuple(pc[eta[k + 1] % l] - pc[eta[k] % l] for k in range(l - 1))


def c_to_ctilde_inverse(ct, eta) -> tuple[Fraction, ...]:
    """Recover c from c_tilde (the prefix sums at the labels eta fix c completely)."""
    l = len(eta)
    pc = [None] * l
    pc[eta[0] % l] = Fraction(0)
    for k in range(l - 1):
        pc[eta[k + 1] % l] = pc[eta[k] % l] + Fraction(ct[k])
    shift = pc[0]
    pc = [p - shift for p in pc] + [Fraction(0)]
    return tuple(pc[k + 1] - pc[k] for k in range(l))


@dataclass(frozen=True)
class RepPoint:
    """Representation (a_k, b_k), k = 1..l; a_k: V_{k-1} -> V_k, b_k: V_k -> V_{k-1}."""
    a: tuple
    b: tuple

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise ToricError("a and b must have equal length")
        object.__setattr__(self, "a", tuple(as_fraction(v) for v in self.a))
        object.__setattr__(self, "b", tuple(as_fraction(v) for v in self.b))

    @property
    def l(self):
        return len(self.a)

    def moment(self):
        """(a_{k+1} b_{k+1} - a_k b_k) for k = 0..l-1, with a_0 = a_l."""
        l = self.l
        ab = [self.a[k] * self.b[k] for k in range(l)]
        return tuple(ab[k % l] - ab[k - 1] for k in range(l))


def semistable_check(p: RepPoint, theta) -> bool:
    l = p.l
    for size in range(l + 1):
        for S in combinations(range(l), size):
            S = set(S)
            closed = True
            for k in range(1, l + 1):
                head, tail = k % l, k - 1
                if p.a[k - 1] and tail in S and head not in S:
                    closed = False
                    break
                if p.b[k - 1] and head in S and tail not in S:
                    closed = False
                    break
            if closed and sum(theta[v] for v in S) > 0:
                return False
    return True


def x0_projection(p: RepPoint):
    if any(p.moment()):
        raise MomentNonzero(f"moment map is {p.moment()}")
    u = Fraction(1)
    v = Fraction(1)
    for s, t in zip(p.a, p.b):
        u *= s
        v *= t
    return u, v, p.a[0] * p.b[0]


def fixed_point(i: int, eta):
    """Zero pattern of p_i: lists a, b indexed by arrow 1..l, entries 0 or 1 (nonzero)."""
    l = len(eta)
    if not 1 <= i <= l:
        raise IndexRange(f"chart {i} outside 1..{l}")
    a = [0] * l
    b = [0] * l
    for pos, k in enumerate(eta, start=1):
        if pos < i:
            a[k - 1] = 1
        elif pos > i:
            b[k - 1] = 1
    return tuple(a), tuple(b)


def in_chart(p: RepPoint, j: int, eta) -> bool:
    """Open chart X_j: a_{eta_k} != 0 for k < j and b_{eta_k} != 0 for k > j."""
    for pos, k in enumerate(eta, start=1):
        if pos < j and not p.a[k - 1]:
            return False
        if pos > j and not p.b[k - 1]:
            return False
    return True


def classical_coordinates(j: int, eta):
    """(fbar_j, gbar_j) as Laurent monomials in xbar_k = a_k, ybar_k = b_k."""
    l = len(eta)
    if not 1 <= j <= l:
        raise IndexRange(f"chart {j} outside 1..{l}")
    fa, fb, ga, gb = [0] * l, [0] * l, [0] * l, [0] * l
    for pos, k in enumerate(eta, start=1):
        if pos <= j:
            fa[k - 1] += 1
        else:
            fb[k - 1] -= 1
        if pos >= j:
            gb[k - 1] += 1
        else:
            ga[k - 1] -= 1
    f = SymbolPoly(l, {(tuple(fa), tuple(fb)): 1})
    g = SymbolPoly(l, {(tuple(ga), tuple(gb)): 1})
    return f, g


def classical_transition(j: int, l: int, fbar, gbar):
    """Values of (fbar_{j+1}, gbar_{j+1}) at a point with chart-j values (fbar, gbar)."""
    if not 1 <= j <= l - 1:
        raise IndexRange(f"overlap {j} outside 1..{l - 1}")
    fbar, gbar = as_fraction(fbar), as_fraction(gbar)
    return fbar * fbar * gbar, 1 / fbar


def support_divisor_of_symbol(j: int, l: int, vanishing: str) -> frozenset:
    if not 1 <= j <= l:
        raise IndexRange(f"chart {j} outside 1..{l}")
    table = {"f": {j - 1}, "g": {j}, "both": {j - 1, j}}
    if vanishing not in table:
        raise ToricError(f"unknown vanishing locus {vanishing!r}")
    return frozenset(table[vanishing])


@dataclass(frozen=True)
class ToricData:
    theta: tuple
    c: tuple | None = None
    eta: tuple = field(init=False)
    c_tilde: tuple | None = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "theta", tuple(int(t) for t in self.theta))
        object.__setattr__(self, "eta", ordering_eta(self.theta))
        if self.c is not None:
            c = tuple(as_fraction(v) for v in self.c)
            if len(c) != len(self.theta):
                raise ToricError("c and theta have different lengths")
            object.__setattr__(self, "c", c)
            object.__setattr__(self, "c_tilde", c_tilde(c, self.eta))
        else:
            object.__setattr__(self, "c_tilde", None)

    @property
    def l(self):
        return len(self.theta)

    def chart_divisors(self):
        return {j: (j - 1, j) for j in range(1, self.l + 1)}

    def to_json(self):
        return {
            "l": self.l,
            "theta": list(self.theta),
            "eta": list(self.eta),
            "c": None if self.c is None else [str(v) for v in self.c],
            "c_tilde": None if self.c_tilde is None else [str(v) for v in self.c_tilde],
            "charts": [{"chart": j, "divisors": list(d)} for j, d in self.chart_divisors().items()],
        }
