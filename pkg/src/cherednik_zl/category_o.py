"""The spherical algebra A_c as a generalized Weyl algebra and its category O.

Elements are sums p_k(h) X^k with X^k = a^k for k > 0 and b^{-k} for k < 0.
The defining data are the two polynomials P_ab, P_ba produced by
``reduction.gwa_presentation``; nothing here hard-codes them.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import ceil

from .hpoly import HPoly
from .reduction import MomentIdealContext, as_h_polynomial, gwa_presentation
from .toric import BadSum, arc_sum, c_tilde as compute_c_tilde
from .weyl import WeylElement, as_fraction


class CategoryOError(ValueError):
    pass


class BadParams(CategoryOError):
    pass


class ConditionViolated(CategoryOError):
    pass


class NonMatchingCharacter(CategoryOError):
    pass


class GWA:
    """A_c with a b = P_ab(h), b a = P_ba(h), h a = a (h + 1), h b = b (h - 1)."""

    def __init__(self, c):
        self.c = tuple(as_fraction(v) for v in c)
        if sum(self.c) != 0:
            raise BadSum("c must sum to 0")
        self.l = len(self.c)
        self.P_ab, self.P_ba = gwa_presentation(self.c)

    def element(self, terms):
        return GWAElement(self, terms)

    @property
    def a(self):
        return GWAElement(self, {1: HPoly.const(1)})

    @property
    def b(self):
        return GWAElement(self, {-1: HPoly.const(1)})

    @property
    def h(self):
        return GWAElement(self, {0: HPoly.h()})

    def one(self):
        return GWAElement(self, {0: HPoly.const(1)})

    def _ab_power(self, n, offset=0):
        """prod_{t<n} P_ab(h - t - offset) = a^n b^n shifted."""
        out = HPoly.const(1)
        for t in range(n):
            out = out * self.P_ab.shift(-t - offset)
        return out

    def _ba_power(self, n, offset=0):
        out = HPoly.const(1)
        for t in range(n):
            out = out * self.P_ba.shift(t + offset)
        return out

    def word_product(self, k: int, m: int):
        """X^k X^m as (poly, exponent)."""
        if k >= 0 and m >= 0 or k <= 0 and m <= 0:
            return HPoly.const(1), k + m
        if k > 0:  # a^k b^n
            n = -m
            if k >= n:
                return self._ab_power(n, k - n), k - n
            return self._ab_power(k), k - n
        n = -k     # b^n a^m
        if n >= m:
            return self._ba_power(m, n - m), m - n
        return self._ba_power(n), m - n


class GWAElement:
    __slots__ = ("alg", "terms")

    def __init__(self, alg: GWA, terms):
        self.alg = alg
        self.terms = {int(k): p for k, p in sorted(terms.items()) if not p.is_zero()}

    def __add__(self, other):
        out = dict(self.terms)
        for k, p in other.terms.items():
            out[k] = out[k] + p if k in out else p
        return GWAElement(self.alg, out)

    def __neg__(self):
        return GWAElement(self.alg, {k: -p for k, p in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, GWAElement):
            return GWAElement(self.alg, {k: p * other for k, p in self.terms.items()})
        out = {}
        for k, p in self.terms.items():
            for m, q in other.terms.items():
                poly, e = self.alg.word_product(k, m)
                # p X^k q X^m = p q(h - k) X^k X^m, and X^k X^m = poly(h) X^e
                term = p * q.shift(-k) * poly
                out[e] = out[e] + term if e in out else term
        return GWAElement(self.alg, out)

    def __eq__(self, other):
        return isinstance(other, GWAElement) and self.terms == other.terms

    def __hash__(self):
        return hash(tuple(self.terms.items()))

    def __repr__(self):
        return f"GWAElement({self.terms})"


@dataclass(frozen=True)
class LowestWeightModule:
    """Lowest weight vector v_0 with h v_0 = mu0 v_0 and basis v_m = a^m v_0.

    ``dim`` is None for infinite-dimensional modules.
    """
    label: int
    mu0: Fraction
    P_ba: HPoly
    dim: int | None = None

    def chain_scalar(self, m: int) -> Fraction:
        """b a^m v_0 = chain_scalar(m) a^{m-1} v_0."""
        return self.P_ba(self.mu0 + m - 1)

    def eigenvalue(self, m: int) -> Fraction:
        return self.mu0 + m

    def levels(self, cutoff: int):
        top = cutoff if self.dim is None else min(cutoff, self.dim - 1)
        return range(top + 1)

    def act(self, gen: str, vec: dict) -> dict:
        """Action of a, b or h on a vector {level: coeff}."""
        out = {}
        for m, v in vec.items():
            if gen == "a":
                if self.dim is None or m + 1 < self.dim:
                    out[m + 1] = out.get(m + 1, 0) + v
            elif gen == "b":
                if m > 0:
                    s = self.chain_scalar(m) * v
                    out[m - 1] = out.get(m - 1, 0) + s
            elif gen == "h":
                out[m] = out.get(m, 0) + self.eigenvalue(m) * v
            else:
                raise CategoryOError(f"unknown generator {gen!r}")
        return {m: v for m, v in out.items() if v}

    def character(self, cutoff: int) -> "GradedCharacter":
        return GradedCharacter.from_list([self.eigenvalue(m) for m in self.levels(cutoff)],
                                         self.mu0 + cutoff)


@dataclass(frozen=True)
class GradedCharacter:
    mults: tuple  # sorted ((eigenvalue, multiplicity), ...)
    cutoff: Fraction

    @classmethod
    def from_list(cls, values, cutoff):
        d = {}
        for v in values:
            if v <= cutoff:
                d[v] = d.get(v, 0) + 1
        return cls(tuple(sorted(d.items())), Fraction(cutoff))

    def as_dict(self):
        return dict(self.mults)

    def to_json(self):
        return {"cutoff": str(self.cutoff),
                "levels": [[str(e), n] for e, n in self.mults]}


def s_value(c, k: int) -> Fraction:
    """c_1 + ... + c_{k-1}."""
    return sum((as_fraction(c[t]) for t in range(1, k)), Fraction(0))


def lowest_weight_from_reduction(i: int, c, eta) -> Fraction:
    """Root of the reduced h^{-1} x_{eta_i} y_{eta_i}, which must kill the lowest vector."""
    l = len(c)
    k = eta[i - 1]
    a = [0] * l
    a[k - 1] = 1
    u = WeylElement.monomial(a, a, {-2: 1})
    p = as_h_polynomial(u, c)
    if p.degree != 1:
        raise CategoryOError("expected a linear polynomial in h")
    return -p.coeffs[0] / p.coeffs[1]


def delta_module(i: int, c, eta, alg: GWA | None = None) -> LowestWeightModule:
    c = tuple(as_fraction(v) for v in c)
    if sum(c) != 0 or len(eta) != len(c):
        raise BadParams("c must sum to 0 and match eta in length")
    if not 1 <= i <= len(c):
        raise BadParams(f"label {i} outside 1..{len(c)}")
    alg = alg or GWA(c)
    return LowestWeightModule(i, lowest_weight_from_reduction(i, c, eta), alg.P_ba)


def h_prime_shift(c, eta) -> Fraction:
    """h' = h^{-1} x_{eta_1} y_{eta_1} = h - shift."""
    return s_value(c, eta[0])


def _root_bound(p: HPoly) -> Fraction:
    lead = p.coeffs[-1]
    return 1 + max((abs(x / lead) for x in p.coeffs[:-1]), default=Fraction(0))


def irreducible_quotient(delta: LowestWeightModule) -> LowestWeightModule:
    if delta.P_ba.degree < 1:
        return delta
    top = ceil(_root_bound(delta.P_ba) + abs(delta.mu0)) + 2
    for m in range(1, top + 1):
        if delta.chain_scalar(m) == 0:
            return LowestWeightModule(delta.label, delta.mu0, delta.P_ba, m)
    return delta


def _is_int(x: Fraction) -> bool:
    return Fraction(x).denominator == 1


def partial_sum(ct, i: int, j: int) -> Fraction:
    """c~_i + ... + c~_{j-1} (1-based positions)."""
    return sum((Fraction(ct[k - 1]) for k in range(i, j)), Fraction(0))


def epsilon_index(i: int, ct) -> int:
    l = len(ct) + 1
    for j in range(i + 1, l + 1):
        if _is_int(partial_sum(ct, i, j)):
            return j
    return l + 1


def thm1_condition(c, theta) -> bool:
    c = [as_fraction(v) for v in c]
    l = len(c)
    for i in range(1, l + 1):
        for j in range(1, l + 1):
            if i == j:
                continue
            s = arc_sum(c, i, j)
            if _is_int(s) and s >= 0 and not arc_sum(theta, i, j) < 0:
                return False
    return True


def morita_condition(c) -> bool:
    c = [as_fraction(v) for v in c]
    l = len(c)
    return all(sum(c[i:j]) != 0 for i in range(1, l) for j in range(i + 1, l + 1))


def multiplicity_formula(i: int, ct, c=None, theta=None) -> tuple[int, ...]:
    if c is not None and theta is not None and not thm1_condition(c, theta):
        raise ConditionViolated("parameter condition fails")
    l = len(ct) + 1
    return tuple(j for j in range(i, l + 1) if _is_int(partial_sum(ct, i, j)))


def default_cutoff(ct) -> int:
    l = len(ct) + 1
    big = 0
    for i in range(1, l + 1):
        for j in range(i, l + 1):
            s = partial_sum(ct, i, j)
            if _is_int(s):
                big = max(big, abs(int(s)))
    return l + 2 * big


def multiplicity_bruteforce(i: int, c, eta, cutoff: int | None = None) -> dict:
    """Greedy decomposition of [Delta(eta_i)] into irreducible characters.

    Returns {label: multiplicity}.
    """
    c = tuple(as_fraction(v) for v in c)
    ct = compute_c_tilde(c, eta)
    if cutoff is None:
        cutoff = default_cutoff(ct)
    alg = GWA(c)
    l = len(c)
    deltas = {j: delta_module(j, c, eta, alg) for j in range(1, l + 1)}
    simples = {j: irreducible_quotient(d) for j, d in deltas.items()}
    by_weight = {}
    for j, L in simples.items():
        if L.mu0 in by_weight:
            raise NonMatchingCharacter("two labels share a lowest weight")
        by_weight[L.mu0] = j
    start = deltas[i]
    top = start.mu0 + cutoff
    remaining = start.character(cutoff).as_dict()
    found = {}
    while remaining:
        mu = min(remaining)
        if mu not in by_weight:
            raise NonMatchingCharacter(f"no simple module has lowest weight {mu}")
        j = by_weight[mu]
        n = remaining[mu]
        found[j] = found.get(j, 0) + n
        L = simples[j]
        for m in L.levels(int(top - L.mu0)):
            e = L.eigenvalue(m)
            remaining[e] = remaining.get(e, 0) - n
            if remaining[e] < 0:
                raise NonMatchingCharacter(f"negative multiplicity at eigenvalue {e}")
            if remaining[e] == 0:
                del remaining[e]
    return dict(sorted(found.items()))


def b_locally_nilpotent(module: LowestWeightModule, cutoff: int) -> bool:
    """b^{m+1} kills a^m v_0 for every level up to the cutoff."""
    for m in module.levels(cutoff):
        vec = {m: Fraction(1)}
        for _ in range(m + 1):
            vec = module.act("b", vec)
        if vec:
            return False
    return True


def moment_context(c):
    return MomentIdealContext(c)
