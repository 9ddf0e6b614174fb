"""Seeded random inputs for the property suites."""
from __future__ import annotations

import random
from fractions import Fraction

from .category_o import partial_sum, thm1_condition
from .toric import c_to_ctilde_inverse, ordering_eta, validate_theta
from .weyl import SymbolPoly

POOL = [Fraction(p, q) for p, q in [
    (1, 2), (1, 3), (2, 3), (1, 4), (3, 4), (1, 5), (3, 2), (5, 2), (1, 1), (2, 1), (3, 1),
    (-1, 2), (-1, 3), (7, 3), (-5, 4), (2, 5), (-3, 5), (4, 3), (5, 6), (-7, 6),
]]


def random_theta(rng: random.Random, l: int):
    while True:
        theta = [rng.randint(-4, 4) for _ in range(l - 1)]
        theta.append(-sum(theta))
        if not validate_theta(theta):
            return tuple(theta)


def integral_sum_count(ct) -> int:
    """Number of pairs i < j with c~_i + ... + c~_{j-1} integral."""
    l = len(ct) + 1
    return sum(partial_sum(ct, i, j).denominator == 1
               for i in range(1, l + 1) for j in range(i + 1, l + 1))


def random_c_in_chamber(rng: random.Random, theta, integral_class=None, tries=10000):
    """c satisfying the parameter condition for a fixed theta, drawn through c~."""
    eta = ordering_eta(theta)
    for _ in range(tries):
        ct = [rng.choice(POOL) for _ in range(len(theta) - 1)]
        if integral_class is not None and min(integral_sum_count(ct), 2) != integral_class:
            continue
        c = c_to_ctilde_inverse(ct, eta)
        if thm1_condition(c, theta):
            return c
    raise RuntimeError("could not sample parameters of the requested class")


def random_parameters(rng: random.Random, l: int, integral_class=None, tries=10000):
    """(theta, eta, c) satisfying the parameter condition.

    integral_class: None, 0, 1 or 2 (meaning at least two integral partial sums).
    """
    for _ in range(tries):
        theta = random_theta(rng, l)
        try:
            c = random_c_in_chamber(rng, theta, integral_class, tries=20)
        except RuntimeError:
            continue
        return theta, ordering_eta(theta), c
    raise RuntimeError("could not sample parameters of the requested class")


def random_c(rng: random.Random, l: int):
    c = [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(l - 1)]
    return tuple([-sum(c)] + c)


def random_kappa(rng: random.Random, l: int):
    return tuple([Fraction(0)] + [Fraction(rng.randint(-20, 20), rng.randint(1, 9)) for _ in range(l - 1)])


def random_symbol(rng: random.Random, rank: int, degree: int, terms: int = 4) -> SymbolPoly:
    out = {}
    for _ in range(terms):
        a = [0] * rank
        b = [0] * rank
        for _ in range(rng.randint(0, degree)):
            (a if rng.random() < 0.5 else b)[rng.randrange(rank)] += 1
        key = (tuple(a), tuple(b))
        out[key] = out.get(key, 0) + rng.randint(-9, 9)
    return SymbolPoly(rank, out)
