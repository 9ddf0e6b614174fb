"""Rank-1 chart algebra: x = f_j, xi = g_j, optionally with x inverted.

Cyclic chart modules are W / W*gen for one generator gen.  Left-ideal
membership is decided by division against gen's leading word: total degree
in the plain algebra, xi-degree once x is invertible (then the leading
coefficient is a unit x^p).
"""
from __future__ import annotations

from fractions import Fraction

from .weyl import HScalar, WeylElement, WeylError, as_fraction

KINDS = ("G", "F", "XY", "Zero")


def x_(localized=False, power=1):
    return WeylElement.x(1, 1, power, mask=("x",) if localized else ("",))


def xi_(localized=False, power=1):
    return WeylElement.y(1, 1, power, mask=("x",) if localized else ("",))


def hbar_(localized=False, half=2):
    return WeylElement.hbar(1, half, mask=("x",) if localized else ("",))


def chart_generator(kind: str, lam=None, localized=False) -> WeylElement:
    """G -> xi, F -> x, XY(lam) -> x xi - h lam, Zero -> 1."""
    if kind == "G":
        return xi_(localized)
    if kind == "F":
        return x_(localized)
    if kind == "XY":
        return x_(localized) * xi_(localized) - hbar_(localized) * as_fraction(lam)
    if kind == "Zero":
        return WeylElement.one(1, ("x",) if localized else ("",))
    raise WeylError(f"unknown chart kind {kind!r}")


def _leading(gen: WeylElement, localized: bool):
    """Leading (a, b, coeff) of gen: largest xi-degree if localized, else largest total degree."""
    if gen.is_zero():
        raise WeylError("zero generator")
    if localized:
        top = max(b[0] for (_, b) in gen.terms)
        cands = [(a[0], b[0], s) for (a, b), s in gen.items() if b[0] == top]
        if len(cands) != 1 or len(cands[0][2].terms) != 1:
            raise WeylError("generator is not monic in xi up to a unit")
        return cands[0]
    top = max(a[0] + b[0] for (a, b) in gen.terms)
    cands = [(a[0], b[0], s) for (a, b), s in gen.items() if a[0] + b[0] == top]
    if len(cands) != 1 or len(cands[0][2].terms) != 1:
        raise WeylError("generator has no single leading word")
    return cands[0]


def left_reduce(u: WeylElement, gen: WeylElement, localized: bool = False) -> WeylElement:
    """Remainder of u modulo the left ideal W*gen."""
    mask = ("x",) if localized else ("",)
    p, q, lc = _leading(gen, localized)
    inv = lc.inverse()
    u = u.with_mask(mask) if localized else u
    rem = WeylElement(1, {}, mask)
    work = u

    def key(t):
        (a, b), _ = t
        return (b[0], a[0]) if localized else (a[0] + b[0], b[0])

    while not work.is_zero():
        (a, b), s = max(work.items(), key=key)
        if b[0] >= q and (localized or a[0] >= p):
            quot = WeylElement.monomial([a[0] - p], [b[0] - q], s * inv, mask)
            work = work - quot * gen
        else:
            term = WeylElement.monomial(a, b, s, mask)
            rem = rem + term
            work = work - term
    return rem


def in_left_ideal(u: WeylElement, gen: WeylElement, localized: bool = False) -> bool:
    return left_reduce(u, gen, localized).is_zero()


def coset_basis_word(kind: str, k: int):
    """Exponents (a, b) of the k-th basis coset of an unlocalized chart module, or None.

    G: x^k (k >= 0); F: xi^{-k} (k <= 0); XY: x^k for k >= 0 and xi^{-k} for k < 0.
    """
    if kind == "G":
        return (k, 0) if k >= 0 else None
    if kind == "F":
        return (0, -k) if k <= 0 else None
    if kind == "XY":
        return (k, 0) if k >= 0 else (0, -k)
    return None


def scalar_h(value, half=0) -> HScalar:
    return HScalar({half: Fraction(value)})
