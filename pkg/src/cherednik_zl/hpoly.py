"""Dense univariate polynomials over Q in the variable h."""
from __future__ import annotations

from fractions import Fraction
from math import comb


class HPoly:
    """Polynomial sum_k coeffs[k] h^k with Fraction coefficients, trailing zeros dropped."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        cs = [Fraction(c) for c in coeffs]
        while cs and not cs[-1]:
            cs.pop()
        self.coeffs = tuple(cs)

    @classmethod
    def const(cls, c):
        return cls([c])

    @classmethod
    def h(cls):
        return cls([0, 1])

    @classmethod
    def from_roots(cls, roots, lead=1):
        out = cls.const(lead)
        for r in roots:
            out = out * cls([-Fraction(r), 1])
        return out

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def _coerce(self, other):
        return other if isinstance(other, HPoly) else HPoly.const(other)

    def __add__(self, other):
        other = self._coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return HPoly([p + q for p, q in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return HPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.coeffs or not other.coeffs:
            return HPoly()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, p in enumerate(self.coeffs):
            if p:
                for j, q in enumerate(other.coeffs):
                    out[i + j] += p * q
        return HPoly(out)

    __rmul__ = __mul__

    def __call__(self, value):
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * value + c
        return acc

    def shift(self, t) -> "HPoly":
        """p(h + t)."""
        t = Fraction(t)
        if not t:
            return self
        out = [Fraction(0)] * len(self.coeffs)
        for k, c in enumerate(self.coeffs):
            if not c:
                continue
            for j in range(k + 1):
                out[j] += c * comb(k, j) * t ** (k - j)
        return HPoly(out)

    def __eq__(self, other):
        if isinstance(other, HPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int, Fraction)):
            return self.coeffs == HPoly.const(other).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        if not self.coeffs:
            return "HPoly(0)"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c:
                parts.append(f"{c}*h^{k}" if k else str(c))
        return "HPoly(" + " + ".join(parts) + ")"

    def to_json(self):
        return [str(c) for c in self.coeffs]
