"""Normal-ordered arithmetic in (localized) Weyl algebras over Q((h^{1/2})).

Elements live in the dense polynomial model of the W-algebra on T*C^l:
generators x_1..x_l, y_1..y_l with [y_i, x_j] = delta_ij h.  Every monomial
is stored as x^a y^b (all x's to the left).  A generator may be flagged
invertible, which allows negative exponents on it; for each index at most one
of x_i, y_i is flagged.

All arithmetic is exact.  Nothing is truncated in h.
"""
from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import factorial
from types import MappingProxyType


class WeylError(ValueError):
    pass


class IncompatibleMask(WeylError):
    pass


class UnorderableTerm(WeylError):
    pass


class FiltrationViolation(WeylError):
    pass


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; use Fraction or 'p/q' strings")
    return Fraction(value)


# --------------------------------------------------------------------------
# HScalar
# --------------------------------------------------------------------------

class HScalar:
    """Finite Laurent polynomial in h^{1/2} with rational coefficients.

    Keys of ``terms`` are exponents counted in half-steps: key ``k`` stands
    for ``h^(k/2)``.
    """

    __slots__ = ("_terms",)

    def __init__(self, terms=None):
        if terms is None:
            terms = {}
        elif not isinstance(terms, dict):
            terms = {0: terms}
        clean = {}
        for k, v in terms.items():
            v = as_fraction(v)
            if v:
                clean[int(k)] = v
        self._terms = dict(sorted(clean.items()))

    @classmethod
    def h(cls, half_exp: int = 2, coeff=1) -> "HScalar":
        """``coeff * h^(half_exp/2)``; the default is plain ``h``."""
        return cls({half_exp: coeff})

    @classmethod
    def coerce(cls, value) -> "HScalar":
        return value if isinstance(value, HScalar) else cls(value)

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def lowest(self) -> int:
        return min(self._terms)

    def highest(self) -> int:
        return max(self._terms)

    def single(self):
        """Return ``(half_exp, coeff)`` of a one-term scalar."""
        if len(self._terms) != 1:
            raise WeylError(f"{self} is not a single h-power")
        return next(iter(self._terms.items()))

    def coefficient(self, half_exp: int) -> Fraction:
        return self._terms.get(half_exp, Fraction(0))

    def __add__(self, other):
        other = HScalar.coerce(other)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return HScalar(out)

    __radd__ = __add__

    def __neg__(self):
        return HScalar({k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-HScalar.coerce(other))

    def __rsub__(self, other):
        return HScalar.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, WeylElement):
            return NotImplemented
        other = HScalar.coerce(other)
        out = {}
        for k1, v1 in self._terms.items():
            for k2, v2 in other._terms.items():
                out[k1 + k2] = out.get(k1 + k2, 0) + v1 * v2
        return HScalar(out)

    __rmul__ = __mul__

    def inverse(self) -> "HScalar":
        k, v = self.single()
        return HScalar({-k: 1 / v})

    def __truediv__(self, other):
        return self * HScalar.coerce(other).inverse()

    def __eq__(self, other):
        if isinstance(other, HScalar):
            return self._terms == other._terms
        try:
            return self._terms == HScalar(other)._terms
        except (TypeError, ValueError):
            return NotImplemented

    def __hash__(self):
        return hash(tuple(self._terms.items()))

    def __str__(self):
        if not self._terms:
            return "0"
        return _join_signed([_render_product(v, _h_factor(k)) for k, v in self._terms.items()])

    def __repr__(self):
        return f"HScalar({self})"


def _h_factor(half_exp: int) -> list[str]:
    if half_exp == 0:
        return []
    if half_exp == 2:
        return ["h"]
    if half_exp % 2 == 0:
        return [f"h^{half_exp // 2}"]
    return [f"h^({half_exp}/2)"]


def _render_product(coeff: Fraction, factors: list[str]) -> tuple[bool, str]:
    neg = coeff < 0
    c = -coeff if neg else coeff
    parts = list(factors)
    if c != 1 or not parts:
        parts.insert(0, str(c))
    return neg, "*".join(parts)


def _join_signed(pieces) -> str:
    out = ""
    for n, (neg, body) in enumerate(pieces):
        if n == 0:
            out = ("-" if neg else "") + body
        else:
            out += (" - " if neg else " + ") + body
    return out or "0"


# --------------------------------------------------------------------------
# Commutative symbols
# --------------------------------------------------------------------------

class SymbolPoly:
    """Commutative Laurent polynomial in xbar_1..xbar_l, ybar_1..ybar_l."""

    __slots__ = ("rank", "_terms")

    def __init__(self, rank: int, terms=None):
        self.rank = rank
        clean = {}
        for (a, b), v in (terms or {}).items():
            v = as_fraction(v)
            if v:
                key = (tuple(a), tuple(b))
                if len(key[0]) != rank or len(key[1]) != rank:
                    raise WeylError("exponent vector has wrong length")
                clean[key] = clean.get(key, 0) + v
        self._terms = {k: v for k, v in sorted(clean.items()) if v}

    @classmethod
    def var(cls, rank, i, which="x", power=1):
        a = [0] * rank
        b = [0] * rank
        (a if which == "x" else b)[i - 1] = power
        return cls(rank, {(tuple(a), tuple(b)): 1})

    @classmethod
    def constant(cls, rank, value):
        z = (0,) * rank
        return cls(rank, {(z, z): value})

    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def __add__(self, other):
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out.get(k, 0) + v
        return SymbolPoly(self.rank, out)

    def __neg__(self):
        return SymbolPoly(self.rank, {k: -v for k, v in self._terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, SymbolPoly):
            other = SymbolPoly.constant(self.rank, other)
        out = {}
        for (a1, b1), v1 in self._terms.items():
            for (a2, b2), v2 in other._terms.items():
                key = (tuple(p + q for p, q in zip(a1, a2)), tuple(p + q for p, q in zip(b1, b2)))
                out[key] = out.get(key, 0) + v1 * v2
        return SymbolPoly(self.rank, out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out = SymbolPoly.constant(self.rank, 1)
        for _ in range(n):
            out = out * self
        return out

    def derivative(self, which: str, i: int, times: int = 1) -> "SymbolPoly":
        """Partial derivative in xbar_i (``which='x'``) or ybar_i."""
        out = {}
        slot = 0 if which == "x" else 1
        for key, v in self._terms.items():
            e = key[slot][i - 1]
            c = v
            for t in range(times):
                c *= e - t
            if not c:
                continue
            vec = list(key[slot])
            vec[i - 1] = e - times
            new = (tuple(vec), key[1]) if slot == 0 else (key[0], tuple(vec))
            out[new] = out.get(new, 0) + c
        return SymbolPoly(self.rank, out)

    def poisson(self, other: "SymbolPoly") -> "SymbolPoly":
        """{f, g} = sum_i d_yi f * d_xi g - d_xi f * d_yi g, so {ybar, xbar} = 1."""
        out = SymbolPoly(self.rank)
        for i in range(1, self.rank + 1):
            out = out + self.derivative("y", i) * other.derivative("x", i)
            out = out - self.derivative("x", i) * other.derivative("y", i)
        return out

    def evaluate(self, xs, ys) -> Fraction:
        total = Fraction(0)
        for (a, b), v in self._terms.items():
            t = v
            for p, e in zip(xs, a):
                t *= Fraction(p) ** e
            for p, e in zip(ys, b):
                t *= Fraction(p) ** e
            total += t
        return total

    def __eq__(self, other):
        return isinstance(other, SymbolPoly) and self.rank == other.rank and self._terms == other._terms

    def __hash__(self):
        return hash((self.rank, tuple(self._terms.items())))

    def __repr__(self):
        pieces = [_render_product(v, _monomial_factors(a, b)) for (a, b), v in self._terms.items()]
        return f"SymbolPoly({_join_signed(pieces)})"


# --------------------------------------------------------------------------
# WeylElement
# --------------------------------------------------------------------------

def _normalize_mask(rank, mask):
    if mask is None:
        return ("",) * rank
    mask = tuple("" if m in (None, "", False) else str(m) for m in mask)
    if len(mask) != rank or any(m not in ("", "x", "y") for m in mask):
        raise WeylError(f"bad localization mask {mask!r}")
    return mask


def merge_masks(m1, m2):
    out = []
    for p, q in zip(m1, m2):
        if p == q or not q:
            out.append(p)
        elif not p:
            out.append(q)
        else:
            raise IncompatibleMask(f"x and y both inverted at one index: {m1} vs {m2}")
    return tuple(out)


@lru_cache(maxsize=65536)
def _reorder(b: int, a: int):
    """y^b x^a at one index as [(k, c, a-k, b-k)]: sum of c h^k x^(a-k) y^(b-k).

    c = a^(k) b^(k) / k! (falling factorials); the sum stops at whichever
    exponent is a nonnegative integer.
    """
    if a >= 0 and (b < 0 or a <= b):
        kmax = a
    elif b >= 0:
        kmax = b
    else:
        raise UnorderableTerm(f"y^{b} x^{a}: both exponents negative")
    out = []
    c = 1
    for k in range(kmax + 1):
        out.append((k, c, a - k, b - k))
        c = c * (a - k) * (b - k) // (k + 1)
    return tuple(out)


class WeylElement:
    """Normal-ordered element sum_{a,b} s_{a,b}(h) x^a y^b of a rank-l Weyl algebra."""

    __slots__ = ("rank", "mask", "_terms")

    def __init__(self, rank: int, terms=None, mask=None):
        if rank < 1:
            raise WeylError("rank must be positive")
        self.rank = rank
        self.mask = _normalize_mask(rank, mask)
        clean = {}
        for (a, b), s in (terms or {}).items():
            s = HScalar.coerce(s)
            if s.is_zero():
                continue
            key = (tuple(int(e) for e in a), tuple(int(e) for e in b))
            if len(key[0]) != rank or len(key[1]) != rank:
                raise WeylError("exponent vector has wrong length")
            clean[key] = clean[key] + s if key in clean else s
        for (a, b) in clean:
            for i in range(rank):
                if a[i] < 0 and self.mask[i] != "x":
                    raise WeylError(f"x{i + 1}^{a[i]} needs x{i + 1} invertible")
                if b[i] < 0 and self.mask[i] != "y":
                    raise WeylError(f"y{i + 1}^{b[i]} needs y{i + 1} invertible")
        self._terms = {k: v for k, v in sorted(clean.items()) if not v.is_zero()}

    # constructors --------------------------------------------------------
    @classmethod
    def scalar(cls, rank, value=1, mask=None):
        z = (0,) * rank
        return cls(rank, {(z, z): HScalar.coerce(value)}, mask)

    @classmethod
    def one(cls, rank, mask=None):
        return cls.scalar(rank, 1, mask)

    @classmethod
    def monomial(cls, a, b, coeff=1, mask=None):
        return cls(len(a), {(tuple(a), tuple(b)): HScalar.coerce(coeff)}, mask)

    @classmethod
    def x(cls, i, rank, power=1, mask=None):
        a = [0] * rank
        a[i - 1] = power
        return cls.monomial(a, [0] * rank, 1, mask)

    @classmethod
    def y(cls, i, rank, power=1, mask=None):
        b = [0] * rank
        b[i - 1] = power
        return cls.monomial([0] * rank, b, 1, mask)

    @classmethod
    def hbar(cls, rank, half_exp=2, mask=None):
        return cls.scalar(rank, HScalar.h(half_exp), mask)

    # access ----------------------------------------------------------------
    @property
    def terms(self):
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def is_zero(self):
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def with_mask(self, mask) -> "WeylElement":
        mask = merge_masks(self.mask, _normalize_mask(self.rank, mask))
        return WeylElement(self.rank, self._terms, mask)

    def hbar_exponents(self) -> set[int]:
        return {k for s in self._terms.values() for k in s.terms}

    # arithmetic ----------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, WeylElement):
            if other.rank != self.rank:
                raise WeylError("rank mismatch")
            return other
        return WeylElement.scalar(self.rank, other)

    def __add__(self, other):
        other = self._coerce(other)
        mask = merge_masks(self.mask, other.mask)
        out = dict(self._terms)
        for k, v in other._terms.items():
            out[k] = out[k] + v if k in out else v
        return WeylElement(self.rank, out, mask)

    __radd__ = __add__

    def __neg__(self):
        return WeylElement(self.rank, {k: -v for k, v in self._terms.items()}, self.mask)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, WeylElement):
            s = HScalar.coerce(other)
            return WeylElement(self.rank, {k: v * s for k, v in self._terms.items()}, self.mask)
        return multiply(self, other)

    def __rmul__(self, other):
        s = HScalar.coerce(other)
        return WeylElement(self.rank, {k: s * v for k, v in self._terms.items()}, self.mask)

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out = WeylElement.one(self.rank, self.mask)
        base = self
        while n:
            if n & 1:
                out = out * base
            n >>= 1
            if n:
                base = base * base
        return out

    def inverse(self) -> "WeylElement":
        """Inverse of a single monomial whose generators are all flagged."""
        if len(self._terms) != 1:
            raise WeylError("only single monomials are inverted")
        (a, b), s = next(iter(self._terms.items()))
        out = WeylElement.scalar(self.rank, s.inverse(), self.mask)
        for i in range(self.rank):
            if a[i] and b[i]:
                raise WeylError("cannot invert x_i^a y_i^b with both exponents nonzero")
            if a[i]:
                if self.mask[i] != "x":
                    raise WeylError(f"x{i + 1} is not invertible here")
                out = out * WeylElement.x(i + 1, self.rank, -a[i], self.mask)
            if b[i]:
                if self.mask[i] != "y":
                    raise WeylError(f"y{i + 1} is not invertible here")
                out = out * WeylElement.y(i + 1, self.rank, -b[i], self.mask)
        return out

    def __eq__(self, other):
        if isinstance(other, WeylElement):
            return self.rank == other.rank and self._terms == other._terms
        if isinstance(other, (int, Fraction, HScalar)):
            return self._terms == WeylElement.scalar(self.rank, other)._terms
        return NotImplemented

    def __hash__(self):
        return hash((self.rank, tuple(self._terms.items())))

    # text ----------------------------------------------------------------
    def __str__(self):
        pieces = []
        for (a, b), s in self._terms.items():
            mono = _monomial_factors(a, b)
            for k, v in s.items():
                pieces.append(_render_product(v, _h_factor(k) + mono))
        return _join_signed(pieces)

    def __repr__(self):
        return f"WeylElement(rank={self.rank}, {self})"

    @classmethod
    def parse(cls, text: str, rank: int, mask=None) -> "WeylElement":
        """Inverse of ``str``; the mask is widened to cover negative exponents."""
        return _parse(text, rank, mask)


def _monomial_factors(a, b) -> list[str]:
    out = []
    for name, vec in (("x", a), ("y", b)):
        for i, e in enumerate(vec):
            if e == 1:
                out.append(f"{name}{i + 1}")
            elif e:
                out.append(f"{name}{i + 1}^{e}")
    # keep x before y, index order inside each group
    return out


def multiply(u: WeylElement, v: WeylElement) -> WeylElement:
    """Normal-ordered product u*v."""
    if u.rank != v.rank:
        raise WeylError("rank mismatch")
    mask = merge_masks(u.mask, v.mask)
    rank = u.rank
    acc: dict = {}
    for (a1, b1), s1 in u._terms.items():
        for (a2, b2), s2 in v._terms.items():
            s = s1 * s2
            per_index = []
            for i in range(rank):
                if b1[i] == 0 or a2[i] == 0:
                    per_index.append(((0, 1, a1[i] + a2[i], b1[i] + b2[i]),))
                else:
                    per_index.append(tuple(
                        (k, c, a1[i] + ak, bk + b2[i]) for k, c, ak, bk in _reorder(b1[i], a2[i])
                    ))
            for combo in product(*per_index):
                hk = 0
                c = 1
                for k, ci, _, _ in combo:
                    hk += k
                    c *= ci
                key = (tuple(t[2] for t in combo), tuple(t[3] for t in combo))
                slot = acc.setdefault(key, {})
                for k, val in s.items():
                    e = k + 2 * hk
                    slot[e] = slot.get(e, 0) + c * val
    return WeylElement(rank, {k: HScalar(v) for k, v in acc.items()}, mask)


def commutator(u: WeylElement, v: WeylElement) -> WeylElement:
    return u * v - v * u


def normal_order(f: SymbolPoly) -> WeylElement:
    """Read a commutative symbol as the normal-ordered word x^a y^b."""
    return WeylElement(f.rank, {k: v for k, v in f.items()}, None)


def star_multiply(f: SymbolPoly, g: SymbolPoly) -> WeylElement:
    """Standard-ordered star product sum_alpha h^|alpha|/alpha! d_y^alpha f * d_x^alpha g."""
    if f.rank != g.rank:
        raise WeylError("arity mismatch")
    for p in (f, g):
        if any(e < 0 for (a, b) in p.terms for e in a + b):
            raise WeylError("star_multiply takes polynomial symbols only")
    rank = f.rank
    deg_y = [max((b[i] for (_, b) in f.terms), default=0) for i in range(rank)]
    acc: dict = {}
    for alpha in product(*(range(d + 1) for d in deg_y)):
        df, dg = f, g
        for i, k in enumerate(alpha):
            if k:
                df = df.derivative("y", i + 1, k)
                dg = dg.derivative("x", i + 1, k)
        if df.is_zero() or dg.is_zero():
            continue
        weight = Fraction(1, 1)
        for k in alpha:
            weight /= factorial(k)
        prod_ = df * dg
        e = 2 * sum(alpha)
        for key, v in prod_.items():
            slot = acc.setdefault(key, {})
            slot[e] = slot.get(e, 0) + weight * v
    return WeylElement(rank, {k: HScalar(v) for k, v in acc.items()})


def symbol(u: WeylElement, m: int = 0) -> SymbolPoly:
    """Coefficient of h^{-m}; raises if u has a term below h^{-m}."""
    out = {}
    for key, s in u.items():
        if s.lowest() < -2 * m:
            raise FiltrationViolation(f"term {key} has h-order {Fraction(s.lowest(), 2)} < {-m}")
        c = s.coefficient(-2 * m)
        if c:
            out[key] = c
    return SymbolPoly(u.rank, out)


def f_weight(u: WeylElement):
    """F-weight (x, y, h^{1/2} all weight 1), or None if u is not homogeneous."""
    weights = set()
    for (a, b), s in u.items():
        base = sum(a) + sum(b)
        for k in s.terms:
            weights.add(base + k)
    if len(weights) != 1:
        return None
    return weights.pop()


# --------------------------------------------------------------------------
# parser
# --------------------------------------------------------------------------

_TOKEN = re.compile(
    r"\s*(?:(?P<num>\d+(?:/\d+)?)|(?P<gen>[xy])(?P<idx>\d+)|(?P<h>h)|(?P<op>[-+*^()/]))"
)


def _tokenize(text):
    pos = 0
    out = []
    text = text.strip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise WeylError(f"cannot parse {text[pos:]!r}")
        pos = m.end()
        if m.group("num"):
            out.append(("num", Fraction(m.group("num"))))
        elif m.group("gen"):
            out.append(("gen", (m.group("gen"), int(m.group("idx")))))
        elif m.group("h"):
            out.append(("h", None))
        else:
            out.append(("op", m.group("op")))
    return out


def _parse(text, rank, mask):
    toks = _tokenize(text)
    pos = 0

    def peek():
        return toks[pos] if pos < len(toks) else (None, None)

    def take():
        nonlocal pos
        pos += 1
        return toks[pos - 1]

    def exponent():
        # ^ already consumed; forms: 3, -1, (1/2), (-3/2)
        kind, val = peek()
        if val == "(":
            take()
            sign = 1
            if peek()[1] == "-":
                take()
                sign = -1
            k, num = take()
            if k != "num":
                raise WeylError("bad exponent")
            if peek()[1] == "/":
                take()
                _, den = take()
                num = num / den
            if take()[1] != ")":
                raise WeylError("missing )")
            return sign * num
        sign = 1
        if val == "-":
            take()
            sign = -1
        k, num = take()
        if k != "num":
            raise WeylError("bad exponent")
        return sign * num

    terms = {}
    needed = [""] * rank
    sign = 1
    if peek()[1] in ("+", "-"):
        sign = -1 if take()[1] == "-" else 1
    while True:
        coeff = Fraction(sign)
        half = 0
        a = [0] * rank
        b = [0] * rank
        while True:
            kind, val = take() if pos < len(toks) else (None, None)
            if kind == "num":
                coeff *= val
            elif kind == "h":
                e = 1
                if peek()[1] == "^":
                    take()
                    e = exponent()
                if (2 * e).denominator != 1:
                    raise WeylError("h exponents must be half-integers")
                half += int(2 * e)
            elif kind == "gen":
                which, idx = val
                if not 1 <= idx <= rank:
                    raise WeylError(f"generator index {idx} out of range")
                e = 1
                if peek()[1] == "^":
                    take()
                    e = exponent()
                if e.denominator != 1 if isinstance(e, Fraction) else False:
                    raise WeylError("generator exponents must be integers")
                e = int(e)
                (a if which == "x" else b)[idx - 1] += e
                if e < 0:
                    needed[idx - 1] = which
            else:
                raise WeylError(f"unexpected token {val!r}")
            if peek()[1] == "*":
                take()
                continue
            break
        key = (tuple(a), tuple(b))
        slot = terms.setdefault(key, {})
        slot[half] = slot.get(half, 0) + coeff
        if pos >= len(toks):
            break
        op = take()[1]
        if op not in ("+", "-"):
            raise WeylError(f"unexpected {op!r}")
        sign = -1 if op == "-" else 1
    m = merge_masks(_normalize_mask(rank, mask), tuple(needed))
    return WeylElement(rank, {k: HScalar(v) for k, v in terms.items()}, m)
