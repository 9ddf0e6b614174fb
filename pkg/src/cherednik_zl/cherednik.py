"""The rational Cherednik algebra of Z/lZ through its graded polynomial modules.

A vector is sum_m coeff_m z^m e_i for one isotypic label i.  The cyclic group
acts on z^m e_i through the residue class -(m + i) mod l, so no roots of unity
are ever stored; idempotent projections e_r keep z^m e_i exactly when
r = m + i mod l.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .weyl import as_fraction


class CherednikError(ValueError):
    pass


class NegativeDegree(CherednikError):
    pass


class NotSpherical(CherednikError):
    pass


class BadKappa(CherednikError):
    pass


@dataclass(frozen=True)
class GradedPolyVector:
    l: int
    label: int
    coeffs: tuple  # sorted ((m, Fraction), ...) with nonzero values

    @classmethod
    def make(cls, l, label, coeffs):
        clean = {int(m): as_fraction(v) for m, v in dict(coeffs).items()}
        return cls(l, label % l, tuple(sorted((m, v) for m, v in clean.items() if v)))

    @classmethod
    def basis(cls, l, label, m, coeff=1):
        return cls.make(l, label, {m: coeff})

    def as_dict(self):
        return dict(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def __add__(self, other):
        if (self.l, self.label) != (other.l, other.label):
            raise CherednikError("vectors live in different components")
        d = self.as_dict()
        for m, v in other.coeffs:
            d[m] = d.get(m, 0) + v
        return GradedPolyVector.make(self.l, self.label, d)

    def scale(self, s):
        s = as_fraction(s)
        return GradedPolyVector.make(self.l, self.label, {m: s * v for m, v in self.coeffs})

    def __sub__(self, other):
        return self + other.scale(-1)


def check_kappa(kappa):
    kappa = tuple(as_fraction(k) for k in kappa)
    if not kappa or kappa[0] != 0:
        raise BadKappa("kappa_0 must be 0")
    return kappa


def kappa_to_c(kappa):
    kappa = check_kappa(kappa)
    l = len(kappa)
    return tuple(kappa[i] - kappa[(i + 1) % l] - Fraction(1, l) + (1 if i == 0 else 0) for i in range(l))


def dunkl_apply(v: GradedPolyVector, kappa) -> GradedPolyVector:
    """d/dz + (l/z) sum kappa_i e_i on Laurent vectors."""
    kappa = check_kappa(kappa)
    l = v.l
    return GradedPolyVector.make(l, v.label, {
        m - 1: (m + l * kappa[(m + v.label) % l]) * c for m, c in v.coeffs
    })


def delta_module_action(op: str, v: GradedPolyVector, kappa):
    """Action of z, the Dunkl operator ("d") or gamma on the standard module with label v.label.

    ``gamma`` returns {residue r: component with eigenvalue zeta^r}.
    """
    kappa = check_kappa(kappa)
    l, i = v.l, v.label
    if any(m < 0 for m, _ in v.coeffs):
        raise NegativeDegree("standard modules have no negative degrees")
    if op == "z":
        return GradedPolyVector.make(l, i, {m + 1: c for m, c in v.coeffs})
    if op == "d":
        return GradedPolyVector.make(l, i, {
            m - 1: (m + l * kappa[(m + i) % l] - l * kappa[i]) * c for m, c in v.coeffs if m > 0
        })
    if op == "gamma":
        out = {}
        for m, c in v.coeffs:
            out.setdefault((-(m + i)) % l, {})[m] = c
        return {r: GradedPolyVector.make(l, i, d) for r, d in sorted(out.items())}
    if op.startswith("e"):
        r = int(op[1:]) % l
        return GradedPolyVector.make(l, i, {m: c for m, c in v.coeffs if (m + i) % l == r})
    raise CherednikError(f"unknown operator {op!r}")


def apply_word(word, v: GradedPolyVector, kappa) -> GradedPolyVector:
    """Apply an operator word written left to right, e.g. ["z", "d", "e0"] means z*d*e_0."""
    for op in reversed(list(word)):
        if op == "gamma":
            raise CherednikError("use idempotents e<r> inside words")
        v = delta_module_action(op, v, kappa)
    return v


def _is_spherical(v: GradedPolyVector):
    return all((m + v.label) % v.l == 0 for m, _ in v.coeffs)


def spherical_apply(gen: str, v: GradedPolyVector, kappa) -> GradedPolyVector:
    """z^l ("Z"), d^l ("D") or z*d ("ZD") on the e_0-isotypic part."""
    if not _is_spherical(v):
        raise NotSpherical("vector has components outside the e_0-isotypic part")
    l = v.l
    words = {"Z": ["z"] * l, "D": ["d"] * l, "ZD": ["z", "d"]}
    if gen not in words:
        raise CherednikError(f"unknown spherical generator {gen!r}")
    return apply_word(words[gen], v, kappa)


def lowest_spherical_degree(l: int, i: int) -> int:
    """Smallest m >= 0 with z^m e_i spherical."""
    return (-i) % l


def spherical_to_gwa(l: int, kappa):
    """Affine dictionary from (z^l, d^l, z d) to the generators (a, b, h).

    Returns (alpha, beta, gamma): a = z^l, b = alpha d^l, h = beta z d + gamma.
    """
    kappa = check_kappa(kappa)
    k1 = kappa[1] if l > 1 else Fraction(0)
    return Fraction(1, l ** l), Fraction(1, l), k1 + Fraction(1, l) - 1


def gwa_action_on_cherednik(gen: str, v: GradedPolyVector, kappa) -> GradedPolyVector:
    """Act by a, b or h through spherical_to_gwa."""
    alpha, beta, gamma = spherical_to_gwa(v.l, kappa)
    if gen == "a":
        return spherical_apply("Z", v, kappa)
    if gen == "b":
        return spherical_apply("D", v, kappa).scale(alpha)
    if gen == "h":
        return spherical_apply("ZD", v, kappa).scale(beta) + v.scale(gamma)
    raise CherednikError(f"unknown generator {gen!r}")


def faithfulness_window(l: int, d: int) -> int:
    """Largest degree to test so each residue class mod l gets d + 1 points past the span d."""
    return l * (d + 2) + d


def operators_equal(word1, word2, kappa, d: int) -> bool:
    """Compare two words of degree span and Dunkl order at most d on every standard module."""
    kappa = check_kappa(kappa)
    l = len(kappa)
    top = faithfulness_window(l, d)
    for i in range(l):
        for m in range(top + 1):
            v = GradedPolyVector.basis(l, i, m)
            if apply_word(word1, v, kappa) != apply_word(word2, v, kappa):
                return False
    return True


def laurent_spherical_scalar(word, k: int, kappa):
    """A spherical word maps z^{lk} e_0 (Laurent model) to phi * z^{l(k+s)}; return (s, phi)."""
    kappa = check_kappa(kappa)
    l = len(kappa)
    v = GradedPolyVector.basis(l, 0, l * k)
    shift = 0
    for op in reversed(list(word)):
        if op == "Z":
            v = GradedPolyVector.make(l, 0, {m + l: c for m, c in v.coeffs})
            shift += 1
        elif op == "D":
            for _ in range(l):
                v = dunkl_apply(v, kappa)
            shift -= 1
        elif op == "ZD":
            v = GradedPolyVector.make(l, 0, dunkl_apply(v, kappa).as_dict())
            v = GradedPolyVector.make(l, 0, {m + 1: c for m, c in v.coeffs})
        else:
            raise CherednikError(f"unknown spherical letter {op!r}")
    coeffs = v.as_dict()
    return shift, coeffs.get(l * (k + shift), Fraction(0))


def pbw_decompose(word, kappa, max_q: int | None = None):
    """Coefficients alpha_q with word = sum_q alpha_q * Z^s (zd)^q  (s >= 0) or (zd)^q D^{-s}.

    Solved exactly on the Laurent window and verified on extra points; returns
    (s, [alpha_0, ...]) or raises when no such expression of the given degree exists.
    """
    import sympy

    kappa = check_kappa(kappa)
    l = len(kappa)
    if max_q is None:
        max_q = sum(l if op == "D" or op == "Z" else 1 for op in word)
    ks = list(range(-max_q - 3, max_q + 4))
    rows, rhs = [], []
    shift = None
    for k in ks:
        s, phi = laurent_spherical_scalar(word, k, kappa)
        shift = s
        # basis element value on z^{lk}
        if s >= 0:
            point = l * k          # (zd)^q acts first with eigenvalue lk
        else:
            point = l * (k + s)    # D^{-s} acts first, then (zd)^q sees the new degree
        base = Fraction(1)
        if s < 0:
            _, base = laurent_spherical_scalar(["D"] * (-s), k, kappa)
        rows.append([base * Fraction(point) ** q for q in range(max_q + 1)])
        rhs.append(phi)
    A = sympy.Matrix([[sympy.Rational(x.numerator, x.denominator) for x in r] for r in rows])
    b = sympy.Matrix([sympy.Rational(x.numerator, x.denominator) for x in rhs])
    try:
        sol, params = A.gauss_jordan_solve(b)
    except ValueError as exc:
        raise CherednikError("word is not in the span of the normal-form monomials") from exc
    sol = sol.subs({p: 0 for p in params})
    if A * sol != b:
        raise CherednikError("word is not in the span of the normal-form monomials")
    return shift, [Fraction(int(x.p), int(x.q)) for x in sol]


def c_to_kappa(c):
    """Inverse of kappa_to_c with kappa_0 = 0."""
    c = tuple(as_fraction(v) for v in c)
    if sum(c) != 0:
        raise BadKappa("c must sum to 0")
    l = len(c)
    kappa = [Fraction(0)]
    for i in range(l - 1):
        kappa.append(kappa[i] - c[i] - Fraction(1, l) + (1 if i == 0 else 0))
    return tuple(kappa)
