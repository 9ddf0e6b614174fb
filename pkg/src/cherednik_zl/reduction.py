"""Quantum Hamiltonian reduction of the rank-l Weyl algebra by the moment ideal.

Write N_k = x_k y_k.  Modulo the left ideal generated by the relations
x_{k+1} y_{k+1} - x_k y_k + h c_k every N_k can be traded for a single pivot
N_p, because N_k = N_p - h (s_k - s_p) with s_k = c_1 + ... + c_{k-1}.  An
invariant monomial (a_k - b_k = d for all k) factors per index as a corner
(x_k^d or y_k^{-d}) times a polynomial in N_k, so after the substitution it is
corner * P(N_p).  In chart j the corner is f_j^d or g_j^{-d} and N_p = f_j g_j.
"""
from __future__ import annotations

from fractions import Fraction

from .hpoly import HPoly
from .toric import BadSum, IndexRange
from .weyl import HScalar, WeylElement, WeylError, as_fraction


class NotInvariant(WeylError):
    pass


class MaskMismatch(WeylError):
    pass


class NotFInvariant(WeylError):
    pass


def _check_c(c):
    c = tuple(as_fraction(v) for v in c)
    if sum(c) != 0:
        raise BadSum(f"c sums to {sum(c)}, expected 0")
    return c


def s_values(c):
    """s_k = c_1 + ... + c_{k-1} for k = 1..l (returned with index k-1)."""
    out = [Fraction(0)]
    for k in range(1, len(c)):
        out.append(out[-1] + c[k])
    return tuple(out)


class MomentIdealContext:
    def __init__(self, c):
        self.c = _check_c(c)
        self.l = len(self.c)
        self.s = s_values(self.c)

    def relation(self, k: int) -> WeylElement:
        """x_{k+1} y_{k+1} - x_k y_k + h c_k, indices of x, y read in 1..l."""
        l = self.l
        hi = k % l + 1
        lo = (k - 1) % l + 1
        return (WeylElement.x(hi, l) * WeylElement.y(hi, l)
                - WeylElement.x(lo, l) * WeylElement.y(lo, l)
                + WeylElement.hbar(l) * self.c[k])

    @property
    def relations(self):
        return tuple(self.relation(k) for k in range(self.l))


def invariance_check(u: WeylElement) -> bool:
    for (a, b) in u.terms:
        if len({p - q for p, q in zip(a, b)}) > 1:
            return False
    return True


# polynomials in N with HScalar coefficients: dict power -> HScalar

def _npoly_mul(p, q):
    out = {}
    for i, s in p.items():
        for j, t in q.items():
            out[i + j] = out.get(i + j, HScalar()) + s * t
    return {k: v for k, v in out.items() if v}


def _linear(shift: HScalar):
    """N + shift."""
    return {k: v for k, v in {1: HScalar(1), 0: shift}.items() if v}


def eliminate(u: WeylElement, c, pivot: int, mask=None):
    """Normal form of u modulo the moment ideal: {d: {p: coeff}} meaning sum corner_d * N_pivot^p.

    The corner at each index is x^d or y^{-d} as dictated by ``mask`` (an
    unflagged index uses x^d for d >= 0 and y^{-d} otherwise).
    """
    ctx = c if isinstance(c, MomentIdealContext) else MomentIdealContext(c)
    if not invariance_check(u):
        raise NotInvariant("element has nonzero weight for the torus")
    mask = u.mask if mask is None else mask
    h = HScalar.h()
    out = {}
    for (a, b), coeff in u.items():
        d = a[0] - b[0]
        poly = {0: coeff}
        for k in range(ctx.l):
            m = mask[k]
            if m == "x" or (m == "" and d >= 0):
                if b[k] < 0:
                    raise MaskMismatch(f"y{k + 1}^{b[k]} under mask {mask}")
                roots = [t for t in range(b[k])]           # prod (N - t h)
                shifts = [-t for t in roots]
            else:
                if a[k] < 0:
                    raise MaskMismatch(f"x{k + 1}^{a[k]} under mask {mask}")
                shifts = [d - t for t in range(a[k])]      # prod (N + (d - t) h)
            base = -(ctx.s[k] - ctx.s[pivot - 1])
            for sh in shifts:
                poly = _npoly_mul(poly, _linear(h * (base + sh)))
        slot = out.setdefault(d, {})
        for p, v in poly.items():
            slot[p] = slot.get(p, HScalar()) + v
    return {d: {p: v for p, v in sorted(pp.items()) if v} for d, pp in sorted(out.items())
            if any(v for v in pp.values())}


def chart_mask(j: int, eta, overlap: bool = False):
    l = len(eta)
    mask = [""] * l
    for pos, k in enumerate(eta, start=1):
        if pos < j or (overlap and pos == j):
            mask[k - 1] = "x"
        elif pos > j:
            mask[k - 1] = "y"
    return tuple(mask)


def chart_coordinates(j: int, eta, overlap: bool = False):
    """Quantized (f_j, g_j) as localized rank-l elements."""
    l = len(eta)
    if not 1 <= j <= l:
        raise IndexRange(f"chart {j} outside 1..{l}")
    mask = chart_mask(j, eta, overlap)
    fa, fb, ga, gb = [0] * l, [0] * l, [0] * l, [0] * l
    for pos, k in enumerate(eta, start=1):
        if pos <= j:
            fa[k - 1] = 1
        else:
            fb[k - 1] = -1
        if pos >= j:
            gb[k - 1] = 1
        else:
            ga[k - 1] = -1
    f = WeylElement.monomial(fa, fb, 1, mask)
    g = WeylElement.monomial(ga, gb, 1, mask)
    return f, g


def _rank1(d, poly, overlap):
    mask = ("x",) if overlap else ("",)
    x = WeylElement.x(1, 1, mask=mask)
    xi = WeylElement.y(1, 1, mask=mask)
    N = x * xi
    corner = x ** d if (d >= 0 or overlap) else xi ** (-d)
    out = WeylElement(1, {}, mask)
    for p, v in poly.items():
        out = out + corner * (N ** p) * v
    return out


def reduce_to_chart(u: WeylElement, j: int, c, eta, overlap: bool = False) -> WeylElement:
    """Image of an invariant element in chart j, as a rank-1 element in x = f_j, xi = g_j.

    With ``overlap`` the chart is the overlap with chart j+1, where f_j is invertible.
    """
    l = len(eta)
    if not 1 <= j <= l:
        raise IndexRange(f"chart {j} outside 1..{l}")
    mask = chart_mask(j, eta, overlap)
    for p, q in zip(u.mask, mask):
        if p and p != q:
            raise MaskMismatch(f"element mask {u.mask} is not inside chart mask {mask}")
    forms = eliminate(u, c, eta[j - 1], mask)
    out = WeylElement(1, {}, ("x",) if overlap else ("",))
    for d, poly in forms.items():
        out = out + _rank1(d, poly, overlap)
    return out


def lift_from_chart(w: WeylElement, j: int, eta, overlap: bool = False) -> WeylElement:
    """Substitute x -> f_j, xi -> g_j into a normal-ordered rank-1 element."""
    f, g = chart_coordinates(j, eta, overlap)
    out = WeylElement(len(eta), {}, f.mask)
    for (a, b), s in w.items():
        out = out + (f ** a[0]) * (g ** b[0]) * s
    return out


def quantized_transition(j: int, c, eta):
    """Images (F, G) of (f_{j+1}, g_{j+1}) in the x-localized rank-1 algebra of chart j."""
    l = len(eta)
    if not 1 <= j <= l - 1:
        raise IndexRange(f"overlap {j} outside 1..{l - 1}")
    f1, g1 = chart_coordinates(j + 1, eta)
    mask = chart_mask(j, eta, overlap=True)
    F = reduce_to_chart(f1.with_mask(mask), j, c, eta, overlap=True)
    G = reduce_to_chart(g1.with_mask(mask), j, c, eta, overlap=True)
    return F, G


def gwa_generators(l: int):
    """a = h^{-l/2} x_1...x_l, b = h^{-l/2} y_1...y_l, h = h^{-1} x_1 y_1."""
    scale = HScalar.h(-l)
    a = WeylElement.monomial([1] * l, [0] * l, scale)
    b = WeylElement.monomial([0] * l, [1] * l, scale)
    hh = WeylElement.monomial([1] + [0] * (l - 1), [1] + [0] * (l - 1), HScalar.h(-2))
    return a, b, hh


def as_h_polynomial(u: WeylElement, c) -> HPoly:
    """Write an invariant weight-0 element of F-weight 0 as a polynomial in h = h^{-1} N_1."""
    forms = eliminate(u, c, 1)
    if set(forms) - {0}:
        raise NotFInvariant("element has nonzero torus degree")
    coeffs = {}
    for p, s in forms.get(0, {}).items():
        for half, v in s.items():
            if half + 2 * p != 0:
                raise NotFInvariant(f"term N^{p} h^({half}/2) is not F-invariant")
            coeffs[p] = coeffs.get(p, 0) + v
    top = max(coeffs, default=-1)
    return HPoly([coeffs.get(k, 0) for k in range(top + 1)])


def gwa_presentation(c):
    """(P_ab, P_ba) with a b = P_ab(h), b a = P_ba(h), computed by reduction."""
    c = _check_c(c)
    a, b, _ = gwa_generators(len(c))
    return as_h_polynomial(a * b, c), as_h_polynomial(b * a, c)
