"""Glued chart modules over the quantized resolution.

A glued module assigns to each chart j = 1..l a cyclic module W/W*gen_j with
gen in {G: g_j, F: f_j, XY(lam): f_j g_j - h lam, Zero: 1}.  On the overlap of
charts j and j+1 the generators are glued by u_j = f_j^delta u_{j+1} with
delta = lam_j - lam_{j+1} - c~_j, where G counts as lam = 0 and F as lam = -1.
"""
from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction
from functools import lru_cache

from .category_o import ConditionViolated, epsilon_index, partial_sum, thm1_condition
from .chart import chart_generator, in_left_ideal, x_, xi_
from .reduction import quantized_transition
from .toric import c_tilde as compute_c_tilde, support_divisor_of_symbol
from .weyl import WeylElement, as_fraction


class MicrolocalError(ValueError):
    pass


class NotAdmissible(MicrolocalError):
    pass


class GluingFailure(MicrolocalError):
    def __init__(self, overlap, reason):
        self.overlap = overlap
        super().__init__(f"overlap ({overlap}, {overlap + 1}): {reason}")


class ForbiddenShift(MicrolocalError):
    pass


IRREDUCIBLE, SUB_ON_Z1, SUB_ON_Z2 = "Irreducible", "SubOnZ1", "SubOnZ2"


@dataclass(frozen=True)
class ChartData:
    j: int
    kind: str
    lam: Fraction | None = None

    def effective_lambda(self):
        return {"G": Fraction(0), "F": Fraction(-1)}.get(self.kind, self.lam)

    def to_json(self):
        return {"chart": self.j, "kind": self.kind,
                "lambda": None if self.lam is None else str(self.lam)}


@dataclass(frozen=True)
class GluedModuleSpec:
    label: str
    i: int
    c: tuple
    eta: tuple
    charts: tuple  # ChartData for j = 1..l

    @property
    def l(self):
        return len(self.eta)

    @property
    def c_tilde(self):
        return compute_c_tilde(self.c, self.eta)

    def chart(self, j) -> ChartData:
        return self.charts[j - 1]

    def nonzero_charts(self):
        return [cd.j for cd in self.charts if cd.kind != "Zero"]

    def chart_range(self):
        js = self.nonzero_charts()
        return (min(js), max(js)) if js else None

    def delta(self, j: int):
        """Gluing exponent on overlap (j, j+1), None when either chart is Zero."""
        a, b = self.chart(j), self.chart(j + 1)
        if a.kind == "Zero" or b.kind == "Zero":
            return None
        return a.effective_lambda() - b.effective_lambda() - self.c_tilde[j - 1]

    def deltas(self):
        return {j: self.delta(j) for j in range(1, self.l)}

    def with_lambda(self, j: int, lam) -> "GluedModuleSpec":
        charts = list(self.charts)
        if charts[j - 1].kind != "XY":
            raise MicrolocalError(f"chart {j} carries no free parameter")
        charts[j - 1] = ChartData(j, "XY", as_fraction(lam))
        return replace(self, charts=tuple(charts))

    def to_json(self):
        return {
            "label": self.label,
            "i": self.i,
            "charts": [cd.to_json() for cd in self.charts],
            "delta": {str(j): (None if d is None else str(d)) for j, d in self.deltas().items()},
            "support": sorted(support(self)),
        }


def _frac_tuple(v):
    return tuple(as_fraction(x) for x in v)


def admissible_check(i: int, i_end: int, lam, ct) -> bool:
    """lam = (lam_{i+1}, ..., lam_{i_end}) with lam_i = 0; all gluing exponents integral."""
    full = [Fraction(0)] + [as_fraction(x) for x in lam]
    if len(full) != i_end - i + 1:
        raise MicrolocalError("lambda has the wrong length")
    for k in range(len(full) - 1):
        j = i + k
        if (full[k] - full[k + 1] - Fraction(ct[j - 1])).denominator != 1:
            return False
    return True


def canonical_lambda(i: int, j: int, ct) -> Fraction:
    return -partial_sum(ct, i, j)


def _require_condition(c, theta):
    if theta is not None and not thm1_condition(c, theta):
        raise ConditionViolated("parameter condition fails")


def build_M_delta(i: int, c, eta, theta=None) -> GluedModuleSpec:
    c = _frac_tuple(c)
    _require_condition(c, theta)
    ct = compute_c_tilde(c, eta)
    l = len(eta)
    charts = []
    for j in range(1, l + 1):
        if j < i:
            charts.append(ChartData(j, "Zero"))
        elif j == i:
            charts.append(ChartData(j, "G"))
        else:
            charts.append(ChartData(j, "XY", canonical_lambda(i, j, ct)))
    spec = GluedModuleSpec("delta", i, c, tuple(eta), tuple(charts))
    if not admissible_check(i, l, [cd.lam for cd in charts[i:]], ct):
        raise NotAdmissible("canonical parameters failed admissibility")
    return spec


def build_M_nabla(i: int, c, eta, theta=None) -> GluedModuleSpec:
    spec = build_M_delta(i, c, eta, theta)
    charts = []
    for cd in spec.charts:
        if cd.kind == "XY" and cd.lam.denominator == 1 and cd.lam < 0:
            cd = ChartData(cd.j, "XY", Fraction(0))
        charts.append(cd)
    return replace(spec, label="nabla", charts=tuple(charts))


def build_L(i: int, c, eta) -> GluedModuleSpec:
    c = _frac_tuple(c)
    ct = compute_c_tilde(c, eta)
    l = len(eta)
    eps = epsilon_index(i, ct)
    charts = []
    for j in range(1, l + 1):
        if j < i or j > eps:
            charts.append(ChartData(j, "Zero"))
        elif j == i:
            charts.append(ChartData(j, "G"))
        elif j == eps:
            charts.append(ChartData(j, "F"))
        else:
            charts.append(ChartData(j, "XY", canonical_lambda(i, j, ct)))
    return GluedModuleSpec("L", i, c, tuple(eta), tuple(charts))


def build_weight_spec(c, eta, lam1) -> GluedModuleSpec:
    """XY on every chart, lam_1 given; the chart-1 factor reaches D_0."""
    c = _frac_tuple(c)
    ct = compute_c_tilde(c, eta)
    lam1 = as_fraction(lam1)
    charts = tuple(ChartData(j, "XY", lam1 - partial_sum(ct, 1, j)) for j in range(1, len(eta) + 1))
    return GluedModuleSpec("weight", 1, c, tuple(eta), charts)


@lru_cache(maxsize=256)
def _transition(j, c, eta):
    return quantized_transition(j, c, eta)


def transported_generator(spec: GluedModuleSpec, j: int) -> WeylElement:
    """Generator of chart j+1 written in the x-localized algebra of chart j."""
    F, G = _transition(j, spec.c, spec.eta)
    cd = spec.chart(j + 1)
    if cd.kind == "G":
        return G
    if cd.kind == "F":
        return F
    if cd.kind == "XY":
        return F * G - WeylElement.hbar(1, mask=("x",)) * cd.lam
    return WeylElement.one(1, ("x",))


def wellformed_check(spec: GluedModuleSpec, tamper=None) -> dict:
    """Certificate {overlap: reason}; raises GluingFailure on the first bad overlap.

    ``tamper`` maps an overlap to an integer added to its gluing exponent; it
    exists so the failure path can be exercised.
    """
    tamper = tamper or {}
    cert = {}
    for j in range(1, spec.l):
        here = chart_generator(spec.chart(j).kind, spec.chart(j).lam, localized=True)
        there = transported_generator(spec, j)
        d = spec.delta(j)
        if d is None:
            one = WeylElement.one(1, ("x",))
            for name, gen in (("left", here), ("right", there)):
                zero_side = spec.chart(j).kind == "Zero" if name == "left" else spec.chart(j + 1).kind == "Zero"
                if not zero_side and not in_left_ideal(one, gen, localized=True):
                    raise GluingFailure(j, f"{name} chart does not vanish where its neighbour is zero")
            cert[j] = "zero on overlap"
            continue
        if d.denominator != 1:
            raise GluingFailure(j, f"gluing exponent {d} is not an integer")
        d = int(d) + tamper.get(j, 0)
        fwd = there * x_(True, -d)
        back = here * x_(True, d)
        if not in_left_ideal(fwd, here, localized=True):
            raise GluingFailure(j, "transported generator is not in the chart ideal")
        if not in_left_ideal(back, there, localized=True):
            raise GluingFailure(j, "chart generator is not in the transported ideal")
        cert[j] = f"glued with exponent {d}"
    return cert


def support(spec: GluedModuleSpec) -> frozenset:
    out = set()
    table = {"G": "g", "F": "f", "XY": "both"}
    for cd in spec.charts:
        if cd.kind != "Zero":
            out |= support_divisor_of_symbol(cd.j, spec.l, table[cd.kind])
    return frozenset(out)


def classify_local(lam) -> str:
    lam = as_fraction(lam)
    if lam.denominator != 1:
        return IRREDUCIBLE
    return SUB_ON_Z1 if lam >= 0 else SUB_ON_Z2


# shift maps on M_lam = W / W(x xi - h lam)

def shift_words(lam, direction: int):
    """(phi, psi) words for M_lam -> M_{lam+direction} and back."""
    lam = as_fraction(lam)
    hinv = WeylElement.hbar(1, -2)
    if direction == 1:
        if lam == -1:
            raise ForbiddenShift("lambda = -1 has no inverse scalar")
        return hinv * xi_(), x_() * (1 / (lam + 1))
    if direction == -1:
        if lam == 0:
            raise ForbiddenShift("lambda = 0 cannot be lowered")
        return x_() * (1 / lam), hinv * xi_()
    raise MicrolocalError("direction must be +1 or -1")


def check_shift(lam, direction: int) -> dict:
    """Verify the words intertwine and compose to the identity modulo each ideal."""
    lam = as_fraction(lam)
    new = lam + direction
    phi, psi = shift_words(lam, direction)
    g_old = chart_generator("XY", lam)
    g_new = chart_generator("XY", new)
    one = WeylElement.one(1)
    return {
        "phi_defined": in_left_ideal(g_old * phi, g_new),
        "psi_defined": in_left_ideal(g_new * psi, g_old),
        "psi_phi_identity": in_left_ideal(phi * psi - one, g_old),
        "phi_psi_identity": in_left_ideal(psi * phi - one, g_new),
    }


def local_shift_check(lam, m: int) -> dict:
    """v_lam -> x^{-m} v_{lam+m} on the x-invertible locus, inverse x^m."""
    lam = as_fraction(lam)
    g_old = chart_generator("XY", lam, localized=True)
    g_new = chart_generator("XY", lam + m, localized=True)
    fwd, back = x_(True, -m), x_(True, m)
    one = WeylElement.one(1, ("x",))
    return {
        "forward_defined": in_left_ideal(g_old * fwd, g_new, localized=True),
        "backward_defined": in_left_ideal(g_new * back, g_old, localized=True),
        "identity": in_left_ideal(fwd * back - one, g_old, localized=True)
        and in_left_ideal(back * fwd - one, g_new, localized=True),
    }


def shift_isomorphism(spec: GluedModuleSpec, j: int, direction: int):
    cd = spec.chart(j)
    if cd.kind != "XY":
        raise MicrolocalError(f"chart {j} carries no free parameter")
    cert = check_shift(cd.lam, direction)
    phi, psi = shift_words(cd.lam, direction)
    new = spec.with_lambda(j, cd.lam + direction)
    cert["glued"] = bool(wellformed_check(new))
    if not all(cert.values()):
        raise MicrolocalError(f"shift certificate failed: {cert}")
    return new, (phi, psi), cert


def irreducibility_certificate(spec: GluedModuleSpec):
    reasons = {}
    ok = True
    js = spec.nonzero_charts()
    if not js:
        return False, {"all": "zero module"}
    first, last = js[0], js[-1]
    for j in js:
        cd = spec.chart(j)
        if cd.kind == "G":
            good = j == first
            reasons[j] = "cyclic quotient by g" if good else "g-quotient away from the first chart"
        elif cd.kind == "F":
            good = j == last
            reasons[j] = "cyclic quotient by f" if good else "f-quotient away from the last chart"
        else:
            cls = classify_local(cd.lam)
            good = cls == IRREDUCIBLE and j not in (first,)
            reasons[j] = cls if cd.kind == "XY" else cd.kind
        ok = ok and good
    return ok, reasons
