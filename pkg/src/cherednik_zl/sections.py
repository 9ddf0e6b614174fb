"""Global sections of glued chart modules.

Chart j of a glued module has the coset basis e_j(k): f_j^k u_j for k >= 0 and
g_j^{-k} u_j for k < 0 (only k >= 0 for G, only k <= 0 for F).  On the
overlap with chart j+1 everything lands in x-Laurent multiples of u_j.

A section is stored with rational coefficients a_j; the actual element is
a_j h^{-w/2} e_j(k) where w is the F-weight of e_j(k), so every stored family
has F-weight 0 by construction.  ``global_section_v`` builds its families from
the explicit restriction constants instead and checks the weight.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from .category_o import epsilon_index, partial_sum
from .chart import chart_generator, coset_basis_word, left_reduce, x_, xi_
from .microlocal import ChartData, GluedModuleSpec, NotAdmissible, _transition
from .reduction import chart_mask, gwa_generators, reduce_to_chart
from .toric import c_tilde as compute_c_tilde
from .weyl import HScalar, WeylElement, as_fraction


class SectionsError(ValueError):
    pass


class OutOfRange(SectionsError):
    pass


class InconsistentFamily(SectionsError):
    pass


def res_constants(m: int, lam) -> HScalar:
    """C_m = h^m (lam+1)...(lam+m) for m >= 0, C'_m = h^{-m} (lam+m+1)...(lam) for m < 0."""
    lam = as_fraction(lam)
    val = Fraction(1)
    if m >= 0:
        for t in range(1, m + 1):
            val *= lam + t
        return HScalar({2 * m: val})
    for t in range(m + 1, 1):
        val *= lam + t
    return HScalar({-2 * m: val})


# ---------------------------------------------------------------- restriction

def res_apply(side: int, k: int, lam_j, lam_next, ct_j):
    """Displayed restriction rules; returns (n, coeff) meaning coeff * f_j^n u_j on the overlap.

    side 1 restricts e_j(k) from chart j, side 2 restricts e_{j+1}(k) from chart j+1.
    """
    lam_j, lam_next, ct_j = as_fraction(lam_j), as_fraction(lam_next), as_fraction(ct_j)
    delta = lam_j - lam_next - ct_j
    if delta.denominator != 1:
        raise NotAdmissible(f"gluing exponent {delta} is not an integer")
    delta = int(delta)
    if side == 1:
        if k >= 0:
            return k, HScalar(1)
        return k, res_constants(k, lam_j)
    if side == 2:
        if k < 0:
            return k - delta, HScalar(1)
        return k - delta, res_constants(k, lam_next)
    raise SectionsError("side must be 1 or 2")


def _single_power(w: WeylElement, j: int):
    """Read coeff * x^n from a reduced overlap element."""
    if w.is_zero():
        return None
    if len(w.terms) != 1:
        raise InconsistentFamily(f"overlap image on chart {j} is not a single power: {w}")
    (a, b), s = next(iter(w.items()))
    if b[0] != 0:
        raise InconsistentFamily(f"overlap image on chart {j} still involves xi: {w}")
    return a[0], s


def _word(a, b, localized):
    return x_(localized, a) * xi_(localized, b)


def res_direct(spec: GluedModuleSpec, side: int, j: int, k: int):
    """Restriction to overlap (j, j+1) computed by substitution and division."""
    here = spec.chart(j)
    gen = chart_generator(here.kind, here.lam, localized=True)
    if side == 1:
        a, b = coset_basis_word(here.kind, k)
        w = _word(a, b, True)
    else:
        there = spec.chart(j + 1)
        a, b = coset_basis_word(there.kind, k)
        F, G = _transition(j, spec.c, spec.eta)
        d = spec.delta(j)
        w = (F ** a) * (G ** b) * x_(True, -int(d))
    return _single_power(left_reduce(w, gen, localized=True), j)


# ---------------------------------------------------------------- weights

def u_weights(spec: GluedModuleSpec) -> dict:
    js = spec.nonzero_charts()
    if not js:
        return {}
    l = spec.l
    w = {js[0]: 0}
    for j in js[:-1]:
        d = spec.delta(j)
        if d is None:
            raise SectionsError("nonzero charts must be consecutive")
        w[j + 1] = w[j] - int(d) * (2 * j - l)
    return w


def basis_weight(spec: GluedModuleSpec, j: int, k: int, weights=None) -> int:
    weights = weights if weights is not None else u_weights(spec)
    l = spec.l
    if k >= 0:
        return k * (2 * j - l) + weights[j]
    return -k * (l - 2 * j + 2) + weights[j]


def chart_eigen_shift(spec: GluedModuleSpec, j: int) -> Fraction:
    """e_j(k) has h'-eigenvalue k + chart_eigen_shift(j)."""
    return spec.chart(j).effective_lambda() + partial_sum(spec.c_tilde, 1, j)


# ---------------------------------------------------------------- families

@dataclass(frozen=True)
class GlobalSectionFamily:
    eigenvalue: Fraction                 # h' = h^{-1} x_{eta_1} y_{eta_1}
    comps: tuple                         # ((j, k, a_j), ...) with a_j rational

    def as_dict(self):
        return {j: (k, a) for j, k, a in self.comps}

    def to_json(self):
        return {"eigenvalue": str(self.eigenvalue),
                "charts": [{"chart": j, "exponent": k, "coeff": str(a)} for j, k, a in self.comps]}


def _level_slots(spec, mu):
    slots = {}
    for j in spec.nonzero_charts():
        k = mu - chart_eigen_shift(spec, j)
        if k.denominator != 1:
            continue
        k = int(k)
        if coset_basis_word(spec.chart(j).kind, k) is not None:
            slots[j] = k
    return slots


def _normalized(spec, j, k, weights):
    return HScalar({-basis_weight(spec, j, k, weights): 1})


def _overlap_rows(spec, slots, weights):
    """Linear conditions (one row per overlap) on the rational unknowns a_j."""
    rows = []
    order = sorted(slots)
    for j in range(1, spec.l):
        if spec.delta(j) is None:
            continue
        row = {}
        for side, jj in ((1, j), (2, j + 1)):
            if jj not in slots:
                continue
            got = res_direct(spec, side, j, slots[jj])
            if got is None:
                continue
            n, s = got
            target = n * (2 * j - spec.l) + weights[j]
            s = s * _normalized(spec, jj, slots[jj], weights) * HScalar({target: 1})
            half, val = s.single()
            if half != 0:
                raise InconsistentFamily(f"restriction on overlap {j} is not F-equivariant")
            row[jj] = row.get(jj, 0) + (val if side == 1 else -val)
        if row:
            rows.append([row.get(jj, Fraction(0)) for jj in order])
    return order, rows


def _nullspace(rows, ncols):
    import sympy

    if ncols == 0:
        return []
    if not rows:
        return [[Fraction(int(i == c)) for i in range(ncols)] for c in range(ncols)]
    M = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in r] for r in rows])
    out = []
    for vec in M.nullspace():
        out.append([Fraction(int(x.p), int(x.q)) for x in vec])
    return out


def base_eigenvalue(spec: GluedModuleSpec) -> Fraction:
    return chart_eigen_shift(spec, spec.nonzero_charts()[0])


def sections_at(spec: GluedModuleSpec, mu) -> list:
    """Basis of F-weight-0 global sections with h'-eigenvalue mu."""
    mu = as_fraction(mu)
    weights = u_weights(spec)
    slots = _level_slots(spec, mu)
    order, rows = _overlap_rows(spec, slots, weights)
    fams = []
    for vec in _nullspace(rows, len(order)):
        comps = tuple((j, slots[j], a) for j, a in zip(order, vec) if a)
        fams.append(GlobalSectionFamily(mu, comps))
    return fams


def global_sections_basis(spec: GluedModuleSpec, cutoff: int) -> list:
    """All basis families with eigenvalue base + n, -cutoff <= n <= cutoff."""
    if not spec.nonzero_charts():
        return []
    base = base_eigenvalue(spec)
    out = []
    for n in range(-cutoff, cutoff + 1):
        out.extend(sections_at(spec, base + n))
    return out


def graded_dimensions(spec: GluedModuleSpec, cutoff: int) -> dict:
    dims = {}
    for fam in global_sections_basis(spec, cutoff):
        dims[fam.eigenvalue] = dims.get(fam.eigenvalue, 0) + 1
    return dict(sorted(dims.items()))


def default_cutoff(spec: GluedModuleSpec) -> int:
    ct = spec.c_tilde
    big = 0
    for i in range(1, spec.l + 1):
        for j in range(i, spec.l + 1):
            s = partial_sum(ct, i, j)
            if s.denominator == 1:
                big = max(big, abs(int(s)))
    return spec.l + 10 + big


# ---------------------------------------------------------------- consistency

def actual_component(spec, j, k, a, weights=None):
    weights = weights if weights is not None else u_weights(spec)
    return _normalized(spec, j, k, weights) * a


def family_is_consistent(spec: GluedModuleSpec, comps: dict) -> bool:
    """comps: {j: (k, HScalar)}; checks Res_1 = Res_2 on every overlap by direct computation."""
    for j in range(1, spec.l):
        if spec.delta(j) is None:
            continue
        sides = []
        for side, jj in ((1, j), (2, j + 1)):
            if jj not in comps:
                sides.append({})
                continue
            k, s = comps[jj]
            got = res_direct(spec, side, j, k)
            sides.append({} if got is None or not s else {got[0]: got[1] * s})
        clean = [{n: v for n, v in d.items() if v} for d in sides]
        if clean[0] != clean[1]:
            return False
    return True


def f_weight_of_family(spec: GluedModuleSpec, comps: dict):
    weights = u_weights(spec)
    found = set()
    for j, (k, s) in comps.items():
        for half in s.terms:
            found.add(half + basis_weight(spec, j, k, weights))
    return found.pop() if len(found) == 1 else None


# ---------------------------------------------------------------- explicit sections

def explicit_lambda(i: int, ct, l: int):
    """Parameters in the strict regime: lam_i = 0, lam_k = -(c~_i + ... + c~_{k-1}) - 1."""
    lam = {i: Fraction(0)}
    for k in range(i + 1, l + 1):
        lam[k] = -partial_sum(ct, i, k) - 1
    return lam


def m_exponent(j: int, k: int, lam, ct) -> Fraction:
    if j > k:
        raise SectionsError("need j <= k")
    return -as_fraction(lam[k]) - partial_sum(ct, j, k)


def v_range(spec: GluedModuleSpec, j: int):
    """Allowed m for v_{j,m}: 0 <= m < bound (None for unbounded)."""
    ct = spec.c_tilde
    if partial_sum(ct, spec.i, j).denominator != 1:
        raise OutOfRange(f"c~ partial sum from {spec.i} to {j} is not integral")
    eps = epsilon_index(j, ct)
    if eps == spec.l + 1:
        return None
    return int(partial_sum(ct, j, eps))


def global_section_v(spec: GluedModuleSpec, j: int, m: int) -> dict:
    """The explicit family v_{j,m} as {chart: (k, HScalar)}, verified on every overlap."""
    ct = spec.c_tilde
    i, l = spec.i, spec.l
    if not i <= j <= l:
        raise OutOfRange(f"chart {j} outside {i}..{l}")
    bound = v_range(spec, j)
    if m < 0 or (bound is not None and m >= bound):
        raise OutOfRange(f"m = {m} outside [0, {bound})")
    lam = {k: spec.chart(k).effective_lambda() for k in range(i, l + 1)}
    for k in range(i + 1, l + 1):
        if lam[k] >= -partial_sum(ct, i, k):
            raise OutOfRange(f"lambda_{k} is outside the strict regime")
    expo = {k: m_exponent(j, k, lam, ct) + m for k in range(j, l + 1)}
    for k, e in expo.items():
        if e.denominator != 1:
            raise InconsistentFamily(f"non-integral exponent at chart {k}")
    comps = {}
    scale = HScalar(1)
    for k in range(l, j - 1, -1):
        comps[k] = (int(expo[k]), scale)
        scale = scale * res_constants(int(expo[k]), lam[k])
    w = f_weight_of_family(spec, comps)
    if w is None:
        raise InconsistentFamily("family is not F-homogeneous")
    norm = HScalar({-w: 1})
    comps = {k: (e, s * norm) for k, (e, s) in comps.items()}
    if any(not s for _, s in comps.values()):
        raise InconsistentFamily("a scaling constant vanished")
    if not family_is_consistent(spec, comps):
        raise InconsistentFamily(f"v_({j},{m}) fails overlap consistency")
    return comps


def explicit_delta_spec(i: int, c, eta) -> GluedModuleSpec:
    """Delta-type module with every lam_k one below its canonical value."""
    c = tuple(as_fraction(v) for v in c)
    ct = compute_c_tilde(c, eta)
    l = len(eta)
    lam = explicit_lambda(i, ct, l)
    charts = []
    for j in range(1, l + 1):
        if j < i:
            charts.append(ChartData(j, "Zero"))
        elif j == i:
            charts.append(ChartData(j, "G"))
        else:
            charts.append(ChartData(j, "XY", lam[j]))
    return GluedModuleSpec("delta", i, c, tuple(eta), tuple(charts))


# ---------------------------------------------------------------- algebra action

@lru_cache(maxsize=512)
def _generator_on_chart(gen: str, j: int, c, eta):
    a, b, h = gwa_generators(len(eta))
    u = {"a": a, "b": b, "h": h}[gen]
    return reduce_to_chart(u.with_mask(chart_mask(j, eta)), j, c, eta)


def act_on_family(spec: GluedModuleSpec, gen: str, fam: GlobalSectionFamily, shift: int):
    """Apply a, b or h chart by chart; ``shift`` is the expected eigenvalue change."""
    weights = u_weights(spec)
    out = []
    for j, k, a in fam.comps:
        cd = spec.chart(j)
        op = _generator_on_chart(gen, j, spec.c, spec.eta)
        ea, eb = coset_basis_word(cd.kind, k)
        elem = op * _word(ea, eb, False) * actual_component(spec, j, k, a, weights)
        rem = left_reduce(elem, chart_generator(cd.kind, cd.lam))
        for (pa, pb), s in rem.items():
            kk = pa[0] if pa[0] else -pb[0]
            if pa[0] and pb[0]:
                raise InconsistentFamily("coset remainder is not a basis word")
            s = s * _normalized(spec, j, kk, weights).inverse()
            half, val = s.single()
            if half != 0:
                raise InconsistentFamily("action did not preserve F-weight 0")
            out.append((j, kk, val))
    return GlobalSectionFamily(fam.eigenvalue + shift, tuple(sorted(out)))


def coordinates_in(fam: GlobalSectionFamily, basis: list):
    """Solve fam = sum t_r basis_r exactly; returns the list t or None."""
    import sympy

    keys = sorted({(j, k) for b in basis + [fam] for j, k, _ in b.comps})
    if not basis:
        return [] if not fam.comps else None

    def vec(b):
        d = {(j, k): a for j, k, a in b.comps}
        return [d.get(key, Fraction(0)) for key in keys]

    R = lambda v: sympy.Rational(v.numerator, v.denominator)  # noqa: E731
    A = sympy.Matrix([[R(x) for x in vec(b)] for b in basis]).T
    rhs = sympy.Matrix([R(x) for x in vec(fam)])
    try:
        sol, params = A.gauss_jordan_solve(rhs)
    except ValueError:
        return None
    sol = sol.subs({p: 0 for p in params})
    return [Fraction(int(x.p), int(x.q)) for x in sol]


def _family_is_zero(fam: GlobalSectionFamily) -> bool:
    total = {}
    for j, k, a in fam.comps:
        total[(j, k)] = total.get((j, k), 0) + a
    return not any(total.values())


def b_locally_nilpotent_on_sections(spec: GluedModuleSpec, cutoff: int) -> bool:
    """Apply b to every basis family in the window until it dies.

    A chain that is still nonzero once it drops below the window counts as
    non-nilpotent; on a lowest-weight module every chain dies inside it.
    """
    if not spec.nonzero_charts():
        return True
    floor = base_eigenvalue(spec) - cutoff
    for fam in global_sections_basis(spec, cutoff):
        cur = fam
        while not _family_is_zero(cur):
            if cur.eigenvalue < floor:
                return False
            cur = act_on_family(spec, "b", cur, -1)
    return True
