"""End-to-end acceptance checks; each prints one PASS/FAIL line."""
import itertools
import random
import time
from fractions import Fraction

import pytest

from cherednik_zl.category_o import (
    GWA, LowestWeightModule, delta_module, epsilon_index, h_prime_shift, irreducible_quotient,
    multiplicity_bruteforce, multiplicity_formula, s_value,
)
from cherednik_zl.cherednik import (
    GradedPolyVector, gwa_action_on_cherednik, kappa_to_c, lowest_spherical_degree,
)
from cherednik_zl.hpoly import HPoly
from cherednik_zl.microlocal import (
    ForbiddenShift, MicrolocalError, build_L, build_M_delta, build_M_nabla, build_weight_spec, check_shift,
    support, wellformed_check,
)
from cherednik_zl.reduction import gwa_presentation, s_values
from cherednik_zl.sampling import (
    integral_sum_count, random_c, random_c_in_chamber, random_kappa, random_parameters,
    random_symbol,
)
from cherednik_zl.sections import (
    OutOfRange, SectionsError, explicit_delta_spec, b_locally_nilpotent_on_sections, global_section_v,
    global_sections_basis, graded_dimensions, v_range,
)
from cherednik_zl.toric import c_tilde, ordering_eta, validate_theta
from cherednik_zl.weyl import normal_order, star_multiply


@pytest.fixture
def report(capsys):
    lines = []

    def emit(n, ok, elapsed, bound=None, note=""):
        status = "PASS" if ok else "FAIL"
        limit = f" (limit {bound} s)" if bound else ""
        lines.append(f"ACCEPTANCE {n}: {status} in {elapsed:.2f} s{limit}{note}")

    yield emit
    with capsys.disabled():
        for line in lines:
            print("\n" + line, end="")


def _trivial_parameters():
    return (0,), (1,), (Fraction(0),)


def _params(rng, l, cls=None):
    return random_parameters(rng, l, cls) if l > 1 else _trivial_parameters()


def test_star_product_oracle(report):
    rng = random.Random(101)
    start = time.perf_counter()
    bad = 0
    for _ in range(500):
        rank = rng.randint(1, 3)
        f = random_symbol(rng, rank, 6)
        g = random_symbol(rng, rank, 6)
        if normal_order(f) * normal_order(g) != star_multiply(f, g):
            bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 5
    report(1, ok, elapsed, 5, f", {bad} mismatches of 500")
    assert ok


def test_gwa_extraction(report):
    rng = random.Random(102)
    start = time.perf_counter()
    bad = 0
    for l in range(1, 5):
        for _ in range(50):
            c = random_c(rng, l)
            pab, pba = gwa_presentation(c)
            want = HPoly.from_roots(s_values(c))
            if pab != want or pba != want.shift(1):
                bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 10
    report(2, ok, elapsed, 10, f", {bad} mismatches")
    assert ok


def _chain_model(l, i, c, alg):
    """GWA standard module for the Cherednik label i (label 0 stands for l)."""
    k = (i - 1) % l + 1
    return LowestWeightModule(k, s_value(c, k), alg.P_ba)


def test_cherednik_gwa_intertwining(report):
    rng = random.Random(103)
    start = time.perf_counter()
    bad = 0
    for l in range(1, 5):
        for _ in range(20):
            kappa = random_kappa(rng, l)
            c = kappa_to_c(kappa)
            alg = GWA(c)
            for i in range(l):
                model = _chain_model(l, i, c, alg)
                m0 = lowest_spherical_degree(l, i)
                n = 0
                while m0 + l * n <= 50:
                    v = GradedPolyVector.basis(l, i, m0 + l * n)
                    for gen in ("a", "b", "h"):
                        got = gwa_action_on_cherednik(gen, v, kappa)
                        want = model.act(gen, {n: Fraction(1)})
                        mapped = {(m - m0) // l: x for m, x in got.coeffs}
                        if mapped != want:
                            bad += 1
                    n += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 30
    report(3, ok, elapsed, 30, f", {bad} mismatches")
    assert ok


def test_eigenvalue_formula(report):
    rng = random.Random(104)
    start = time.perf_counter()
    bad = 0
    for l in range(1, 6):
        for _ in range(50):
            theta = _params(rng, l)[0]
            eta = ordering_eta(theta)
            c = random_c(rng, l)
            ct = c_tilde(c, eta)
            shift = h_prime_shift(c, eta)
            alg = GWA(c)
            for i in range(1, l + 1):
                d = delta_module(i, c, eta, alg)
                for m in range(8):
                    if d.eigenvalue(m) - shift != m + sum(ct[:i - 1], Fraction(0)):
                        bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0
    report(4, ok, elapsed, note=f", {bad} mismatches")
    assert ok


def test_gluing_well_defined(report):
    rng = random.Random(105)
    start = time.perf_counter()
    bad = 0
    checked = 0
    for l in range(1, 6):
        for _ in range(100):
            theta, eta, c = _params(rng, l)
            for i in range(1, l + 1):
                for build in (build_M_delta, build_M_nabla, build_L):
                    try:
                        wellformed_check(build(i, c, eta))
                    except MicrolocalError:
                        bad += 1
                    checked += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0
    report(5, ok, elapsed, note=f", {checked} modules, {bad} failures")
    assert ok


def test_multiplicity_formula_matches_characters(report):
    rng = random.Random(106)
    start = time.perf_counter()
    bad = 0
    classes = {0: 0, 1: 0, 2: 0}
    plan = []
    for n in range(500):
        l = 2 + n % 4
        cls = (n // 4) % 3
        if cls == 2 and l == 2:
            cls = 1
        plan.append((l, cls))
    for l, cls in plan:
        theta, eta, c = random_parameters(rng, l, cls)
        ct = c_tilde(c, eta)
        classes[min(integral_sum_count(ct), 2)] += 1
        for i in range(1, l + 1):
            got = multiplicity_bruteforce(i, c, eta)
            if tuple(got) != multiplicity_formula(i, ct, c, theta) or set(got.values()) != {1}:
                bad += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and elapsed < 60 and all(classes.values())
    report(6, ok, elapsed, 60, f", classes {classes}, {bad} mismatches")
    assert ok


def test_explicit_sections(report):
    rng = random.Random(107)
    start = time.perf_counter()
    bad = 0
    counts = {"v": 0, "delta": 0, "L": 0}
    for l in range(1, 5):
        for cls in (0, 1, 2):
            if l == 1 and cls:
                continue
            if l == 2 and cls == 2:
                continue
            theta, eta, c = _params(rng, l, cls)
            ct = c_tilde(c, eta)
            for i in range(1, l + 1):
                app = explicit_delta_spec(i, c, eta)
                for j in range(i, l + 1):
                    try:
                        bound = v_range(app, j)
                    except OutOfRange:
                        continue
                    for m in range(bound if bound is not None else 30):
                        try:
                            global_section_v(app, j, m)
                        except SectionsError:
                            bad += 1
                        counts["v"] += 1
                spec = build_M_delta(i, c, eta)
                base = sum(ct[:i - 1], Fraction(0))
                dims = graded_dimensions(spec, 30)
                if dims != {base + n: 1 for n in range(31)}:
                    bad += 1
                counts["delta"] += 1
                if epsilon_index(i, ct) <= l:
                    size = len(global_sections_basis(build_L(i, c, eta), 30))
                    if size != irreducible_quotient(delta_module(i, c, eta)).dim:
                        bad += 1
                    counts["L"] += 1
    elapsed = time.perf_counter() - start
    ok = bad == 0 and all(counts.values())
    report(7, ok, elapsed, note=f", checked {counts}, {bad} failures")
    assert ok


def _chambers(l):
    """One theta per ordering eta, found by scanning small integer vectors."""
    found = {}
    for head in itertools.product(range(-3, 4), repeat=l - 1):
        theta = tuple(head) + (-sum(head),)
        if validate_theta(theta):
            continue
        found.setdefault(ordering_eta(theta), theta)
    return sorted(found.items())


def test_support_matches_nilpotency(report):
    rng = random.Random(108)
    start = time.perf_counter()
    bad = 0
    checked = 0
    for l in range(1, 5):
        chambers = _chambers(l) if l > 1 else [((1,), (0,))]
        for eta, theta in chambers:
            for cls in (0, 1, 2):
                if l == 1:
                    c = (Fraction(0),)
                elif cls == 2 and l == 2:
                    continue
                else:
                    c = random_c_in_chamber(rng, theta, cls)
                specs = [build(i, c, eta) for i in range(1, l + 1)
                         for build in (build_M_delta, build_M_nabla, build_L)]
                specs.append(build_weight_spec(c, eta, Fraction(2, 7)))
                for spec in specs:
                    inside = support(spec) <= set(range(1, l + 1))
                    if inside != b_locally_nilpotent_on_sections(spec, 4):
                        bad += 1
                    checked += 1
                if l == 1:
                    break
    elapsed = time.perf_counter() - start
    ok = bad == 0
    report(8, ok, elapsed, note=f", {checked} modules, {bad} disagreements")
    assert ok


def test_shift_intertwiners(report):
    rng = random.Random(109)
    start = time.perf_counter()
    bad = 0
    lams = [Fraction(n) for n in (-3, -2, 0, 1, 2)]
    while len(lams) < 100:
        lam = Fraction(rng.randint(-40, 40), rng.randint(1, 7))
        if lam != -1:
            lams.append(lam)
    for lam in lams:
        try:
            if not all(check_shift(lam, 1).values()):
                bad += 1
        except ForbiddenShift:
            bad += 1
    raised = False
    try:
        check_shift(Fraction(-1), 1)
    except ForbiddenShift:
        raised = True
    elapsed = time.perf_counter() - start
    ok = bad == 0 and raised
    report(9, ok, elapsed, note=f", {bad} failures of {len(lams)}, forbidden at -1: {raised}")
    assert ok
