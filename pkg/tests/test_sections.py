import random
from fractions import Fraction

import pytest

from cherednik_zl.category_o import GWA, delta_module, epsilon_index, irreducible_quotient
from cherednik_zl.microlocal import build_L, build_M_delta, build_M_nabla, build_weight_spec
from cherednik_zl.sampling import random_parameters
from cherednik_zl.sections import (
    OutOfRange, act_on_family, explicit_delta_spec, b_locally_nilpotent_on_sections, base_eigenvalue,
    coordinates_in, global_section_v, global_sections_basis, graded_dimensions, res_apply,
    res_constants, res_direct, sections_at, v_range,
)
from cherednik_zl.toric import c_tilde, c_to_ctilde_inverse, ordering_eta
from cherednik_zl.weyl import HScalar

THETA4 = (-3, 1, 1, 1)
ETA4 = ordering_eta(THETA4)
CT4 = (Fraction(1, 2), Fraction(1, 2), Fraction(3))
C4 = c_to_ctilde_inverse(CT4, ETA4)


def test_res_constants():
    assert res_constants(0, Fraction(1, 2)) == HScalar(1)
    assert res_constants(2, Fraction(1, 2)) == HScalar({4: Fraction(3, 2) * Fraction(5, 2)})
    assert res_constants(-2, Fraction(1, 2)) == HScalar({4: Fraction(1, 2) * Fraction(-1, 2)})
    assert res_constants(-1, 0) == HScalar(0)


def test_restriction_formula_matches_substitution():
    rng = random.Random(4)
    for l in range(2, 5):
        theta, eta, c = random_parameters(rng, l)
        spec = build_M_delta(1, c, eta)
        ct = spec.c_tilde
        for j in range(1, l):
            here, there = spec.chart(j), spec.chart(j + 1)
            lj, ln = here.effective_lambda(), there.effective_lambda()
            for k in range(-3, 4):
                for side in (1, 2):
                    kind = here.kind if side == 1 else there.kind
                    if kind == "G" and k < 0:
                        continue
                    direct = res_direct(spec, side, j, k)
                    n, s = res_apply(side, k, lj, ln, ct[j - 1])
                    if not s:
                        assert direct is None
                    else:
                        assert direct == (n, s)


def test_delta_sections_one_per_level():
    rng = random.Random(6)
    for l in range(1, 5):
        theta, eta, c = random_parameters(rng, l) if l > 1 else ((0,), (1,), (Fraction(0),))
        ct = c_tilde(c, eta)
        for i in range(1, l + 1):
            spec = build_M_delta(i, c, eta)
            dims = graded_dimensions(spec, 8)
            base = sum(ct[:i - 1], Fraction(0))
            assert base_eigenvalue(spec) == base
            assert dims == {base + n: 1 for n in range(9)}


def test_L_sections_match_irreducible_dimension():
    spec = build_L(1, C4, ETA4)
    L = irreducible_quotient(delta_module(1, C4, ETA4))
    assert len(global_sections_basis(spec, 10)) == L.dim == 1
    spec = build_L(3, C4, ETA4)
    L = irreducible_quotient(delta_module(3, C4, ETA4))
    assert epsilon_index(3, CT4) == 4
    assert len(global_sections_basis(spec, 10)) == L.dim == 3


def test_nothing_below_lowest_weight():
    spec = build_M_delta(2, C4, ETA4)
    assert sections_at(spec, base_eigenvalue(spec) - 1) == []


def test_explicit_sections():
    spec = explicit_delta_spec(1, C4, ETA4)
    assert v_range(spec, 1) == 1
    assert v_range(spec, 3) == 3
    assert v_range(spec, 4) is None
    comps = global_section_v(spec, 3, 2)
    assert set(comps) == {3, 4}
    with pytest.raises(OutOfRange):
        global_section_v(spec, 3, 3)
    with pytest.raises(OutOfRange):
        v_range(spec, 2)


def test_algebra_action_on_sections():
    spec = build_M_delta(1, C4, ETA4)
    alg = GWA(C4)
    delta = delta_module(1, C4, ETA4, alg)
    levels = [sections_at(spec, base_eigenvalue(spec) + n)[0] for n in range(6)]
    for n in range(5):
        up = act_on_family(spec, "a", levels[n], 1)
        s = coordinates_in(up, [levels[n + 1]])
        assert s is not None and s[0] != 0
        down = act_on_family(spec, "b", up, -1)
        t = coordinates_in(down, [levels[n]])
        # b a acts by P_ba(h) on level n
        assert t[0] == alg.P_ba(delta.eigenvalue(n))


def test_b_nilpotency_on_sections():
    for build in (build_M_delta, build_M_nabla, build_L):
        assert b_locally_nilpotent_on_sections(build(1, C4, ETA4), 5)
    assert not b_locally_nilpotent_on_sections(build_weight_spec(C4, ETA4, Fraction(2, 7)), 5)
