import random
from fractions import Fraction

import pytest

from cherednik_zl.cherednik import (
    BadKappa, CherednikError, GradedPolyVector, NegativeDegree, NotSpherical, apply_word,
    c_to_kappa, delta_module_action, dunkl_apply, gwa_action_on_cherednik, kappa_to_c,
    lowest_spherical_degree, operators_equal, pbw_decompose, spherical_apply,
)
from cherednik_zl.reduction import gwa_presentation, s_values
from cherednik_zl.sampling import random_kappa

KAPPA = (Fraction(0), Fraction(1, 3))


def test_kappa_to_c_round_trip():
    assert kappa_to_c((0, Fraction(1, 4))) == (Fraction(1, 4), Fraction(-1, 4))
    assert kappa_to_c((0, Fraction(1, 3))) == (Fraction(1, 6), Fraction(-1, 6))
    rng = random.Random(2)
    for l in range(1, 6):
        k = random_kappa(rng, l)
        c = kappa_to_c(k)
        assert sum(c) == 0
        assert c_to_kappa(c) == k
    with pytest.raises(BadKappa):
        kappa_to_c((1, 0))


def test_dunkl_and_standard_action():
    v = GradedPolyVector.basis(2, 0, 1)
    # d(z e_0) = (1 + 2 kappa_1) e_0 on the standard module with label 0
    assert delta_module_action("d", v, KAPPA) == GradedPolyVector.basis(2, 0, 0, Fraction(5, 3))
    assert delta_module_action("d", GradedPolyVector.basis(2, 0, 0), KAPPA).is_zero()
    assert dunkl_apply(GradedPolyVector.basis(2, 0, 0), KAPPA).is_zero()
    assert delta_module_action("z", v, KAPPA) == GradedPolyVector.basis(2, 0, 2)
    parts = delta_module_action("gamma", v + GradedPolyVector.basis(2, 0, 2), KAPPA)
    assert set(parts) == {0, 1}
    with pytest.raises(NegativeDegree):
        delta_module_action("z", GradedPolyVector.basis(2, 0, -1), KAPPA)


def test_dunkl_commutator_relation():
    # [d, z] = 1 + l sum_r kappa_r (e_r - e_{r-1}) on every graded piece
    rng = random.Random(4)
    for l in range(1, 5):
        k = random_kappa(rng, l)
        for i in range(l):
            for m in range(6):
                v = GradedPolyVector.basis(l, i, m)
                got = apply_word(["d", "z"], v, k) - apply_word(["z", "d"], v, k)
                r = (m + i) % l
                want = 1 + l * (k[(r + 1) % l] - k[r])
                assert got == v.scale(want)


def test_spherical_examples():
    v = GradedPolyVector.basis(2, 0, 2)
    assert spherical_apply("Z", v, KAPPA) == GradedPolyVector.basis(2, 0, 4)
    assert spherical_apply("ZD", v, KAPPA) == v.scale(2)
    # d^2 z^2 e_0 = (2 + 0)(1 + 2/3) e_0
    assert spherical_apply("D", v, KAPPA) == GradedPolyVector.basis(2, 0, 0, Fraction(10, 3))
    # kappa_1 = 1/4: z^2 e_0 -> 2 z e_0 -> 3 e_0
    assert spherical_apply("D", v, (0, Fraction(1, 4))) == GradedPolyVector.basis(2, 0, 0, 3)
    with pytest.raises(NotSpherical):
        spherical_apply("Z", GradedPolyVector.basis(2, 0, 1), KAPPA)
    with pytest.raises(CherednikError):
        spherical_apply("Q", v, KAPPA)


def test_lowest_spherical_degree():
    assert lowest_spherical_degree(3, 0) == 0
    assert lowest_spherical_degree(3, 1) == 2
    assert lowest_spherical_degree(3, 2) == 1


def test_gwa_relations_on_standard_modules():
    rng = random.Random(8)
    for l in range(1, 5):
        for _ in range(5):
            k = random_kappa(rng, l)
            c = kappa_to_c(k)
            pab, pba = gwa_presentation(c)
            s = s_values(c)
            for i in range(l):
                m0 = lowest_spherical_degree(l, i)
                low = GradedPolyVector.basis(l, i, m0)
                assert gwa_action_on_cherednik("b", low, k).is_zero()
                # label i has lowest h-eigenvalue s_i (label 0 playing the role of l)
                assert gwa_action_on_cherednik("h", low, k) == low.scale(s[(i - 1) % l])
                for n in range(4):
                    w = GradedPolyVector.basis(l, i, m0 + l * n)
                    hw = s[(i - 1) % l] + n
                    assert gwa_action_on_cherednik("h", w, k) == w.scale(hw)
                    a_w = gwa_action_on_cherednik("a", w, k)
                    assert gwa_action_on_cherednik("h", a_w, k) == a_w.scale(hw + 1)
                    ba = gwa_action_on_cherednik("b", a_w, k)
                    ab = gwa_action_on_cherednik("a", gwa_action_on_cherednik("b", w, k), k)
                    assert ba == w.scale(pba(hw))
                    assert ab == w.scale(pab(hw))


def test_nilpotency_of_dunkl():
    rng = random.Random(6)
    for l in range(1, 5):
        k = random_kappa(rng, l)
        for i in range(l):
            for m in range(8):
                v = GradedPolyVector.basis(l, i, m)
                assert apply_word(["d"] * (m + 1), v, k).is_zero()


def test_operators_equal():
    k = (Fraction(0), Fraction(2, 7), Fraction(-1, 5))
    # z and d do not commute
    assert not operators_equal(["z", "d"], ["d", "z"], k, 1)
    assert operators_equal(["e0", "z"], ["z", "e2"], k, 1)
    assert operators_equal(["z", "d", "z"], ["z", "d", "z"], k, 2)


def test_pbw_decompose():
    k = (Fraction(0), Fraction(1, 3))
    s, coeffs = pbw_decompose(["Z", "D"], k)
    assert s == 0
    # a word Z D acts on z^{2n} by 2n (2n - 1 + 2 kappa_1), a quadratic in zd
    assert coeffs[:3] == [0, Fraction(-1, 3), 1]
    assert all(x == 0 for x in coeffs[3:])
    s, coeffs = pbw_decompose(["D", "Z", "Z"], k)
    assert s == 1
    assert coeffs[0] != 0
