import random
from fractions import Fraction

import pytest

from torelli.partitions import EMPTY, Partition, partitions_of
from torelli.symfunc import (
    LambdaSeries,
    NotAUnit,
    PlethysmDivergence,
    SymFunc,
    change_basis,
    character_value,
    e_sym,
    exp_h,
    from_p_monomials,
    h_sym,
    lr_coefficient,
    omega,
    p_sym,
    plethysm,
    series_invert,
)


def sf(text):
    return change_basis(text)


def test_lr_small_products():
    assert sf("s[1]") * sf("s[1]") == sf("s[2] + s[1^2]")
    assert sf("s[2]") * sf("s[2]") == sf("s[4] + s[3,1] + s[2^2]")
    assert sf("s[1]") * sf("s[1^2]") == sf("s[2,1] + s[1^3]")
    assert sf("s[2,1]") * sf("s[1]") == sf("s[3,1] + s[2^2] + s[2,1^2]")


def test_lr_coefficient_values():
    assert lr_coefficient(Partition((2, 1)), Partition((1,)), Partition((1, 1))) == 1
    assert lr_coefficient(Partition((3, 1)), Partition((2,)), Partition((2,))) == 1
    assert lr_coefficient(Partition((2, 2)), Partition((2,)), Partition((1, 1))) == 0
    # the famous multiplicity-2 case
    assert lr_coefficient(
        Partition((4, 3, 2)), Partition((2, 1)), Partition((3, 2, 1))
    ) == 2


def test_lr_symmetry():
    rng = random.Random(23)
    for _ in range(120):
        a = rng.choice(partitions_of(rng.randrange(1, 5)))
        b = rng.choice(partitions_of(rng.randrange(1, 5)))
        lhs = SymFunc.schur(a) * SymFunc.schur(b)
        rhs = SymFunc.schur(b) * SymFunc.schur(a)
        assert lhs == rhs


def test_generator_expansions():
    assert h_sym(3) == sf("s[3]")
    assert e_sym(3) == sf("s[1^3]")
    assert p_sym(2) == sf("s[2] - s[1^2]")
    assert p_sym(3) == sf("s[3] - s[2,1] + s[1^3]")
    assert h_sym(0) == SymFunc.scalar(1)


def test_omega_involution():
    for k in range(1, 6):
        assert omega(h_sym(k)) == e_sym(k)
        assert omega(p_sym(k)) == p_sym(k) * SymFunc.scalar((-1) ** (k - 1))
    rng = random.Random(7)
    for _ in range(40):
        lam = rng.choice(partitions_of(rng.randrange(1, 8)))
        f = SymFunc.schur(lam)
        assert omega(f) == SymFunc.schur(lam.conjugate())
        assert omega(omega(f)) == f


def test_power_sum_round_trip():
    rng = random.Random(3)
    for _ in range(25):
        coeffs = {}
        for _ in range(rng.randrange(1, 4)):
            lam = rng.choice(partitions_of(rng.randrange(1, 6)))
            coeffs[lam] = coeffs.get(lam, Fraction(0)) + Fraction(
                rng.randrange(-4, 5), rng.randrange(1, 4)
            )
        f = from_p_monomials(coeffs)
        assert from_p_monomials(f.to_p()) == f


def test_character_value_against_strips():
    # contents of the character table for q = 3 and q = 4
    assert character_value(Partition((2, 1)), Partition((1, 1, 1))) == 2
    assert character_value(Partition((2, 1)), Partition((3,))) == -1
    assert character_value(Partition((2, 2)), Partition((2, 1, 1))) == 0
    assert character_value(Partition((2, 2)), Partition((4,))) == 0
    assert character_value(Partition((2, 2)), Partition((2, 2))) == 2
    assert character_value(Partition((3, 1)), Partition((4,))) == -1


def test_homogeneous_split():
    f = sf("s[2] + 3*s[1] - s[3,1]")
    parts = f.homogeneous_components()
    assert set(parts) == {1, 2, 4}
    assert parts[2] == sf("s[2]")
    assert f.homogeneous_part(4) == sf("-s[3,1]")
    assert f.homogeneous_part(3).is_zero()


def test_series_arithmetic_and_truncation():
    one = LambdaSeries.one(5)
    t = LambdaSeries.monomial(SymFunc.scalar(1), 1, 5)
    geo = series_invert(one - t)
    assert geo.coefficient(0) == SymFunc.scalar(1)
    assert geo.coefficient(5) == SymFunc.scalar(1)
    assert (geo * (one - t)) == one
    # truncation is the min of the operand truncations plus valuations
    a = LambdaSeries.monomial(SymFunc.scalar(1), 2, 6)
    b = LambdaSeries.monomial(SymFunc.scalar(1), 3, 4)
    assert (a * b).trunc == 4
    assert (a + b).trunc == 4


def test_series_invert_requires_unit():
    t = LambdaSeries.monomial(SymFunc.scalar(1), 1, 4)
    with pytest.raises(NotAUnit):
        series_invert(t)
    f = LambdaSeries.one(3) + LambdaSeries.monomial(sf("s[1]"), 1, 3)
    inv = series_invert(f)
    assert inv.coefficient(1) == sf("-s[1]")
    assert inv.coefficient(2) == sf("s[2] + s[1^2]")
    assert (inv * f) == LambdaSeries.one(3)


def test_plethysm_power_sum_rules():
    # p_k composed with p_m gives p_{km}, and t goes to t^k
    g = LambdaSeries.monomial(p_sym(2), 1, 8)
    out = plethysm(p_sym(3), g)
    assert out.coefficient(3) == p_sym(6)
    assert out.exponents() == [3]


def test_plethysm_classical_values():
    g0 = LambdaSeries.monomial(h_sym(2), 0, 0)
    assert plethysm(h_sym(2), g0).coefficient(0) == sf("s[4] + s[2^2]")
    assert plethysm(e_sym(2), g0).coefficient(0) == sf("s[3,1]")
    g1 = LambdaSeries.monomial(e_sym(2), 0, 0)
    assert plethysm(h_sym(2), g1).coefficient(0) == sf("s[2^2] + s[1^4]")
    # the two degree-6 squares and their conjugates
    g3 = LambdaSeries.monomial(h_sym(3), 0, 0)
    assert plethysm(h_sym(2), g3).coefficient(0) == sf("s[6] + s[4,2]")
    assert plethysm(h_sym(3), g1).coefficient(0) == omega(sf("s[6] + s[4,2] + s[2^3]"))
    ge3 = LambdaSeries.monomial(e_sym(3), 0, 0)
    assert plethysm(e_sym(2), ge3).coefficient(0) == omega(sf("s[6] + s[4,2]"))


def test_plethysm_is_a_ring_map_in_the_outer_slot():
    rng = random.Random(19)
    g = LambdaSeries.monomial(sf("s[1]"), 1, 4) + LambdaSeries.monomial(
        sf("s[2]"), 2, 4
    )
    for _ in range(10):
        a = SymFunc.schur(rng.choice(partitions_of(rng.randrange(1, 4))))
        b = SymFunc.schur(rng.choice(partitions_of(rng.randrange(1, 4))))
        assert plethysm(a + b, g) == plethysm(a, g) + plethysm(b, g)
        assert plethysm(a * b, g) == plethysm(a, g) * plethysm(b, g)


def test_exp_h_exponential_law():
    f = LambdaSeries.monomial(sf("s[1]"), 1, 4)
    g = LambdaSeries.monomial(sf("s[2]"), 2, 4)
    assert exp_h(f + g) == exp_h(f) * exp_h(g)
    # exp of h_1 t enumerates the trivial representations
    series = exp_h(f)
    for q in range(5):
        assert series.coefficient(q) == h_sym(q), q


def test_exp_h_divergence():
    with pytest.raises(PlethysmDivergence):
        exp_h(LambdaSeries.one(3))


def test_render():
    from torelli.symfunc import render_series, render_symfunc

    assert render_symfunc(sf("2*s[2,1] - s[1]")) == "-s[1] + 2*s[2,1]"
    s = LambdaSeries.monomial(sf("s[1]"), 1, 2) + LambdaSeries.one(2)
    assert render_series(s) == "1 + s[1]*t + O(t^3)" or "t^2" not in render_series(s)
