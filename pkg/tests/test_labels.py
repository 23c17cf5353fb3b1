import itertools
from fractions import Fraction

import pytest

from torelli.labels import (
    IndexOutOfRange,
    LabelMonomial,
    ch_B,
    generator_window,
    l_class,
    l_class_image,
    labels_of_degree,
    parse_label,
    poincare_series,
    render_label_combination,
)
from torelli.partitions import Partition
from torelli.symfunc import SymFunc, change_basis


def test_generator_window():
    assert generator_window(1) == (1, 0)
    assert generator_window(3) == (1, 2)
    assert generator_window(5) == (2, 4)
    assert generator_window(7) == (2, 6)


def test_monomial_degrees():
    e = LabelMonomial.e(3)
    p1 = LabelMonomial.p(3, 1)
    p2 = LabelMonomial.p(3, 2)
    assert e.degree == 6
    assert p1.degree == 4
    assert p2.degree == 8
    assert (e * e * p1).degree == 16
    assert LabelMonomial.unit(3).degree == 0


def test_monomial_window_enforced():
    with pytest.raises(ValueError):
        LabelMonomial.p(3, 3)
    with pytest.raises(ValueError):
        LabelMonomial.p(1, 1)


def test_parse_round_trip():
    for text in ("1", "e", "e^2", "p1", "e^2*p1", "p1^3*p2"):
        mono = parse_label(text, 3)
        assert parse_label(str(mono), 3) == mono
    assert parse_label("e*e*p2", 3) == parse_label("e^2*p2", 3)


def test_labels_of_degree():
    degree8 = labels_of_degree(3, 8)
    assert sorted(str(m) for m in degree8) == ["p1^2", "p2"]
    degree12 = labels_of_degree(3, 12)
    assert sorted(str(m) for m in degree12) == ["e^2", "p1*p2", "p1^3"]
    assert labels_of_degree(3, 5) == []


def test_poincare_series_all():
    series = poincare_series(3, "all", 12)
    expected = [1, 0, 0, 0, 1, 0, 1, 0, 2, 0, 1, 0, 3]
    for d, c in enumerate(expected):
        assert series.coefficient(d) == SymFunc.scalar(c)


def test_poincare_series_selectors():
    full = poincare_series(3, "all", 12)
    pos = poincare_series(3, "deg>0", 12)
    diff = full - pos
    assert diff.coefficient(0) == SymFunc.scalar(1)
    assert all(diff.coefficient(d) == SymFunc.zero() for d in range(1, 13))
    high = poincare_series(3, "deg>2n", 12)
    # degree 6 drops e, degree 4 drops p_1, degree 8 survives whole
    assert high.coefficient(4) == SymFunc.zero()
    assert high.coefficient(6) == SymFunc.zero()
    assert high.coefficient(8) == SymFunc.scalar(2)


def test_ch_b_dimension_six():
    series = ch_B(3, 4)
    assert series.coefficient(1) == change_basis("h1")
    assert series.coefficient(2) == SymFunc.scalar(2)
    assert series.coefficient(3) == change_basis("h3 + h1")
    assert series.coefficient(4) == change_basis("h2") + SymFunc.scalar(1)


def test_ch_b_dimension_two():
    series = ch_B(1, 3)
    assert series.coefficient(1) == change_basis("h3 + h1")
    assert series.coefficient(2) == change_basis("h2 + h4") + SymFunc.scalar(1)
    assert series.coefficient(3) == change_basis("h5 + h3 + h1")


def test_l_class_frozen():
    assert l_class(1).terms == {Partition((1,)): Fraction(1, 3)}
    assert l_class(2).terms == {
        Partition((2,)): Fraction(7, 45),
        Partition((1, 1)): Fraction(-1, 45),
    }
    assert l_class(3).terms == {
        Partition((3,)): Fraction(62, 945),
        Partition((2, 1)): Fraction(-13, 945),
        Partition((1, 1, 1)): Fraction(2, 945),
    }


def _poly_mul(a, b, cap):
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            if sum(m) > cap:
                continue
            out[m] = out.get(m, Fraction(0)) + ca * cb
    return {m: c for m, c in out.items() if c}


def test_l_class_against_genus_product():
    # sqrt(z)/tanh(sqrt(z)) = 1 + z/3 - z^2/45 + 2 z^3/945 + ...
    cap = 3
    q_coeffs = [Fraction(1), Fraction(1, 3), Fraction(-1, 45), Fraction(2, 945)]
    nvars = 3
    product = {(0,) * nvars: Fraction(1)}
    for var in range(nvars):
        factor = {}
        for k, c in enumerate(q_coeffs):
            mono = [0] * nvars
            mono[var] = k
            factor[tuple(mono)] = c
        product = _poly_mul(product, factor, cap)

    elementary = []
    for r in range(1, nvars + 1):
        poly = {}
        for combo in itertools.combinations(range(nvars), r):
            mono = [0] * nvars
            for v in combo:
                mono[v] = 1
            poly[tuple(mono)] = Fraction(1)
        elementary.append(poly)

    for i in range(1, cap + 1):
        reconstructed = {}
        for mu, c in l_class(i).terms.items():
            term = {(0,) * nvars: c}
            for part in mu:
                term = _poly_mul(term, elementary[part - 1], cap)
            for m, v in term.items():
                reconstructed[m] = reconstructed.get(m, Fraction(0)) + v
        degree_part = {
            m: c for m, c in product.items() if sum(m) == i
        }
        reconstructed = {m: c for m, c in reconstructed.items() if c}
        assert reconstructed == degree_part


def test_l_class_image():
    assert l_class_image(1, 1) == {LabelMonomial.e(1, 2): Fraction(1, 3)}
    assert l_class_image(2, 3) == {
        LabelMonomial.p(3, 2): Fraction(7, 45),
        LabelMonomial.p(3, 1, 2): Fraction(-1, 45),
    }
    assert l_class_image(3, 3) == {
        LabelMonomial.e(3, 2): Fraction(62, 945),
        parse_label("p1*p2", 3): Fraction(-13, 945),
        LabelMonomial.p(3, 1, 3): Fraction(2, 945),
    }


def test_l_class_image_window_kills_terms():
    # for n = 5 the window starts at p_2, so any mu containing 1 dies
    image = l_class_image(3, 5)
    assert image == {LabelMonomial.p(5, 3): Fraction(62, 945)}


def test_l_class_image_rejects_low_index():
    with pytest.raises(IndexOutOfRange):
        l_class_image(1, 3)
    with pytest.raises(IndexOutOfRange):
        l_class_image(2, 4)


def test_render_label_combination():
    text = render_label_combination(l_class_image(2, 3))
    assert "7/45" in text
    assert "p2" in text
