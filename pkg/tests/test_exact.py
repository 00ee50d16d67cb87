import cmath
import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgenocchi.errors import UsageError
from mgenocchi.exact import (
    CyclotomicNumber,
    ExpSeries,
    RationalPolynomial,
    cyclotomic_from_json,
    cyclotomic_polynomial,
    cyclotomic_reduce,
    cyclotomic_to_complex,
    cyclotomic_to_json,
    euler_phi,
    format_rational,
    parse_rational,
    series_product,
)

rationals = st.fractions(min_value=-20, max_value=20, max_denominator=12)


def cyclotomics(n):
    return st.lists(rationals, min_size=0, max_size=2 * n).map(lambda c: cyclotomic_reduce(c, n))


def genocchi_series(order):
    return ExpSeries([0, 1, -1, 0, 1, 0, -3, 0, 17][: order + 1])


def test_series_product_square_of_genocchi():
    # multinomial convolution: c_4 = C(4,2) G_2 G_2 = 6 (G_1 G_3 terms vanish)
    sq = series_product(genocchi_series(4), genocchi_series(4))
    assert list(sq.coeffs) == [0, 0, 2, -6, 6]


def test_series_product_identity_and_monomial():
    b = ExpSeries([3, Fraction(1, 2), -7, 2])
    assert series_product(ExpSeries.one(3), b) == b
    t = ExpSeries([0, 1, 0, 0])
    assert list(series_product(t, t).coeffs) == [0, 0, 2, 0]


def test_series_order_mismatch():
    with pytest.raises(UsageError):
        series_product(ExpSeries([1, 2]), ExpSeries([1, 2, 3]))


def test_series_inverse_roundtrip():
    a = ExpSeries([2, 1, 1, 1, 1, 1])
    assert a * a.inverse() == ExpSeries.one(5)


def test_mul_t_power_matches_product_by_t_squared():
    g = ExpSeries([1, 2, 3, 4, 5, 6])
    t2 = ExpSeries([0, 0, 2, 0, 0, 0])
    assert g.mul_t_power(2) == g * t2


@settings(max_examples=50, deadline=None)
@given(st.lists(rationals, min_size=5, max_size=5), st.lists(rationals, min_size=5, max_size=5),
       st.lists(rationals, min_size=5, max_size=5))
def test_series_product_commutative_associative(a, b, c):
    a, b, c = ExpSeries(a), ExpSeries(b), ExpSeries(c)
    assert a * b == b * a
    assert (a * b) * c == a * (b * c)


@settings(max_examples=30, deadline=None)
@given(st.lists(rationals, min_size=6, max_size=6), st.lists(rationals, min_size=6, max_size=6))
def test_truncation_compatible_with_product(a, b):
    full = ExpSeries(a) * ExpSeries(b)
    assert ExpSeries(a[:4]) * ExpSeries(b[:4]) == full.truncate(3)


def test_cyclotomic_polynomials():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)
    assert [euler_phi(n) for n in range(1, 13)] == [1, 1, 2, 2, 4, 2, 6, 4, 6, 4, 10, 4]


def test_cyclotomic_reduce_examples():
    assert cyclotomic_reduce([0, 0, 1], 4).coeffs == (-1, 0)
    assert cyclotomic_reduce([0, 0, 1], 3).coeffs == (-1, -1)
    assert cyclotomic_reduce([Fraction(5, 2)], 1).coeffs == (Fraction(5, 2),)
    with pytest.raises(UsageError):
        cyclotomic_reduce([1], 0)


def test_root_order_cap():
    with pytest.raises(UsageError):
        cyclotomic_polynomial(1001)


def test_cyclotomic_to_complex_examples():
    assert abs(cyclotomic_to_complex(CyclotomicNumber.root_of_unity(1, 4)) - 1j) < 1e-12
    z = cyclotomic_reduce([-1, -1], 3)
    assert abs(cyclotomic_to_complex(z) - complex(-0.5, -math.sqrt(3) / 2)) < 1e-12
    assert cyclotomic_to_complex(CyclotomicNumber.rational(Fraction(5, 2))) == 2.5


@pytest.mark.parametrize("n", [3, 5, 7, 8, 12])
@settings(max_examples=25, deadline=None)
@given(data=st.data())
def test_cyclotomic_ring_axioms(n, data):
    a, b, c = (data.draw(cyclotomics(n)) for _ in range(3))
    assert (a * b) * c == a * (b * c)
    assert a * (b + c) == a * b + a * c
    assert a * b == b * a
    za, zb = complex(a), complex(b)
    assert abs(complex(a * b) - za * zb) < 1e-9 * (1 + abs(za * zb))
    assert abs(complex(a + b) - (za + zb)) < 1e-9 * (1 + abs(za) + abs(zb))


@pytest.mark.parametrize("n", [3, 4, 5, 7, 9, 12])
@settings(max_examples=20, deadline=None)
@given(data=st.data())
def test_cyclotomic_inverse(n, data):
    a = data.draw(cyclotomics(n))
    if a.is_zero():
        return
    assert a * a.inverse() == 1
    assert abs(complex(a.inverse()) * complex(a) - 1) < 1e-8


@settings(max_examples=50, deadline=None)
@given(rationals, st.integers(min_value=1, max_value=12))
def test_rational_embeds_unchanged(q, n):
    z = cyclotomic_reduce([q], n)
    assert abs(cyclotomic_to_complex(z) - complex(q)) < 1e-12


def test_reduction_is_idempotent_and_canonical():
    z = cyclotomic_reduce([1, 2, 3, 4, 5, 6, 7, 8, 9], 5)
    assert cyclotomic_reduce(list(z.coeffs), 5).coeffs == z.coeffs
    # 1 + zeta + ... + zeta^4 = 0
    assert cyclotomic_reduce([1] * 5, 5).is_zero()


def test_mixed_root_orders_compare_in_common_field():
    # zeta_6^2 == zeta_3
    assert CyclotomicNumber.root_of_unity(2, 6) == CyclotomicNumber.root_of_unity(1, 3)
    assert CyclotomicNumber.root_of_unity(1, 2) == -1


def test_conjugate():
    z = CyclotomicNumber.root_of_unity(1, 5)
    assert z * z.conjugate() == 1


def test_rational_json_and_parsing():
    assert format_rational(Fraction(-9, 2)) == "-9/2"
    assert parse_rational(" -9/2 ") == Fraction(-9, 2)
    with pytest.raises(UsageError):
        parse_rational("0.5")
    z = cyclotomic_reduce([Fraction(1, 3), -2, 5], 7)
    assert cyclotomic_from_json(cyclotomic_to_json(z)) == z
    assert cyclotomic_to_json(z)["coeffs"][0] == "1/3"


def test_polynomial_basics():
    p = RationalPolynomial([-1, 2])
    assert p(Fraction(2, 3)) == Fraction(1, 3)
    assert p.derivative() == RationalPolynomial([2])
    assert p.shift(1) == RationalPolynomial([1, 2])
    assert (p * p)(3) == 25
    assert RationalPolynomial([0, 0]).is_zero()
