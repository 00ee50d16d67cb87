from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from mgenocchi.errors import DomainError, UsageError
from mgenocchi.padic import (
    PadicNumber,
    PrecisionPolicy,
    angle,
    angle_pow,
    binom_neg,
    exp_p,
    log_p,
    log_p_unit,
    padic_from_rational,
    teichmuller,
)
from mgenocchi.verify import suite_kernels

PRIMES = [3, 5, 7]


def test_from_rational_examples():
    half = padic_from_rational(Fraction(1, 2), 3, 3)
    assert half.valuation == 0 and half.digits == [2, 1, 1] and half.residue(3) == 14
    six = padic_from_rational(6, 3)
    assert six.valuation == 1 and six.digits[0] == 2
    assert padic_from_rational(-1, 5, 3).digits == [4, 4, 4]
    assert padic_from_rational(Fraction(1, 9), 3).valuation == -2


@pytest.mark.parametrize("p", [2, 9, 1, -3])
def test_bad_prime(p):
    with pytest.raises(UsageError):
        padic_from_rational(1, p)


def test_zero_states():
    z = padic_from_rational(0, 5)
    assert z.kind == PadicNumber.EXACT_ZERO and z.zero_mod() == float("inf")
    x = padic_from_rational(3, 5, 10)
    d = x - padic_from_rational(3, 5, 6)
    assert d.kind == PadicNumber.BOUNDED_ZERO and d.zero_mod() == 6
    with pytest.raises(ZeroDivisionError):
        x / d


def test_precision_rules():
    a = PadicNumber.from_parts(5, 0, 7, 10)
    b = PadicNumber.from_parts(5, 2, 3, 4)
    assert (a + b).absolute_precision == 6
    assert (a * b).relative_precision == 4
    assert (a / b).relative_precision == 4 and (a / b).valuation == -2


def test_teichmuller_examples():
    assert teichmuller(1, 5) == 1
    assert teichmuller(4, 5) == -1
    assert teichmuller(2, 5, 2).residue(2) == 7
    with pytest.raises(DomainError):
        teichmuller(10, 5)


def test_angle_examples():
    assert angle(1, 7) == 1
    assert angle(-1, 7) == 1
    assert angle(6, 7) == -6
    assert angle(2, 5, 2).residue(2) == 11
    with pytest.raises(DomainError):
        angle(3, 3)


def test_log_exp_examples():
    assert log_p(padic_from_rational(1, 3)).is_zero()
    assert log_p(padic_from_rational(4, 3, 10)).residue(3) == 21
    assert log_p(padic_from_rational(16, 3, 10)).residue(3) == 15
    assert exp_p(padic_from_rational(0, 3)) == 1
    assert exp_p(padic_from_rational(3, 3, 10)).residue(3) == 13
    for p in PRIMES:
        u = padic_from_rational(1 + p, p, 40)
        assert (exp_p(log_p(u)) - u).zero_mod() >= 35
    with pytest.raises(DomainError):
        exp_p(padic_from_rational(1, 5))
    with pytest.raises(DomainError):
        log_p(padic_from_rational(2, 5))


def test_angle_pow_examples():
    assert angle_pow(2, 0, 5) == 1
    assert angle_pow(2, -1, 5) == angle(2, 5)
    assert angle_pow(2, 1, 5, 10).residue(2) == 16
    with pytest.raises(DomainError):
        angle_pow(2, Fraction(1, 5), 5)


def test_binom_neg_examples():
    assert binom_neg(Fraction(3, 7), 0) == 1
    assert binom_neg(Fraction(3, 7), 1) == Fraction(-3, 7)
    assert binom_neg(-4, 2) == 6
    s = padic_from_rational(Fraction(1, 2), 5)
    assert binom_neg(s, 3) == binom_neg(Fraction(1, 2), 3)


@pytest.mark.parametrize("p", PRIMES)
def test_teichmuller_multiplicative_and_root_of_unity(p):
    units = [a for a in range(1, p * p) if a % p]
    for a in units:
        om = teichmuller(a, p)
        assert om ** (p - 1) == 1
        assert om.residue(1) == a % p
        assert (angle(a, p) - 1).valuation >= 1
    for a in units[:8]:
        for b in units[:8]:
            assert teichmuller(a * b, p) == teichmuller(a, p) * teichmuller(b, p)


@pytest.mark.parametrize("p", PRIMES)
def test_log_homomorphism(p):
    units = [a for a in range(1, p * p) if a % p]
    for a in units[:10]:
        for b in units[:10]:
            lhs = log_p_unit(a * b, p)
            rhs = log_p_unit(a, p) + log_p_unit(b, p)
            assert (lhs - rhs).zero_mod() >= 35


@pytest.mark.parametrize("p", PRIMES)
def test_angle_pow_repeated_product(p):
    for a in (2, p + 1, p * p - 1):
        u = angle(a, p)
        prod = padic_from_rational(1, p)
        for n in range(11):
            assert (angle_pow(a, -n, p) - prod).zero_mod() >= 35
            prod = prod * u


def test_kernel_suite_passes():
    cases = suite_kernels()
    assert cases and all(c.passed for c in cases)


rationals = st.fractions(min_value=-1000, max_value=1000, max_denominator=200).filter(lambda q: q != 0)


@settings(max_examples=60, deadline=None)
@given(rationals, rationals, st.sampled_from(PRIMES))
def test_ring_homomorphism(x, y, p):
    X, Y = padic_from_rational(x, p), padic_from_rational(y, p)
    assert X + Y == padic_from_rational(x + y, p) if x + y else (X + Y).is_zero()
    assert X * Y == padic_from_rational(x * y, p)
    assert X / Y == padic_from_rational(x / y, p)


@settings(max_examples=60, deadline=None)
@given(rationals, st.sampled_from(PRIMES))
def test_json_roundtrip(x, p):
    X = padic_from_rational(x, p, 20)
    back = PadicNumber.from_json(X.to_json())
    assert back.to_json() == X.to_json()
    z = PadicNumber.bounded_zero(p, 7)
    assert PadicNumber.from_json(z.to_json(), p).zero_mod() == 7
    assert PadicNumber.from_json({"zero": True}, p).kind == PadicNumber.EXACT_ZERO


def test_policy():
    pol = PrecisionPolicy()
    assert (pol.digits, pol.guard, pol.working, pol.check_level) == (40, 5, 45, 35)
    with pytest.raises(UsageError):
        PrecisionPolicy(0)
