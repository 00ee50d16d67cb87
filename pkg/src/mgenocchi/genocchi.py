"""Genocchi numbers, multiple Genocchi numbers of order w, and their polynomials.

Conventions follow the EGF ``2t/(e^t+1) = sum G_n t^n/n!`` and
``(2t/(e^t+1))^w e^{xt} = sum G_n^{(w)}(x) t^n/n!``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial

from .errors import UsageError
from .exact import ExpSeries, RationalPolynomial, Rational, series_product

DEFAULT_N_MAX = 64


@lru_cache(maxsize=None)
def _genocchi_series(n_max: int) -> ExpSeries:
    # 2/(e^t+1) is the inverse of (e^t+1)/2 = 1 + sum_{n>=1} (1/2) t^n/n!
    half_shifted = ExpSeries([1] + [Fraction(1, 2)] * n_max)
    return half_shifted.inverse().mul_t_power(1)


def genocchi_numbers(n_max: int) -> list[Fraction]:
    """``[G_0, ..., G_{n_max}]`` by exact series inversion."""
    if n_max < 0:
        raise UsageError("n_max must be non-negative")
    return list(_genocchi_series(n_max).coeffs)


@dataclass(frozen=True)
class MultipleGenocchiTable:
    order: int
    n_max: int
    values: tuple[Fraction, ...]

    def __post_init__(self):
        w = self.order
        if len(self.values) != self.n_max + 1:
            raise ValueError("table length does not match n_max")
        for n, g in enumerate(self.values):
            if g.denominator != 1:
                raise ArithmeticError(f"G_{n}^({w}) = {g} is not an integer")
            if n < w and g != 0:
                raise ArithmeticError(f"G_{n}^({w}) should vanish below n = w")
        if w <= self.n_max and self.values[w] != factorial(w):
            raise ArithmeticError(f"G_{w}^({w}) should equal {w}!")

    def __getitem__(self, n: int) -> Fraction:
        return self.values[n]

    def __len__(self):
        return len(self.values)

    def as_ints(self) -> list[int]:
        return [int(v) for v in self.values]


@lru_cache(maxsize=None)
def multiple_genocchi_numbers(w: int, n_max: int = DEFAULT_N_MAX) -> MultipleGenocchiTable:
    """``G_0^{(w)} .. G_{n_max}^{(w)}`` as the w-fold EGF power of the Genocchi series."""
    if w < 1:
        raise UsageError(f"order w must be at least 1, got {w}")
    if n_max < 0:
        raise UsageError("n_max must be non-negative")
    base = _genocchi_series(n_max)
    if w == 1:
        series = base
    else:
        series = series_product(ExpSeries(multiple_genocchi_numbers(w - 1, n_max).values), base)
    return MultipleGenocchiTable(w, n_max, series.coeffs)


@lru_cache(maxsize=None)
def multiple_genocchi_polynomial(w: int, n: int) -> RationalPolynomial:
    """``G_n^{(w)}(x) = sum_k C(n,k) x^{n-k} G_k^{(w)}``."""
    if n < 0:
        raise UsageError("n must be non-negative")
    g = multiple_genocchi_numbers(w, max(n, w))
    # coefficient of x^j comes from k = n - j
    return RationalPolynomial(comb(n, j) * g[n - j] for j in range(n + 1))


def eval_multiple_genocchi(w: int, n: int, x: Rational) -> Fraction:
    return multiple_genocchi_polynomial(w, n)(x)
