"""Complex-side values: generalized Genocchi numbers attached to chi, partial
zeta values at negative integers, L-values, and a numeric evaluator for the
multiple Genocchi-zeta function.

Every w-fold sum over ``[1, F]^w`` below has a summand that depends on the
tuple only through ``t = a_1 + ... + a_w``, so it is collapsed to a sum over
t weighted by ``r_w(t)``, the number of tuples with that sum.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb, factorial
from typing import Callable

from .dirichlet import DirichletCharacter
from .errors import DomainError, UsageError
from .exact import CyclotomicNumber, ExpSeries, Rational, cyclotomic_reduce
from .genocchi import eval_multiple_genocchi, multiple_genocchi_numbers


@dataclass(frozen=True)
class TupleSumWeights:
    F: int
    w: int
    counts: tuple[int, ...]  # counts[i] = r_w(w + i)

    def items(self):
        for i, r in enumerate(self.counts):
            yield self.w + i, r

    def __getitem__(self, t: int) -> int:
        i = t - self.w
        return self.counts[i] if 0 <= i < len(self.counts) else 0


@lru_cache(maxsize=None)
def tuple_sum_weights(F: int, w: int) -> TupleSumWeights:
    """Coefficients of ``(z + ... + z^F)^w`` by repeated convolution."""
    if F < 1 or w < 1:
        raise UsageError("F and w must be positive")
    counts = [1]
    for _ in range(w):
        nxt = [0] * (len(counts) + F - 1)
        for i, c in enumerate(counts):
            for j in range(F):
                nxt[i + j] += c
        counts = nxt
    return TupleSumWeights(F, w, tuple(counts))


def _check_period(F: int) -> None:
    if F < 1 or F % 2 == 0:
        raise UsageError(f"period F must be a positive odd integer, got {F}")


def _check_w(w: int) -> None:
    if w < 1:
        raise UsageError(f"order w must be at least 1, got {w}")


def _sign(t: int) -> int:
    return -1 if t % 2 else 1


def _character_sum(chi: DirichletCharacter, terms) -> CyclotomicNumber:
    """Reduce ``sum c * chi(t)`` given (t, rational c) pairs into Q(zeta_order)."""
    n = chi.order
    raw = [Fraction(0)] * n
    for t, c in terms:
        v = chi(t)
        if not v.is_zero and c:
            raw[v.exponent] += c
    return cyclotomic_reduce(raw, n)


def generalized_genocchi(chi: DirichletCharacter, w: int, n_max: int, F: int | None = None) -> list[CyclotomicNumber]:
    """G_{n,chi}^{(w)} for n <= n_max as a finite sum of Genocchi polynomial values.

    ``F`` defaults to the modulus of chi; any odd multiple gives the same numbers.
    """
    F = chi.modulus if F is None else F
    _check_period(F)
    _check_w(w)
    if F % chi.modulus:
        raise UsageError(f"F={F} is not a multiple of the modulus {chi.modulus}")
    weights = tuple_sum_weights(F, w)
    out = []
    for n in range(n_max + 1):
        scale = Fraction(F) ** (n - w)
        out.append(
            _character_sum(
                chi,
                ((t, scale * r * _sign(t) * eval_multiple_genocchi(w, n, Fraction(t, F))) for t, r in weights.items()),
            )
        )
    return out


def generalized_genocchi_series_oracle(chi: DirichletCharacter, w: int, n_max: int) -> list[CyclotomicNumber]:
    """Same numbers by expanding the generating function directly.

    Tuples are enumerated one by one, and ``(2t)^w / (e^{ft}+1)^w`` comes from
    exact series inversion; no Genocchi polynomial is evaluated.
    """
    f = chi.modulus
    _check_period(f)
    _check_w(w)
    n = chi.order
    # numerator split by character value: sum over classes k of zeta^k * N_k(t)
    numer = [[Fraction(0)] * (n_max + 1) for _ in range(n)]
    for tup in itertools.product(range(1, f + 1), repeat=w):
        t = sum(tup)
        v = chi(t)
        if v.is_zero:
            continue
        row = numer[v.exponent]
        sgn = _sign(t)
        for j in range(n_max + 1):
            row[j] += sgn * t**j
    denom = (ExpSeries.exp(f, n_max) + ExpSeries.one(n_max)) ** w
    kernel = denom.inverse().mul_t_power(w).scale(2**w)
    classes = [ExpSeries(row) * kernel for row in numer]
    return [cyclotomic_reduce([c.coeffs[j] for c in classes], n) for j in range(n_max + 1)]


def partial_zeta_neg(a_sum: int, F: int, w: int, n: int) -> Fraction:
    """S^{(w)}(w-n; a_1..a_w | F) for a tuple with sum ``a_sum``, n >= w."""
    _check_period(F)
    _check_w(w)
    if n < w:
        raise DomainError(f"partial zeta at w-n needs n >= w (n={n}, w={w})")
    if not w <= a_sum <= w * F:
        raise UsageError(f"a_sum={a_sum} is not a sum of {w} entries from [1, {F}]")
    value = Fraction(F) ** (n - w) * eval_multiple_genocchi(w, n, Fraction(a_sum, F))
    return _sign(a_sum) * value / (comb(n, w) * factorial(w))


def l_value_neg(chi: DirichletCharacter, w: int, n: int) -> CyclotomicNumber:
    """L^{(w)}(-n | chi) = G_{n+w,chi}^{(w)} / (C(n+w, w) w!)."""
    if n < 0:
        raise DomainError("n must be non-negative")
    g = generalized_genocchi(chi, w, n + w)[n + w]
    return g / (comb(n + w, w) * factorial(w))


def l_value_via_partition(chi: DirichletCharacter, w: int, n: int, F: int) -> CyclotomicNumber:
    """L^{(w)}(w-n | chi) as sum over residue classes of chi(t) S^{(w)}(w-n; t | F)."""
    _check_period(F)
    if F % chi.modulus:
        raise UsageError(f"F={F} is not a multiple of the modulus {chi.modulus}")
    weights = tuple_sum_weights(F, w)
    return _character_sum(chi, ((t, r * partial_zeta_neg(t, F, w, n)) for t, r in weights.items()))


def washington_rhs_at_neg(chi: DirichletCharacter, w: int, n: int, F: int) -> CyclotomicNumber:
    """Right side of the binomial-series form at s = -n (the k-sum stops at n)."""
    _check_period(F)
    _check_w(w)
    if n < 0:
        raise DomainError("n must be non-negative")
    if F % chi.modulus:
        raise UsageError(f"F={F} is not a multiple of the modulus {chi.modulus}")
    g = multiple_genocchi_numbers(w, max(n, w))
    weights = tuple_sum_weights(F, w)

    def term(t: int) -> Fraction:
        inner = sum(comb(n, k) * Fraction(F, t) ** k * g[k] for k in range(n + 1))
        return Fraction(t) ** n * inner / Fraction(F) ** w

    return _character_sum(chi, ((t, r * _sign(t) * term(t)) for t, r in weights.items()))


# ---------------------------------------------------------------------------
# numeric side

EULER_DEPTH = 24
EULER_START = 48
EULER_MAX_TERMS = 1 << 16


def alternating_sum(
    term: Callable[[int], float],
    tol: float,
    depth: int = EULER_DEPTH,
    start: int = EULER_START,
) -> tuple[float, float]:
    """``sum_{m>=0} (-1)^m term(m)`` for a smooth, eventually monotone term.

    The first ``n`` terms are summed directly and the tail is Euler
    transformed over ``depth`` differences; ``n`` doubles until the error
    estimate (size of the last transformed term plus change between rounds)
    drops below tol.  Returns (value, error estimate).
    """
    n = start
    previous = None
    while n <= EULER_MAX_TERMS:
        head = math.fsum((-1) ** m * term(m) for m in range(n))
        diffs = [term(n + j) for j in range(depth)]
        tail_terms = []
        for k in range(depth):
            tail_terms.append((-1) ** k * diffs[0] / 2 ** (k + 1))
            diffs = [b - a for a, b in zip(diffs, diffs[1:])]
        tail = math.fsum(tail_terms)
        value = head + (-1) ** n * tail
        err = abs(tail_terms[-1])
        if previous is not None:
            err = max(err, abs(value - previous))
        if err < tol:
            return value, err
        previous = value
        n *= 2
    raise DomainError("alternating series did not converge to the requested tolerance")


def zeta_numeric(w: int, s: float, x: Rational, tol: float = 1e-10) -> tuple[float, float]:
    """zeta_G^{(w)}(s, x) = 2^w sum_m (-1)^m C(m+w-1, w-1) (x+m)^(-s), real s >= w."""
    _check_w(w)
    x = Fraction(x)
    if x <= 0:
        raise DomainError("zeta_numeric needs x > 0")
    if s < w:
        raise DomainError(f"zeta_numeric needs real s >= w (s={s}, w={w})")
    xf = float(x)
    value, err = alternating_sum(lambda m: comb(m + w - 1, w - 1) * (xf + m) ** (-s), tol / 2**w)
    return 2**w * value, 2**w * err


def partial_zeta_numeric(a: tuple[int, ...], F: int, s: float, tol: float = 1e-10) -> tuple[float, float]:
    """2^w sum over m_i > 0, m_i == a_i mod F of (-1)^(m_1+..+m_w) (m_1+..+m_w)^(-s).

    Evaluated as w nested accelerated alternating sums over m_i = a_i + F n_i,
    without collapsing the tuple.
    """
    _check_period(F)
    w = len(a)
    _check_w(w)
    if s < w:
        raise DomainError(f"needs real s >= w (s={s}, w={w})")
    base_sign = _sign(sum(a))
    inner_tol = tol / (4 * 2**w)

    def nested(level: int, partial: int) -> float:
        if level == w:
            return float(partial) ** (-s)
        # (-1)^(a_i + F n_i) = (-1)^a_i (-1)^n_i for odd F; a_i's sign is in base_sign
        return alternating_sum(lambda n_i: nested(level + 1, partial + a[level] + F * n_i), inner_tol)[0]

    value = base_sign * nested(0, 0)
    return 2**w * value, 2**w * tol / 4


def partial_zeta_closed_form(a_sum: int, F: int, w: int, s: float, tol: float = 1e-10) -> tuple[float, float]:
    """(-1)^{a_sum} F^{-s} zeta_G^{(w)}(s, a_sum/F)."""
    z, err = zeta_numeric(w, s, Fraction(a_sum, F), tol)
    scale = F ** (-s)
    return _sign(a_sum) * scale * z, scale * err
