"""Exact scalar substrate: rationals, polynomials, exponential series, Q(zeta_N).

Rationals are :class:`fractions.Fraction` throughout.  Everything here is
immutable; operations return new objects.
"""

from __future__ import annotations

import cmath
import threading
from fractions import Fraction
from math import comb, gcd
from typing import Iterable, Sequence, Union

from .errors import DomainError, UsageError

Rational = Union[int, Fraction]

#: Largest cyclotomic root order accepted; keeps Phi_N computation bounded.
MAX_ROOT_ORDER = 1000


def as_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"not an exact rational: {x!r}")


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or ``"n"``; floats are refused."""
    text = text.strip()
    if any(c in text for c in ".eE"):
        raise UsageError(f"rationals must be given as P/Q, got {text!r}")
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError) as exc:
        raise UsageError(f"bad rational {text!r}") from exc


def format_rational(q: Rational) -> str:
    return str(Fraction(q))


def _trim(coeffs: list) -> list:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


# ---------------------------------------------------------------------------
# dense rational polynomials


class RationalPolynomial:
    """Polynomial in the monomial basis, ``coeffs[i]`` multiplying ``x**i``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational] = ()):
        self.coeffs = tuple(_trim([as_fraction(c) for c in coeffs]))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __call__(self, x: Rational) -> Fraction:
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, RationalPolynomial):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other: RationalPolynomial) -> RationalPolynomial:
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return RationalPolynomial(x + y for x, y in zip(a, b))

    def __neg__(self):
        return RationalPolynomial(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return RationalPolynomial(c * other for c in self.coeffs)
        if not self.coeffs or not other.coeffs:
            return RationalPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return RationalPolynomial(out)

    __rmul__ = __mul__

    def derivative(self) -> RationalPolynomial:
        return RationalPolynomial(i * c for i, c in enumerate(self.coeffs) if i)

    def shift(self, c: Rational) -> RationalPolynomial:
        """Return ``x -> self(x + c)``."""
        out = RationalPolynomial()
        base = RationalPolynomial([c, 1])
        power = RationalPolynomial([1])
        for a in self.coeffs:
            out = out + power * a
            power = power * base
        return out

    def __repr__(self):
        return f"RationalPolynomial({[format_rational(c) for c in self.coeffs]})"


# ---------------------------------------------------------------------------
# truncated exponential generating functions


class ExpSeries:
    """Exponential generating function ``sum c_n t^n / n!`` truncated at ``order``."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable[Rational]):
        self.coeffs = tuple(as_fraction(c) for c in coeffs)
        if not self.coeffs:
            raise UsageError("an ExpSeries needs at least the constant term")

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    @classmethod
    def one(cls, order: int) -> ExpSeries:
        return cls([1] + [0] * order)

    @classmethod
    def exp(cls, rate: Rational, order: int) -> ExpSeries:
        """``e^{rate t}``."""
        rate = as_fraction(rate)
        return cls(rate**n for n in range(order + 1))

    def __eq__(self, other):
        if not isinstance(other, ExpSeries):
            return NotImplemented
        return self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def _check(self, other: ExpSeries) -> None:
        if self.order != other.order:
            raise UsageError(f"series order mismatch: {self.order} vs {other.order}")

    def __add__(self, other: ExpSeries) -> ExpSeries:
        self._check(other)
        return ExpSeries(a + b for a, b in zip(self.coeffs, other.coeffs))

    def __sub__(self, other: ExpSeries) -> ExpSeries:
        self._check(other)
        return ExpSeries(a - b for a, b in zip(self.coeffs, other.coeffs))

    def scale(self, c: Rational) -> ExpSeries:
        return ExpSeries(c * a for a in self.coeffs)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return series_product(self, other)

    def __pow__(self, k: int) -> ExpSeries:
        if k < 0:
            return self.inverse() ** (-k)
        out = ExpSeries.one(self.order)
        for _ in range(k):
            out = series_product(out, self)
        return out

    def inverse(self) -> ExpSeries:
        """Multiplicative inverse by forward substitution in the Cauchy product."""
        a = self.coeffs
        if a[0] == 0:
            raise DomainError("series with zero constant term is not invertible")
        inv0 = 1 / a[0]
        b = [inv0]
        for n in range(1, len(a)):
            acc = sum(comb(n, k) * a[k] * b[n - k] for k in range(1, n + 1))
            b.append(-inv0 * acc)
        return ExpSeries(b)

    def mul_t_power(self, w: int) -> ExpSeries:
        """Multiply by ``t**w`` keeping the same order.

        ``t^w g(t)`` has EGF coefficient ``n!/(n-w)! * g_{n-w}``.
        """
        out = []
        for n in range(self.order + 1):
            if n < w:
                out.append(Fraction(0))
            else:
                falling = 1
                for j in range(w):
                    falling *= n - j
                out.append(falling * self.coeffs[n - w])
        return ExpSeries(out)

    def truncate(self, order: int) -> ExpSeries:
        return ExpSeries(self.coeffs[: order + 1])

    def __repr__(self):
        return f"ExpSeries({[format_rational(c) for c in self.coeffs]})"


def series_product(a: ExpSeries, b: ExpSeries) -> ExpSeries:
    """EGF Cauchy product ``c_n = sum_k C(n,k) a_k b_{n-k}``."""
    a._check(b)
    ac, bc = a.coeffs, b.coeffs
    out = []
    for n in range(len(ac)):
        out.append(sum(comb(n, k) * ac[k] * bc[n - k] for k in range(n + 1) if ac[k] and bc[n - k]))
    return ExpSeries(Fraction(c) for c in out)


# ---------------------------------------------------------------------------
# cyclotomic fields

_phi_cache: dict[int, tuple[int, ...]] = {1: (-1, 1)}
_phi_lock = threading.Lock()


def _divisors(n: int) -> list[int]:
    small = [d for d in range(1, int(n**0.5) + 1) if n % d == 0]
    return sorted(set(small + [n // d for d in small]))


def _poly_divexact_int(num: list[int], den: Sequence[int]) -> list[int]:
    # den is monic
    num = list(num)
    dq = len(den) - 1
    q = [0] * (len(num) - dq)
    for i in range(len(num) - 1, dq - 1, -1):
        c = num[i]
        if c:
            q[i - dq] = c
            for j, d in enumerate(den):
                num[i - dq + j] -= c * d
    if any(num[:dq]):
        raise ArithmeticError("inexact cyclotomic division")
    return q


def cyclotomic_polynomial(n: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_n, lowest degree first (cached)."""
    if n <= 0:
        raise UsageError("cyclotomic root order must be positive")
    if n > MAX_ROOT_ORDER:
        raise UsageError(f"root order {n} exceeds the configured cap {MAX_ROOT_ORDER}")
    with _phi_lock:
        hit = _phi_cache.get(n)
    if hit is not None:
        return hit
    num = [-1] + [0] * (n - 1) + [1]
    for d in _divisors(n)[:-1]:
        num = _poly_divexact_int(num, cyclotomic_polynomial(d))
    phi = tuple(num)
    with _phi_lock:
        _phi_cache[n] = phi
    return phi


def euler_phi(n: int) -> int:
    return len(cyclotomic_polynomial(n)) - 1


def cyclotomic_reduce(raw: Sequence[Rational], n: int) -> CyclotomicNumber:
    """Canonical element of Q(zeta_n) for ``sum raw[i] zeta_n^i``."""
    if n <= 0:
        raise UsageError("cyclotomic root order must be positive")
    phi = cyclotomic_polynomial(n)
    deg = len(phi) - 1
    # zeta^n = 1 first, then divide by the monic Phi_n
    folded = [Fraction(0)] * n
    for i, c in enumerate(raw):
        if c:
            folded[i % n] += as_fraction(c)
    for i in range(n - 1, deg - 1, -1):
        c = folded[i]
        if c:
            folded[i] = Fraction(0)
            for j in range(deg):
                if phi[j]:
                    folded[i - deg + j] -= c * phi[j]
    return CyclotomicNumber._raw(n, tuple(folded[:deg]))


def _poly_divmod(a: list[Fraction], b: list[Fraction]) -> tuple[list[Fraction], list[Fraction]]:
    a = _trim(list(a))
    b = _trim(list(b))
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    q = [Fraction(0)] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    while len(a) >= len(b) and a:
        c = a[-1] / lead
        shift = len(a) - len(b)
        q[shift] = c
        for j, d in enumerate(b):
            a[shift + j] -= c * d
        a.pop()
        _trim(a)
    return _trim(q), a


def _poly_mul(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: Sequence[Fraction], b: Sequence[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = [Fraction(0)] * n
    for i, x in enumerate(a):
        out[i] += x
    for i, y in enumerate(b):
        out[i] -= y
    return _trim(out)


class CyclotomicNumber:
    """Element of Q(zeta_N) in the power basis ``1, zeta, ..., zeta^{phi(N)-1}``."""

    __slots__ = ("root_order", "coeffs")

    def __init__(self, coeffs: Sequence[Rational], root_order: int):
        reduced = cyclotomic_reduce(coeffs, root_order)
        self.root_order = reduced.root_order
        self.coeffs = reduced.coeffs

    @classmethod
    def _raw(cls, n: int, coeffs: tuple[Fraction, ...]) -> CyclotomicNumber:
        obj = object.__new__(cls)
        obj.root_order = n
        obj.coeffs = coeffs
        return obj

    @classmethod
    def rational(cls, q: Rational, root_order: int = 1) -> CyclotomicNumber:
        return cyclotomic_reduce([q], root_order)

    @classmethod
    def root_of_unity(cls, k: int, root_order: int) -> CyclotomicNumber:
        """``zeta_N ** k``."""
        raw = [0] * root_order
        raw[k % root_order] = 1
        return cyclotomic_reduce(raw, root_order)

    def lift(self, m: int) -> CyclotomicNumber:
        """Re-express in Q(zeta_m) for a multiple m of the root order."""
        if m % self.root_order:
            raise UsageError(f"{m} is not a multiple of {self.root_order}")
        if m == self.root_order:
            return self
        step = m // self.root_order
        raw = [Fraction(0)] * m
        for i, c in enumerate(self.coeffs):
            raw[i * step] = c
        return cyclotomic_reduce(raw, m)

    def _common(self, other) -> tuple[CyclotomicNumber, CyclotomicNumber]:
        if isinstance(other, (int, Fraction)):
            other = CyclotomicNumber.rational(other, self.root_order)
        elif not isinstance(other, CyclotomicNumber):
            raise TypeError(f"cannot combine CyclotomicNumber with {type(other).__name__}")
        if other.root_order == self.root_order:
            return self, other
        m = self.root_order * other.root_order // gcd(self.root_order, other.root_order)
        return self.lift(m), other.lift(m)

    def is_zero(self) -> bool:
        return not any(self.coeffs)

    def is_rational(self) -> bool:
        return not any(self.coeffs[1:])

    def to_rational(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self!r} is not rational")
        return self.coeffs[0] if self.coeffs else Fraction(0)

    def __eq__(self, other):
        if isinstance(other, (int, Fraction, CyclotomicNumber)):
            a, b = self._common(other)
            return a.coeffs == b.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.to_rational())
        return hash((self.root_order, self.coeffs))

    def __add__(self, other):
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return CyclotomicNumber._raw(a.root_order, tuple(x + y for x, y in zip(a.coeffs, b.coeffs)))

    __radd__ = __add__

    def __neg__(self):
        return CyclotomicNumber._raw(self.root_order, tuple(-c for c in self.coeffs))

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return CyclotomicNumber._raw(self.root_order, tuple(c * other for c in self.coeffs))
        try:
            a, b = self._common(other)
        except TypeError:
            return NotImplemented
        return cyclotomic_reduce(_poly_mul(a.coeffs, b.coeffs), a.root_order)

    __rmul__ = __mul__

    def inverse(self) -> CyclotomicNumber:
        """Inverse via the extended Euclidean algorithm against Phi_N."""
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in a cyclotomic field")
        n = self.root_order
        r0 = [Fraction(c) for c in cyclotomic_polynomial(n)]
        r1 = _trim(list(self.coeffs))
        s0: list[Fraction] = []
        s1: list[Fraction] = [Fraction(1)]
        # invariant: s_i * self == r_i  (mod Phi_N)
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            s0, s1 = s1, _poly_sub(s0, _poly_mul(q, s1))
        c = r1[0]
        return cyclotomic_reduce([x / c for x in s1], n)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (1 / Fraction(other))
        a, b = self._common(other)
        return a * b.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int) -> CyclotomicNumber:
        base = self if k >= 0 else self.inverse()
        out = CyclotomicNumber.rational(1, self.root_order)
        for _ in range(abs(k)):
            out = out * base
        return out

    def conjugate(self) -> CyclotomicNumber:
        n = self.root_order
        raw = [Fraction(0)] * n
        for i, c in enumerate(self.coeffs):
            raw[(-i) % n] += c
        return cyclotomic_reduce(raw, n)

    def __complex__(self):
        return cyclotomic_to_complex(self)

    def __repr__(self):
        return f"CyclotomicNumber({[format_rational(c) for c in self.coeffs]}, root_order={self.root_order})"


def cyclotomic_to_complex(z: CyclotomicNumber) -> complex:
    zeta = cmath.exp(2j * cmath.pi / z.root_order)
    return sum((float(c) * zeta**i for i, c in enumerate(z.coeffs)), 0j)


def cyclotomic_to_json(z: CyclotomicNumber) -> dict:
    return {"root_order": z.root_order, "coeffs": [format_rational(c) for c in z.coeffs]}


def cyclotomic_from_json(obj: dict) -> CyclotomicNumber:
    return cyclotomic_reduce([parse_rational(c) for c in obj["coeffs"]], obj["root_order"])
