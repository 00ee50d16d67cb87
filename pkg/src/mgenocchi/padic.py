"""Finite-precision p-adic numbers for odd p, with the series kernels used by L_p.

A :class:`PadicNumber` is in one of three states:

* exact zero (infinite precision),
* bounded zero: known to vanish modulo ``p**M`` and nothing more,
* a value ``p**v * u`` with ``p`` not dividing ``u``, known modulo ``p**(v+N)``
  (relative precision ``N``).

Addition keeps the smaller absolute precision; multiplication and division
keep the smaller relative precision.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Union

from .dirichlet import is_prime
from .errors import DomainError, UsageError

DEFAULT_PRECISION = 40
DEFAULT_GUARD = 5

INF = math.inf


@dataclass(frozen=True)
class PrecisionPolicy:
    digits: int = DEFAULT_PRECISION
    guard: int = DEFAULT_GUARD

    def __post_init__(self):
        if self.digits < 1 or self.guard < 0:
            raise UsageError("precision needs digits >= 1 and guard >= 0")

    @property
    def working(self) -> int:
        """Digits carried through intermediate computations."""
        return self.digits + self.guard

    @property
    def check_level(self) -> int:
        """Residuals must vanish to this many digits."""
        return self.digits - self.guard


def check_prime(p: int) -> None:
    if not isinstance(p, int) or p == 2 or not is_prime(p):
        raise UsageError(f"p must be an odd prime, got {p!r}")


def valuation(n: int, p: int) -> int:
    """p-adic valuation of a nonzero integer."""
    if n == 0:
        raise ValueError("valuation of 0")
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _qvaluation(q: Fraction, p: int) -> int:
    return valuation(q.numerator, p) - valuation(q.denominator, p)


Coercible = Union[int, Fraction, "PadicNumber"]


class PadicNumber:
    __slots__ = ("p", "_kind", "_val", "_unit", "_prec")

    EXACT_ZERO = "exact_zero"
    BOUNDED_ZERO = "bounded_zero"
    VALUE = "value"

    # -- constructors -------------------------------------------------------

    @classmethod
    def exact_zero(cls, p: int) -> PadicNumber:
        obj = object.__new__(cls)
        obj.p, obj._kind, obj._val, obj._unit, obj._prec = p, cls.EXACT_ZERO, INF, 0, INF
        return obj

    @classmethod
    def bounded_zero(cls, p: int, m) -> PadicNumber:
        if m == INF:
            return cls.exact_zero(p)
        obj = object.__new__(cls)
        obj.p, obj._kind, obj._val, obj._unit, obj._prec = p, cls.BOUNDED_ZERO, int(m), 0, 0
        return obj

    @classmethod
    def from_parts(cls, p: int, v: int, unit: int, prec: int) -> PadicNumber:
        """``p**v * unit`` known to relative precision ``prec``; unit is normalized."""
        if prec <= 0:
            return cls.bounded_zero(p, v)
        unit %= p**prec
        if unit == 0:
            return cls.bounded_zero(p, v + prec)
        k = valuation(unit, p)
        if k:
            unit //= p**k
            v += k
            prec -= k
            unit %= p**prec
        obj = object.__new__(cls)
        obj.p, obj._kind, obj._val, obj._unit, obj._prec = p, cls.VALUE, v, unit, prec
        return obj

    # -- accessors ------------------------------------------------------------

    @property
    def kind(self) -> str:
        return self._kind

    @property
    def valuation(self):
        """Valuation for values; the known lower bound for zeros."""
        return self._val

    @property
    def relative_precision(self):
        return self._prec if self._kind == self.VALUE else 0

    @property
    def absolute_precision(self):
        if self._kind == self.VALUE:
            return self._val + self._prec
        return self._val

    @property
    def unit(self) -> int:
        return self._unit

    @property
    def digits(self) -> list[int]:
        out, u = [], self._unit
        for _ in range(self.relative_precision):
            out.append(u % self.p)
            u //= self.p
        return out

    def is_zero(self) -> bool:
        return self._kind != self.VALUE

    def zero_mod(self):
        """Largest M with self == 0 mod p^M as far as is known (inf for exact zero)."""
        return self._val

    def residue(self, m: int) -> int:
        """Integer representative modulo p^m; needs valuation >= 0 and enough precision."""
        if m > self.absolute_precision:
            raise DomainError(f"only known modulo p^{self.absolute_precision}, asked p^{m}")
        if self._kind != self.VALUE:
            return 0
        if self._val < 0:
            raise DomainError("negative valuation has no residue in Z/p^m")
        return (self._unit * self.p**self._val) % self.p**m

    def to_fraction(self) -> Fraction:
        """The stored representative ``p**v * unit`` (0 for zeros)."""
        if self._kind != self.VALUE:
            return Fraction(0)
        return Fraction(self._unit) * Fraction(self.p) ** self._val

    # -- precision ------------------------------------------------------------

    def cap(self, m) -> PadicNumber:
        """Forget everything beyond absolute precision m."""
        if m >= self.absolute_precision:
            return self
        if self._kind == self.VALUE:
            return PadicNumber.from_parts(self.p, self._val, self._unit, m - self._val)
        return PadicNumber.bounded_zero(self.p, m)

    def _coerce(self, other: Coercible) -> PadicNumber:
        if isinstance(other, PadicNumber):
            if other.p != self.p:
                raise UsageError(f"mixing Q_{self.p} and Q_{other.p}")
            return other
        q = Fraction(other)
        if q == 0:
            return PadicNumber.exact_zero(self.p)
        v = _qvaluation(q, self.p)
        if self._kind == self.EXACT_ZERO:
            prec = DEFAULT_PRECISION
        else:
            prec = max(self.relative_precision, self.absolute_precision - v, 1)
        return padic_from_rational(q, self.p, int(prec))

    # -- arithmetic -------------------------------------------------------------

    def __add__(self, other: Coercible) -> PadicNumber:
        other = self._coerce(other)
        if self._kind == self.EXACT_ZERO:
            return other
        if other._kind == self.EXACT_ZERO:
            return self
        p = self.p
        m = min(self.absolute_precision, other.absolute_precision)
        v0 = min(self._val, other._val)
        if v0 >= m:
            return PadicNumber.bounded_zero(p, m)
        x = 0
        for z in (self, other):
            if z._kind == self.VALUE:
                x += z._unit * p ** (z._val - v0)
        return PadicNumber.from_parts(p, v0, x, m - v0)

    __radd__ = __add__

    def __neg__(self) -> PadicNumber:
        if self._kind != self.VALUE:
            return self
        return PadicNumber.from_parts(self.p, self._val, -self._unit, self._prec)

    def __sub__(self, other: Coercible) -> PadicNumber:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Coercible) -> PadicNumber:
        return self._coerce(other) + (-self)

    def __mul__(self, other: Coercible) -> PadicNumber:
        other = self._coerce(other)
        p = self.p
        if self._kind == self.EXACT_ZERO or other._kind == self.EXACT_ZERO:
            return PadicNumber.exact_zero(p)
        if self._kind == self.VALUE and other._kind == self.VALUE:
            prec = min(self._prec, other._prec)
            return PadicNumber.from_parts(p, self._val + other._val, self._unit * other._unit, prec)
        # at least one bounded zero: the valuation lower bounds add
        return PadicNumber.bounded_zero(p, self._val + other._val)

    __rmul__ = __mul__

    def inverse(self) -> PadicNumber:
        if self._kind != self.VALUE:
            raise ZeroDivisionError("p-adic division by a (possibly) zero element")
        mod = self.p**self._prec
        return PadicNumber.from_parts(self.p, -self._val, pow(self._unit, -1, mod), self._prec)

    def __truediv__(self, other: Coercible) -> PadicNumber:
        return self * self._coerce(other).inverse()

    def __rtruediv__(self, other: Coercible) -> PadicNumber:
        return self._coerce(other) * self.inverse()

    def __pow__(self, k: int) -> PadicNumber:
        if not isinstance(k, int):
            raise TypeError("only integer powers; use angle_pow for p-adic exponents")
        if k < 0:
            return self.inverse() ** (-k)
        if k == 0:
            return padic_from_rational(1, self.p, max(self.relative_precision, 1))
        if self._kind == self.EXACT_ZERO:
            return self
        if self._kind == self.BOUNDED_ZERO:
            return PadicNumber.bounded_zero(self.p, self._val * k)
        mod = self.p**self._prec
        return PadicNumber.from_parts(self.p, self._val * k, pow(self._unit, k, mod), self._prec)

    def __eq__(self, other):
        """Equal as far as the precision of both operands allows."""
        if not isinstance(other, (PadicNumber, int, Fraction)):
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        if self._kind == self.EXACT_ZERO:
            return f"PadicNumber(0, p={self.p})"
        if self._kind == self.BOUNDED_ZERO:
            return f"PadicNumber(O({self.p}^{self._val}))"
        return (
            f"PadicNumber({self.p}^{self._val} * {self._unit} + O({self.p}^{self.absolute_precision}))"
        )

    # -- serialization ------------------------------------------------------------

    def to_json(self) -> dict:
        if self._kind == self.EXACT_ZERO:
            return {"zero": True}
        if self._kind == self.BOUNDED_ZERO:
            return {"zero_mod": self._val}
        return {"p": self.p, "valuation": self._val, "digits": self.digits, "precision": self._prec}

    @classmethod
    def from_json(cls, obj: dict, p: int | None = None) -> PadicNumber:
        if obj.get("zero"):
            return cls.exact_zero(p)
        if "zero_mod" in obj:
            return cls.bounded_zero(p, obj["zero_mod"])
        p = obj["p"]
        unit = sum(d * p**i for i, d in enumerate(obj["digits"]))
        return cls.from_parts(p, obj["valuation"], unit, obj["precision"])


# ---------------------------------------------------------------------------


def padic_from_rational(q, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """Embed a rational into Q_p with relative precision ``prec``."""
    check_prime(p)
    q = Fraction(q)
    if q == 0:
        return PadicNumber.exact_zero(p)
    a = valuation(q.numerator, p)
    b = valuation(q.denominator, p)
    mod = p**prec
    unit = (q.numerator // p**a) * pow(q.denominator // p**b, -1, mod)
    return PadicNumber.from_parts(p, a - b, unit, prec)


def _as_padic(x: Coercible, p: int, prec: int) -> PadicNumber:
    if isinstance(x, PadicNumber):
        return x
    return padic_from_rational(x, p, prec)


@lru_cache(maxsize=None)
def _teichmuller_residue(a_mod_p: int, p: int, prec: int) -> int:
    mod = p**prec
    x = a_mod_p % mod
    for _ in range(prec + 1):
        nxt = pow(x, p, mod)
        if nxt == x:
            return x
        x = nxt
    raise ArithmeticError("Teichmuller iteration did not stabilize")  # pragma: no cover


def teichmuller(a: int, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """omega(a): the (p-1)-th root of unity congruent to a mod p."""
    check_prime(p)
    if a % p == 0:
        raise DomainError(f"omega({a}) undefined: {p} divides {a}")
    return PadicNumber.from_parts(p, 0, _teichmuller_residue(a % p, p, prec), prec)


def angle(a: int, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """<a> = a / omega(a), a principal unit."""
    check_prime(p)
    if a % p == 0:
        raise DomainError(f"<{a}> undefined: {p} divides {a}")
    mod = p**prec
    u = a * pow(_teichmuller_residue(a % p, p, prec), -1, mod)
    return PadicNumber.from_parts(p, 0, u, prec)


def _floor_log(k: int, p: int) -> int:
    # floor(log_p k) for k >= 1, an upper bound for v_p(k)
    e = 0
    while p ** (e + 1) <= k:
        e += 1
    return e


def log_p(u: PadicNumber) -> PadicNumber:
    """Logarithm of a principal unit: sum (-1)^(k+1) (u-1)^k / k.

    Term k has valuation >= k*v - floor(log_p k) where v = v(u-1) >= 1; this
    bound is nondecreasing in k, so stopping at the first k where it reaches
    the target bounds the whole tail.
    """
    p = u.p
    if u.is_zero() or u.valuation != 0:
        raise DomainError("log_p needs a unit congruent to 1 mod p")
    x = u - 1
    target = x.absolute_precision
    if x.is_zero():
        return PadicNumber.bounded_zero(p, target)
    v = x.valuation
    if v < 1:
        raise DomainError("log_p needs u == 1 mod p; use log_p_unit for general units")
    total = PadicNumber.exact_zero(p)
    power = x
    k = 1
    while k * v - _floor_log(k, p) < target:
        term = power / k
        total = total + (term if k % 2 else -term)
        power = power * x
        k += 1
    return total.cap(k * v - _floor_log(k, p))


def log_p_unit(a: Coercible, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """log_p extended to all units by log_p(a) := log_p(<a>)."""
    if isinstance(a, int):
        return log_p(angle(a, p, prec))
    u = _as_padic(a, p, prec)
    if u.is_zero() or u.valuation != 0:
        raise DomainError("log_p_unit needs a p-adic unit")
    w = teichmuller(u.residue(1), p, u.relative_precision)
    return log_p(u / w)


def _exp_tail_bound(k: int, v: int, p: int) -> int:
    # v(x^k/k!) >= k*v - (k-1)/(p-1), increasing in k
    return math.ceil(k * v - Fraction(k - 1, p - 1))


def exp_p(x: PadicNumber) -> PadicNumber:
    """sum x^k/k! for v(x) >= 1 (p odd)."""
    p = x.p
    if x.kind == PadicNumber.EXACT_ZERO:
        return padic_from_rational(1, p, DEFAULT_PRECISION)
    target = x.absolute_precision
    if x.kind == PadicNumber.BOUNDED_ZERO:
        if target < 1:
            raise DomainError("exp_p argument not known to have valuation >= 1")
        return padic_from_rational(1, p, target)
    v = x.valuation
    if v < 1:
        raise DomainError(f"exp_p diverges: valuation {v} < 1")
    total = padic_from_rational(1, p, target)
    term = padic_from_rational(1, p, target)
    k = 1
    while _exp_tail_bound(k, v, p) < target:
        term = term * x / k
        total = total + term
        k += 1
    return total.cap(_exp_tail_bound(k, v, p))


def angle_pow(a: int, s: Coercible, p: int, prec: int = DEFAULT_PRECISION) -> PadicNumber:
    """<a>^(-s) = exp_p(-s log_p <a>) for s in Z_p."""
    s = _as_padic(s, p, prec)
    if not s.is_zero() and s.valuation < 0:
        raise DomainError("angle_pow needs s in Z_p")
    if s.kind == PadicNumber.EXACT_ZERO:
        return padic_from_rational(1, p, prec)
    return exp_p(-(s * _log_angle(a % p**prec, p, prec)))


@lru_cache(maxsize=4096)
def _log_angle(a: int, p: int, prec: int) -> PadicNumber:
    return log_p(angle(a, p, prec))


def binom_neg(s: Coercible, k: int, p: int | None = None, prec: int = DEFAULT_PRECISION):
    """C(-s, k) = prod_{j<k} (-s-j)/(j+1).

    Exact rationals give an exact Fraction; p-adic input is tracked p-adically.
    """
    if k < 0:
        raise UsageError("k must be non-negative")
    if isinstance(s, PadicNumber):
        out = padic_from_rational(1, s.p, max(s.relative_precision, prec))
        for j in range(k):
            out = out * (-s - j) / (j + 1)
        return out
    s = Fraction(s)
    out = Fraction(1)
    for j in range(k):
        out = out * (-s - j) / (j + 1)
    if p is not None:
        return padic_from_rational(out, p, prec)
    return out
