"""The multiple Genocchi p-adic L-function and its interpolation property.

``lambda_p(ctx, s)`` is ``Lambda(s) = w! * C(-s, w) * L_p^{(w)}(s + w | chi)``,
computed directly from the defining finite/infinite double sum, restricted to
tuple sums t prime to p (``<t>`` is undefined otherwise).

Character values are embedded in Z_p by sending ``zeta_{p-1}`` to
``omega(g)``, g the canonical primitive root mod p.  The same embedding makes
the Dirichlet character ``omega`` (exponent 1 on g) agree with the Teichmuller
lift.  ``chi_n = chi * omega^{-n}`` is always evaluated through its associated
primitive character.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from math import comb, factorial

from .dirichlet import (
    DirichletCharacter,
    RootOfUnityValue,
    associated_primitive,
    character_product,
    teichmuller_character,
    unit_group,
)
from .errors import DomainError, UsageError
from .exact import CyclotomicNumber, cyclotomic_reduce
from .genocchi import eval_multiple_genocchi, multiple_genocchi_numbers
from .lseries import tuple_sum_weights
from .padic import (
    PadicNumber,
    PrecisionPolicy,
    angle_pow,
    binom_neg,
    check_prime,
    log_p,
    angle,
    padic_from_rational,
    teichmuller,
    valuation,
)


def _sign(t: int) -> int:
    return -1 if t % 2 else 1


@dataclass(frozen=True)
class PadicLContext:
    p: int
    chi: DirichletCharacter
    w: int
    F: int
    policy: PrecisionPolicy = field(default_factory=PrecisionPolicy)

    def __post_init__(self):
        check_prime(self.p)
        if self.w < 1:
            raise UsageError(f"order w must be at least 1, got {self.w}")
        f = self.chi.modulus
        if self.F < 1 or self.F % 2 == 0:
            raise UsageError(f"F must be a positive odd integer, got {self.F}")
        if self.F % self.p or self.F % f:
            raise UsageError(f"F={self.F} must be a multiple of p={self.p} and f={f}")
        if (self.p - 1) % self.chi.order:
            raise UsageError(
                f"character order {self.chi.order} does not divide p-1={self.p - 1}; "
                "its values do not embed in Q_p"
            )

    @property
    def prec(self) -> int:
        return self.policy.working

    @cached_property
    def primitive(self) -> DirichletCharacter:
        return associated_primitive(self.chi)

    @cached_property
    def omega(self) -> DirichletCharacter:
        return teichmuller_character(self.p)

    @cached_property
    def _zeta_image(self) -> PadicNumber:
        g = unit_group(self.p).generators[0]
        return teichmuller(g, self.p, self.prec)

    @cached_property
    def _zeta_powers(self) -> list[PadicNumber]:
        z = self._zeta_image
        out = [padic_from_rational(1, self.p, self.prec)]
        for _ in range(self.p - 2):
            out.append(out[-1] * z)
        return out

    @cached_property
    def weights(self):
        return tuple_sum_weights(self.F, self.w)

    @property
    def vF(self) -> int:
        return valuation(self.F, self.p)

    def chi_n(self, n: int) -> DirichletCharacter:
        return associated_primitive(character_product(self.primitive, self.omega ** (-n)))

    def exponent(self, value: RootOfUnityValue) -> int | None:
        """Exponent of zeta_{p-1} for a character value (None for zero)."""
        if value.is_zero:
            return None
        return value.exponent_in(self.p - 1)

    def embed_value(self, value: RootOfUnityValue) -> PadicNumber:
        k = self.exponent(value)
        if k is None:
            return PadicNumber.exact_zero(self.p)
        return self._zeta_powers[k]

    def embed(self, z: CyclotomicNumber) -> PadicNumber:
        """Image of an element of Q(zeta_{p-1}) (or a subfield) in Q_p."""
        z = z.lift(self.p - 1) if (self.p - 1) % z.root_order == 0 else None
        if z is None:
            raise UsageError("element does not lie in Q(zeta_{p-1})")
        total = PadicNumber.exact_zero(self.p)
        for c, power in zip(z.coeffs, self._zeta_powers):
            if c:
                total = total + padic_from_rational(c, self.p, self.prec) * power
        return total

    def genocchi_table(self, k_max: int):
        return multiple_genocchi_numbers(self.w, max(k_max, self.w))

    @property
    def k_max(self) -> int:
        """Truncation of the k-sum.

        Terms have valuation >= k - v_p(k!) > k (p-2)/(p-1) before the 1/F^w
        factor; the bound used adds w v_p(F) and the guard digits.
        """
        p = self.p
        return math.ceil(self.prec * (p - 1) / (p - 2)) + self.policy.guard + self.w * self.vF


def _cyc(raw: list[Fraction], p: int) -> CyclotomicNumber:
    return cyclotomic_reduce(raw, p - 1)


# ---------------------------------------------------------------------------
# Lambda(s)


def lambda_p(ctx: PadicLContext, s) -> PadicNumber:
    """Lambda(s) = w! C(-s,w) L_p^{(w)}(s+w | chi) for s in Z_p.

    ``s`` may be an int, a Fraction with denominator prime to p, or a
    PadicNumber.  Exact s gives exact binomial coefficients; the tail of the
    k-sum beyond ``ctx.k_max`` is accounted for in the returned precision.
    """
    p, w, F = ctx.p, ctx.w, ctx.F
    prec = ctx.prec
    exact_s = not isinstance(s, PadicNumber)
    if exact_s:
        s = Fraction(s)
        if s != 0 and valuation(s.denominator, p) > 0:
            raise DomainError("lambda_p needs s in Z_p")
    elif not s.is_zero() and s.valuation < 0:
        raise DomainError("lambda_p needs s in Z_p")

    k_max = ctx.k_max
    binoms = []
    terminated = False
    for k in range(k_max + 1):
        if exact_s:
            b = binom_neg(s, k)
            if b == 0:
                terminated = True
                break
        else:
            b = binom_neg(s, k, prec=prec)
        binoms.append(b)
    g = ctx.genocchi_table(len(binoms))

    total = PadicNumber.exact_zero(p)
    for t, r in ctx.weights.items():
        if t % p == 0:
            continue
        cv = ctx.primitive(t)
        if cv.is_zero:
            continue
        ratio = Fraction(F, t)
        if exact_s:
            inner = padic_from_rational(
                sum(b * ratio**k * g[k] for k, b in enumerate(binoms) if g[k]) or 0, p, prec
            )
        else:
            inner = PadicNumber.exact_zero(p)
            ratio_p = padic_from_rational(ratio, p, prec)
            power = padic_from_rational(1, p, prec)
            for k, b in enumerate(binoms):
                if g[k]:
                    inner = inner + b * power * int(g[k])
                power = power * ratio_p
        weight = ctx.embed_value(cv) * (r * _sign(t))
        total = total + weight * angle_pow(t, s, p, prec) * inner
    total = total / Fraction(F) ** w
    if not terminated:
        # omitted k > k_max: integral binomial times (F/t)^k, then / F^w
        total = total.cap((len(binoms)) * ctx.vF - w * ctx.vF)
    return total.cap(prec - w * ctx.vF)


# ---------------------------------------------------------------------------
# twisted and starred numbers, exact in Q(zeta_{p-1})


def twisted_numbers_exact(ctx: PadicLContext, n: int) -> CyclotomicNumber:
    """G_{n,chi_n}^{(w)} = F^{n-w} sum_t r(t) (-1)^t chi_n(t) G_n^{(w)}(t/F)."""
    return _twisted_sum(ctx, n, coprime_only=False)


def coprime_part_exact(ctx: PadicLContext, n: int) -> CyclotomicNumber:
    """The p-prime-to-t part of the twisted sum."""
    return _twisted_sum(ctx, n, coprime_only=True)


def _twisted_sum(ctx: PadicLContext, n: int, coprime_only: bool) -> CyclotomicNumber:
    if n < 0:
        raise DomainError("n must be non-negative")
    p, w, F = ctx.p, ctx.w, ctx.F
    chi_n = ctx.chi_n(n)
    raw = [Fraction(0)] * (p - 1)
    for t, r in ctx.weights.items():
        if coprime_only and t % p == 0:
            continue
        k = ctx.exponent(chi_n(t))
        if k is None:
            continue
        raw[k] += r * _sign(t) * eval_multiple_genocchi(w, n, Fraction(t, F))
    return _cyc(raw, p) * Fraction(F) ** (n - w)


def starred_numbers_exact(ctx: PadicLContext, n: int) -> CyclotomicNumber:
    """G*_{n,chi_n}^{(w)}: tuples in [1,F]^w with p | t, substituting lambda = t/p."""
    if n < 0:
        raise DomainError("n must be non-negative")
    p, w, F = ctx.p, ctx.w, ctx.F
    Fp = F // p
    chi_n = ctx.chi_n(n)
    raw = [Fraction(0)] * (p - 1)
    for t, r in ctx.weights.items():
        if t % p:
            continue
        lam = t // p
        k = ctx.exponent(chi_n(lam))
        if k is None:
            continue
        raw[k] += r * _sign(lam) * eval_multiple_genocchi(w, n, Fraction(lam, Fp))
    return _cyc(raw, p) * Fraction(Fp) ** (n - w)


def chi_n_at_p(ctx: PadicLContext, n: int) -> CyclotomicNumber:
    v = ctx.chi_n(n)(ctx.p)
    return v.to_cyclotomic(ctx.p - 1)


def interpolation_rhs_exact(ctx: PadicLContext, n: int) -> CyclotomicNumber:
    """G_{n,chi_n}^{(w)} - p^{n-w} chi_n(p) G*_{n,chi_n}^{(w)}."""
    correction = chi_n_at_p(ctx, n) * starred_numbers_exact(ctx, n) * Fraction(ctx.p) ** (n - ctx.w)
    return twisted_numbers_exact(ctx, n) - correction


def expanded_coprime_exact(ctx: PadicLContext, n: int) -> CyclotomicNumber:
    """Coprime sum with G_n^{(w)}(t/F) expanded as F^{-n} t^n sum_k C(n,k)(F/t)^k G_k^{(w)}."""
    p, w, F = ctx.p, ctx.w, ctx.F
    g = ctx.genocchi_table(n)
    chi_n = ctx.chi_n(n)
    raw = [Fraction(0)] * (p - 1)
    for t, r in ctx.weights.items():
        if t % p == 0:
            continue
        k_ = ctx.exponent(chi_n(t))
        if k_ is None:
            continue
        inner = sum(comb(n, k) * Fraction(F, t) ** k * g[k] for k in range(n + 1))
        raw[k_] += r * _sign(t) * Fraction(t) ** n * inner
    return _cyc(raw, p) / Fraction(F) ** w


def twisted_numbers(ctx: PadicLContext, n: int) -> PadicNumber:
    return ctx.embed(twisted_numbers_exact(ctx, n))


def starred_numbers(ctx: PadicLContext, n: int) -> PadicNumber:
    return ctx.embed(starred_numbers_exact(ctx, n))


def verify_interpolation(ctx: PadicLContext, n: int) -> PadicNumber:
    """lambda_p(-n) minus the twisted/starred combination; should be a bounded zero."""
    if n < 1:
        raise DomainError("interpolation is stated for n >= 1")
    return lambda_p(ctx, -n) - ctx.embed(interpolation_rhs_exact(ctx, n))


# ---------------------------------------------------------------------------
# derivative at s = 0


@dataclass(frozen=True)
class DerivativeAtZero:
    lambda_prime: PadicNumber  # d/ds Lambda(s) at 0
    scaled: PadicNumber  # d/ds (C(-s,w) L_p(s+w)) at 0 = lambda_prime / w!
    l_p_at_w: PadicNumber  # L_p^{(w)}(w | chi) = (-1)^w w * scaled


def _derivative_inner(ctx: PadicLContext, t: int, k_max: int) -> Fraction:
    g = ctx.genocchi_table(k_max)
    ratio = Fraction(ctx.F, t)
    return sum(Fraction((-1) ** k, k) * ratio**k * g[k] for k in range(1, k_max + 1) if g[k])


def _derivative_k_max(ctx: PadicLContext) -> tuple[int, int]:
    # term valuation >= k v(F) - floor(log_p k); stop once it clears the target
    target = ctx.prec + ctx.w * ctx.vF
    k = 1
    while k * ctx.vF - _floor_log(k, ctx.p) < target:
        k += 1
    return k - 1, k * ctx.vF - _floor_log(k, ctx.p) - ctx.w * ctx.vF


def _floor_log(k: int, p: int) -> int:
    e = 0
    while p ** (e + 1) <= k:
        e += 1
    return e


def lambda_derivative_0(ctx: PadicLContext) -> DerivativeAtZero:
    """Term-wise derivative of Lambda at 0.

    d/ds C(-s,k) at 0 is (-1)^k/k for k >= 1; the d/ds <t>^{-s} part multiplies
    sum_k C(0,k)(F/t)^k G_k^{(w)} = G_0^{(w)} = 0 and drops out.
    """
    p, w = ctx.p, ctx.w
    k_max, tail = _derivative_k_max(ctx)
    total = PadicNumber.exact_zero(p)
    for t, r in ctx.weights.items():
        if t % p == 0:
            continue
        cv = ctx.primitive(t)
        if cv.is_zero:
            continue
        inner = padic_from_rational(_derivative_inner(ctx, t, k_max) or 0, p, ctx.prec)
        total = total + ctx.embed_value(cv) * (r * _sign(t)) * inner
    total = (total / Fraction(ctx.F) ** w).cap(tail)
    scaled = total / factorial(w)
    return DerivativeAtZero(total, scaled, scaled * ((-1) ** w * w))


def difference_quotient(ctx: PadicLContext, h: int) -> PadicNumber:
    """(Lambda(h) - Lambda(0)) / h."""
    return (lambda_p(ctx, h) - lambda_p(ctx, 0)) / h


def log_term_closed_form(ctx: PadicLContext) -> PadicNumber:
    """Closed form carrying an extra (1 - log_p<t>) factor per term, inner index m read as k.

    (1/(w! F^w)) sum_{p∤t} chi(t)(-1)^t [ (1 - log_p<t>) + sum_k (-1)^k/k (F/t)^k G_k ]
    """
    p, w = ctx.p, ctx.w
    k_max, tail = _derivative_k_max(ctx)
    total = PadicNumber.exact_zero(p)
    for t, r in ctx.weights.items():
        if t % p == 0:
            continue
        cv = ctx.primitive(t)
        if cv.is_zero:
            continue
        series = padic_from_rational(_derivative_inner(ctx, t, k_max) or 0, p, ctx.prec)
        log_term = 1 - log_p(angle(t, p, ctx.prec))
        total = total + ctx.embed_value(cv) * (r * _sign(t)) * (log_term + series)
    return (total / (factorial(w) * Fraction(ctx.F) ** w)).cap(tail)


def derivative_report(ctx: PadicLContext, exponents=(10, 12)) -> dict:
    """Compare the term-wise derivative with difference quotients and the log-term closed form."""
    d = lambda_derivative_0(ctx)
    rows = []
    for e in exponents:
        q = difference_quotient(ctx, ctx.p**e)
        rows.append({"h_exponent": e, "agreement_zero_mod": _json_mod((q - d.lambda_prime).zero_mod())})
    closed = log_term_closed_form(ctx)
    return {
        "params": context_params(ctx),
        "termwise_scaled": d.scaled.to_json(),
        "l_p_at_w": d.l_p_at_w.to_json(),
        "difference_quotients": rows,
        "log_term_closed_form": closed.to_json(),
        "closed_form_minus_termwise_zero_mod": _json_mod((closed - d.scaled).zero_mod()),
    }


def _json_mod(m):
    return "inf" if m == math.inf else int(m)


def context_params(ctx: PadicLContext) -> dict:
    return {
        "p": ctx.p,
        "modulus": ctx.chi.modulus,
        "char": ctx.chi.label,
        "w": ctx.w,
        "F": ctx.F,
        "prec": ctx.policy.digits,
    }
