"""Verification suites: every identity checked by two independent routes.

Each suite returns a :class:`VerificationReport` whose case records carry the
parameters, the relation checked, how the residual vanished, and a pass flag.
"""

from __future__ import annotations

import csv
import io
import json
import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from math import comb, factorial

from .dirichlet import DirichletCharacter, enumerate_characters
from .genocchi import genocchi_numbers, multiple_genocchi_numbers
from .lseries import (
    generalized_genocchi,
    generalized_genocchi_series_oracle,
    l_value_neg,
    l_value_via_partition,
    partial_zeta_closed_form,
    partial_zeta_numeric,
    washington_rhs_at_neg,
    zeta_numeric,
)
from .padic import (
    PrecisionPolicy,
    angle,
    angle_pow,
    binom_neg,
    exp_p,
    log_p,
    padic_from_rational,
    teichmuller,
)
from .padic_l import (
    PadicLContext,
    chi_n_at_p,
    context_params,
    coprime_part_exact,
    derivative_report,
    difference_quotient,
    lambda_derivative_0,
    starred_numbers_exact,
    twisted_numbers_exact,
    verify_interpolation,
)

SUITES = ("identities", "partition", "interpolation", "derivative", "kernels")
PADIC_PRIMES = (3, 5, 7)
DERIVATIVE_PRIMES = (5, 7)
NUMERIC_TOL = 1e-8


@dataclass
class Case:
    check: str
    params: dict
    relation: str
    passed: bool
    residual: dict = field(default_factory=dict)

    def sort_key(self):
        return (self.check, json.dumps(self.params, sort_keys=True))

    def to_json(self) -> dict:
        out = {"check": self.check, "params": self.params, "relation": self.relation}
        out.update(self.residual)
        out["pass"] = self.passed
        return out


@dataclass
class VerificationReport:
    suite: str
    cases: list[Case] = field(default_factory=list)
    notes: list[dict] = field(default_factory=list)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.cases)

    def summary(self) -> dict:
        n_pass = sum(c.passed for c in self.cases)
        return {"total": len(self.cases), "passed": n_pass, "failed": len(self.cases) - n_pass, "pass": self.passed}

    def to_json(self) -> dict:
        out = {
            "suite": self.suite,
            "cases": [c.to_json() for c in sorted(self.cases, key=Case.sort_key)],
            "summary": self.summary(),
        }
        if self.notes:
            out["notes"] = self.notes
        out["wall_time_s"] = round(self.wall_time, 3)
        return out


def emit_report(report: VerificationReport, fmt: str = "json") -> str:
    if fmt == "json":
        return json.dumps(report.to_json(), indent=2) + "\n"
    cases = sorted(report.cases, key=Case.sort_key)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(["check", "params", "relation", "pass"])
        for c in cases:
            writer.writerow([c.check, json.dumps(c.params, sort_keys=True), c.relation, c.passed])
        return buf.getvalue()
    lines = []
    for c in cases:
        extra = " ".join(f"{k}={v}" for k, v in c.residual.items())
        lines.append(f"{'PASS' if c.passed else 'FAIL'} {c.check} {json.dumps(c.params, sort_keys=True)} {extra}".rstrip())
    s = report.summary()
    lines.append(f"{report.suite}: {s['passed']}/{s['total']} passed")
    return "\n".join(lines) + "\n"


def _exact(ok: bool) -> dict:
    return {"residual": "exact_zero" if ok else "nonzero"}


def _padic_residual(zero_mod, required: int) -> tuple[bool, dict]:
    m = "inf" if zero_mod == math.inf else int(zero_mod)
    return zero_mod >= required, {"residual_zero_mod": m, "required_zero_mod": required}


# ---------------------------------------------------------------------------
# oracles used only for checking


def bernoulli_numbers(n_max: int) -> list[Fraction]:
    """B_0..B_n_max (B_1 = -1/2) from sum_{k<=n} C(n+1,k) B_k = 0."""
    b = [Fraction(1)]
    for n in range(1, n_max + 1):
        b.append(-sum(comb(n + 1, k) * b[k] for k in range(n)) / (n + 1))
    return b


def multinomial_convolution(w: int, n_max: int) -> list[int]:
    """G_n^{(w)} = sum over compositions i_1+..+i_w = n of multinomial * prod G_{i_j}."""
    g = [int(x) for x in genocchi_numbers(n_max)]
    support = [i for i, x in enumerate(g) if x]
    out = []
    for n in range(n_max + 1):
        total = 0

        def walk(level: int, remaining: int, coeff: int, prod: int) -> None:
            nonlocal total
            if level == w - 1:
                if g[remaining]:
                    total += coeff * prod * g[remaining]
                return
            for i in support:
                if i > remaining:
                    break
                walk(level + 1, remaining - i, coeff * comb(remaining, i), prod * g[i])

        walk(0, n, 1, 1)
        out.append(total)
    return out


def padic_grid(primes=PADIC_PRIMES):
    """(p, chi, w) with chi mod f in {1, 3} of order dividing p - 1."""
    for p in primes:
        for f in (1, 3):
            for chi in enumerate_characters(f):
                if (p - 1) % chi.order:
                    continue
                for w in (1, 2):
                    yield p, chi, w


# ---------------------------------------------------------------------------
# suites


def suite_identities() -> list[Case]:
    cases: list[Case] = []

    g = genocchi_numbers(30)
    cases.append(Case("genocchi_listed_values", {"n_max": 5}, "G_0..G_5 = [0,1,-1,0,1,0]",
                      g[:6] == [0, 1, -1, 0, 1, 0], _exact(g[:6] == [0, 1, -1, 0, 1, 0])))
    odd_ok = all(g[2 * k + 1] == 0 for k in range(1, 15))
    cases.append(Case("genocchi_odd_vanish", {"k_max": 14}, "G_{2k+1} = 0", odd_ok, _exact(odd_ok)))
    b = bernoulli_numbers(30)
    bern_ok = all(g[n] == 2 * (1 - 2**n) * b[n] for n in range(31))
    cases.append(Case("genocchi_bernoulli_oracle", {"n_max": 30}, "G_n = 2(1-2^n) B_n", bern_ok, _exact(bern_ok)))

    for w in range(1, 6):
        table = multiple_genocchi_numbers(w, 30)
        vals = list(table.values)
        ok = (
            all(v.denominator == 1 for v in vals)
            and all(v == 0 for v in vals[:w])
            and vals[w] == factorial(w)
            and [int(v) for v in vals] == multinomial_convolution(w, 30)
        )
        cases.append(Case("multiple_genocchi_integrity", {"w": w, "n_max": 30},
                          "integral, zero below w, w! at w, equals multinomial convolution", ok, _exact(ok)))

    for f in (1, 3, 5):
        for chi in enumerate_characters(f):
            for w in (1, 2, 3):
                ok = generalized_genocchi(chi, w, 10) == generalized_genocchi_series_oracle(chi, w, 10)
                cases.append(Case("finite_sum_equals_series", {"modulus": f, "char": chi.label, "w": w, "n_max": 10},
                                  "G_{n,chi}^{(w)}: finite sum == generating-function expansion", ok, _exact(ok)))

    chi3 = DirichletCharacter.from_label(3, 1)
    spots = [(1, 1, -2), (2, 2, 8), (2, 3, 48)]
    for w, n, expected in spots:
        got = generalized_genocchi(chi3, w, n)[n]
        ok = got == expected
        cases.append(Case("generalized_spot_value", {"modulus": 3, "char": 1, "w": w, "n": n},
                          f"G_{{{n},chi}}^({w}) = {expected}", ok, _exact(ok)))

    for f in (1, 3, 5):
        for chi in enumerate_characters(f):
            for w in (1, 2, 3):
                for mult in (1, 3, 5):
                    F = f * mult
                    ok = True
                    for n in range(w, 11):
                        via = l_value_via_partition(chi, w, n, F)
                        ok &= via == l_value_neg(chi, w, n - w)
                        ok &= washington_rhs_at_neg(chi, w, n, F) == via * (factorial(w) * comb(n, w))
                    cases.append(Case("l_value_three_routes",
                                      {"modulus": f, "char": chi.label, "w": w, "F": F, "n": [w, 10]},
                                      "partition == G_{n,chi}/(C(n,w) w!) and binomial form == w! C(n,w) L", ok, _exact(ok)))

    for F in (3, 5):
        for w in (1, 2):
            s = float(w + 2)
            for a_sum in range(w, w * F + 1):
                a = _representative_tuple(a_sum, w, F)
                lhs, _ = partial_zeta_numeric(a, F, s, tol=NUMERIC_TOL / 100)
                rhs, _ = partial_zeta_closed_form(a_sum, F, w, s, tol=NUMERIC_TOL / 100)
                ok = abs(lhs - rhs) < NUMERIC_TOL
                cases.append(Case("partial_zeta_numeric", {"F": F, "w": w, "s": w + 2, "a": list(a)},
                                  "congruence-class series == (-1)^A F^-s zeta_G(s, A/F)", ok, {"tolerance": NUMERIC_TOL}))
    z, _ = zeta_numeric(1, 2.0, 1, tol=NUMERIC_TOL / 100)
    ok = abs(z - math.pi**2 / 6) < NUMERIC_TOL
    cases.append(Case("zeta_special_value", {"w": 1, "s": 2, "x": "1"}, "zeta_G^(1)(2,1) = pi^2/6", ok,
                      {"tolerance": NUMERIC_TOL}))
    return cases


def _representative_tuple(a_sum: int, w: int, F: int) -> tuple[int, ...]:
    out = []
    remaining = a_sum
    for i in range(w):
        slots = w - i - 1
        a = min(F, remaining - slots)
        out.append(a)
        remaining -= a
    return tuple(out)


def suite_partition(primes=PADIC_PRIMES, policy: PrecisionPolicy | None = None) -> list[Case]:
    policy = policy or PrecisionPolicy()
    cases = []
    for p, chi, w in padic_grid(primes):
        ctx = PadicLContext(p, chi, w, p * chi.modulus, policy)
        for n in range(w, w + 7):
            lhs = twisted_numbers_exact(ctx, n) - chi_n_at_p(ctx, n) * starred_numbers_exact(ctx, n) * Fraction(p) ** (n - w)
            exact_ok = lhs == coprime_part_exact(ctx, n)
            embedded = ctx.embed(lhs) - ctx.embed(coprime_part_exact(ctx, n))
            padic_ok, res = _padic_residual(embedded.zero_mod(), policy.check_level)
            res.update(_exact(exact_ok))
            cases.append(Case("twisted_partition", dict(context_params(ctx), n=n),
                              "G_{n,chi_n} - p^{n-w} chi_n(p) G* == coprime part", exact_ok and padic_ok, res))
    return cases


def suite_interpolation(primes=PADIC_PRIMES, policy: PrecisionPolicy | None = None) -> list[Case]:
    policy = policy or PrecisionPolicy()
    cases = []
    for p, chi, w in padic_grid(primes):
        ctx = PadicLContext(p, chi, w, p * chi.modulus, policy)
        for n in range(w, w + 7):
            residual = verify_interpolation(ctx, n)
            ok, res = _padic_residual(residual.zero_mod(), policy.check_level)
            cases.append(Case("interpolation", dict(context_params(ctx), n=n),
                              "w! C(n,w) L_p(w-n) == G_{n,chi_n} - p^{n-w} chi_n(p) G*", ok, res))
    return cases


def suite_derivative(primes=DERIVATIVE_PRIMES, policy: PrecisionPolicy | None = None) -> tuple[list[Case], list[dict]]:
    policy = policy or PrecisionPolicy()
    cases, notes = [], []
    chi = DirichletCharacter.from_label(3, 1)
    for p in primes:
        if (p - 1) % chi.order:
            continue
        for w in (1, 2):
            ctx = PadicLContext(p, chi, w, 3 * p, policy)
            d = lambda_derivative_0(ctx)
            for e in (10, 12):
                q = difference_quotient(ctx, p**e)
                ok, res = _padic_residual((q - d.lambda_prime).zero_mod(), e - 2)
                cases.append(Case("derivative_difference_quotient", dict(context_params(ctx), h=f"{p}^{e}"),
                                  "(Lambda(h) - Lambda(0))/h == termwise Lambda'(0)", ok, res))
            notes.append(derivative_report(ctx))
    return cases, notes


KERNEL_EXPONENTS = (Fraction(1, 2), Fraction(-3, 4), Fraction(7, 2))


def _binomial_series_pow(u, s: Fraction, target: int):
    # <a>^(-s) = sum_k C(-s, k) (u - 1)^k; C(-s, k) is p-integral for s in Z_p
    x = u - 1
    total = padic_from_rational(1, u.p, target)
    power = x
    for k in range(1, target + 1):
        total = total + binom_neg(s, k) * power
        power = power * x
    return total.cap(target)


def suite_kernels(primes=PADIC_PRIMES, policy: PrecisionPolicy | None = None) -> list[Case]:
    """Teichmuller, angle, log/exp and angle_pow on every unit a < p^2."""
    policy = policy or PrecisionPolicy()
    prec, need = policy.digits, policy.check_level
    cases = []
    for p in primes:
        bad: dict[str, list[int]] = {}

        def record(name, a, ok):
            if not ok:
                bad.setdefault(name, []).append(a)

        units = [a for a in range(1, p * p) if a % p]
        for a in units:
            om = teichmuller(a, p, prec)
            record("teichmuller_fixed_point", a, (om**p - om).zero_mod() >= need and om.residue(1) == a % p)
            u = angle(a, p, prec)
            record("angle_principal_unit", a, (u - 1).valuation >= 1 and (om * u - a).zero_mod() >= need)
            lg = log_p(u)
            record("exp_log_roundtrip", a, (exp_p(lg) - u).zero_mod() >= need)
            y = padic_from_rational(a * p, p, prec)
            record("log_exp_roundtrip", a, (log_p(exp_p(y)) - y).zero_mod() >= need)
            for k in range(-3, 6):
                record("angle_pow_integer", a, (angle_pow(a, k, p, prec) - u ** (-k)).zero_mod() >= need)
            for s in KERNEL_EXPONENTS:
                if s.denominator % p == 0:
                    continue
                lhs = angle_pow(a, s, p, prec)
                rhs = _binomial_series_pow(u, s, prec)
                record("exp_log_vs_binomial", a, (lhs - rhs).zero_mod() >= need)
        for name in ("teichmuller_fixed_point", "angle_principal_unit", "exp_log_roundtrip",
                     "log_exp_roundtrip", "angle_pow_integer", "exp_log_vs_binomial"):
            failed = bad.get(name, [])
            cases.append(Case(name, {"p": p, "prec": prec, "units": len(units)},
                              "holds for all units a < p^2", not failed,
                              {"required_digits": need, "failed": failed}))
    return cases


def run_suite(name: str, primes=None, policy: PrecisionPolicy | None = None) -> VerificationReport:
    start = time.perf_counter()
    report = VerificationReport(name)
    names = SUITES if name == "all" else (name,)
    for n in names:
        if n == "identities":
            report.cases += suite_identities()
        elif n == "partition":
            report.cases += suite_partition(primes or PADIC_PRIMES, policy)
        elif n == "interpolation":
            report.cases += suite_interpolation(primes or PADIC_PRIMES, policy)
        elif n == "derivative":
            cases, notes = suite_derivative(primes or DERIVATIVE_PRIMES, policy)
            report.cases += cases
            report.notes += notes
        elif n == "kernels":
            report.cases += suite_kernels(primes or PADIC_PRIMES, policy)
        else:
            raise ValueError(f"unknown suite {n!r}")
    report.wall_time = time.perf_counter() - start
    return report
