"""Dirichlet characters of odd modulus.

(Z/mZ)^* is decomposed along the odd prime powers q^k || m.  Component i is
cyclic, generated by the CRT lift ``g_i`` of the smallest primitive root mod
q^k (``g_i == 1`` modulo the other prime powers).  A character is the vector
of exponents ``e_i`` with ``chi(g_i) = exp(2 pi i e_i / o_i)``.

Labels are mixed-radix: ``label = e_0 + o_0*(e_1 + o_1*(e_2 + ...))`` with
components ordered by increasing prime.
"""

from __future__ import annotations

import threading
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache
from math import gcd

from .errors import UsageError
from .exact import CyclotomicNumber


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def factorize(n: int) -> list[tuple[int, int]]:
    out = []
    d = 2
    while d * d <= n:
        if n % d == 0:
            k = 0
            while n % d == 0:
                n //= d
                k += 1
            out.append((d, k))
        d += 1
    if n > 1:
        out.append((n, 1))
    return out


def is_prime(n: int) -> bool:
    return n >= 2 and factorize(n) == [(n, 1)]


def _smallest_primitive_root(q: int, k: int) -> int:
    mod = q**k
    order = q ** (k - 1) * (q - 1)
    prime_divs = [r for r, _ in factorize(order)]
    for g in range(2, mod):
        if g % q and all(pow(g, order // r, mod) != 1 for r in prime_divs):
            return g
    return 1  # only reached for mod 2, which never occurs here


@dataclass(frozen=True)
class UnitGroupStructure:
    modulus: int
    prime_powers: tuple[tuple[int, int], ...]
    generators: tuple[int, ...]
    orders: tuple[int, ...]
    local_roots: tuple[int, ...]

    @property
    def size(self) -> int:
        out = 1
        for o in self.orders:
            out *= o
        return out


def _check_odd(m: int) -> None:
    if not isinstance(m, int) or m < 1:
        raise UsageError(f"modulus must be a positive integer, got {m!r}")
    if m % 2 == 0:
        raise UsageError(f"only odd moduli are supported, got {m}")


@lru_cache(maxsize=None)
def unit_group(m: int) -> UnitGroupStructure:
    _check_odd(m)
    pps = tuple(factorize(m))
    gens, orders, roots = [], [], []
    for q, k in pps:
        qk = q**k
        root = _smallest_primitive_root(q, k)
        rest = m // qk
        # g == root mod q^k, g == 1 mod rest
        g = (root * rest * pow(rest, -1, qk) + qk * pow(qk, -1, rest)) % m if rest > 1 else root
        gens.append(g)
        orders.append(q ** (k - 1) * (q - 1))
        roots.append(root)
    return UnitGroupStructure(m, pps, tuple(gens), tuple(orders), tuple(roots))


_dlog_lock = threading.Lock()
_dlog_tables: dict[tuple[int, int], dict[int, int]] = {}


def _dlog(a: int, root: int, mod: int) -> int:
    key = (root, mod)
    with _dlog_lock:
        table = _dlog_tables.get(key)
        if table is None:
            table = {}
            x = 1
            e = 0
            while x not in table:
                table[x] = e
                x = x * root % mod
                e += 1
            _dlog_tables[key] = table
    return table[a % mod]


@dataclass(frozen=True)
class RootOfUnityValue:
    """Either zero (``exponent is None``) or ``zeta_order ** exponent``."""

    exponent: int | None
    order: int

    def __post_init__(self):
        if self.exponent is not None:
            object.__setattr__(self, "exponent", self.exponent % self.order)

    @property
    def is_zero(self) -> bool:
        return self.exponent is None

    def turn(self) -> Fraction:
        """Argument as a fraction of a full turn."""
        if self.exponent is None:
            raise ValueError("zero has no argument")
        return Fraction(self.exponent, self.order)

    def exponent_in(self, n: int) -> int:
        """Exponent k with value ``zeta_n ** k``; n must be a multiple of the order."""
        t = self.turn() * n
        if t.denominator != 1:
            raise UsageError(f"value of order {self.order} is not a power of zeta_{n}")
        return int(t) % n

    def __mul__(self, other: RootOfUnityValue) -> RootOfUnityValue:
        n = _lcm(self.order, other.order)
        if self.is_zero or other.is_zero:
            return RootOfUnityValue(None, n)
        return RootOfUnityValue(self.exponent_in(n) + other.exponent_in(n), n)

    def to_cyclotomic(self, root_order: int | None = None) -> CyclotomicNumber:
        n = root_order or self.order
        if self.is_zero:
            return CyclotomicNumber.rational(0, n)
        return CyclotomicNumber.root_of_unity(self.exponent_in(n), n)

    def to_complex(self) -> complex:
        return complex(self.to_cyclotomic())


@dataclass(frozen=True)
class DirichletCharacter:
    modulus: int
    exponents: tuple[int, ...]

    def __post_init__(self):
        grp = unit_group(self.modulus)
        if len(self.exponents) != len(grp.orders):
            raise UsageError(
                f"modulus {self.modulus} needs {len(grp.orders)} exponents, got {len(self.exponents)}"
            )
        object.__setattr__(
            self, "exponents", tuple(e % o for e, o in zip(self.exponents, grp.orders))
        )

    @classmethod
    def from_label(cls, modulus: int, label: int) -> DirichletCharacter:
        grp = unit_group(modulus)
        if not 0 <= label < grp.size:
            raise UsageError(f"label {label} out of range for modulus {modulus} ({grp.size} characters)")
        exps = []
        for o in grp.orders:
            exps.append(label % o)
            label //= o
        return cls(modulus, tuple(exps))

    @classmethod
    def trivial(cls, modulus: int = 1) -> DirichletCharacter:
        return cls(modulus, (0,) * len(unit_group(modulus).orders))

    @property
    def group(self) -> UnitGroupStructure:
        return unit_group(self.modulus)

    @property
    def label(self) -> int:
        out = 0
        for e, o in reversed(list(zip(self.exponents, self.group.orders))):
            out = out * o + e
        return out

    @cached_property
    def _component_orders(self) -> tuple[int, ...]:
        return tuple(o // gcd(e, o) for e, o in zip(self.exponents, self.group.orders))

    @cached_property
    def order(self) -> int:
        out = 1
        for c in self._component_orders:
            out = _lcm(out, c)
        return out

    def is_principal(self) -> bool:
        return not any(self.exponents)

    def __call__(self, a: int) -> RootOfUnityValue:
        return character_value(self, a)

    @cached_property
    def conductor(self) -> int:
        out = 1
        for (q, k), e, o in zip(self.group.prime_powers, self.exponents, self.group.orders):
            if e % o == 0:
                continue
            # trivial on units == 1 mod q^j  iff  q^(k-j) | e
            v = 0
            while e % q == 0 and v < k - 1:
                e //= q
                v += 1
            out *= q ** (k - v)
        return out

    @property
    def is_primitive(self) -> bool:
        return self.conductor == self.modulus

    def __mul__(self, other: DirichletCharacter) -> DirichletCharacter:
        return character_product(self, other)

    def __pow__(self, k: int) -> DirichletCharacter:
        return DirichletCharacter(self.modulus, tuple(e * k for e in self.exponents))

    def conjugate(self) -> DirichletCharacter:
        return self ** -1

    def values(self) -> list[RootOfUnityValue]:
        return [self(a) for a in range(self.modulus)]


def character_value(chi: DirichletCharacter, a: int) -> RootOfUnityValue:
    m = chi.modulus
    n = chi.order
    a %= m
    if gcd(a, m) != 1:
        return RootOfUnityValue(None, n)
    grp = chi.group
    k = 0
    for (q, kk), root, e, o, co in zip(
        grp.prime_powers, grp.local_roots, chi.exponents, grp.orders, chi._component_orders
    ):
        if e == 0:
            continue
        log = _dlog(a, root, q**kk)
        g = o // co
        k += (e // g) * log * (n // co)
    return RootOfUnityValue(k, n)


def enumerate_characters(m: int) -> list[DirichletCharacter]:
    grp = unit_group(m)
    return [DirichletCharacter.from_label(m, label) for label in range(grp.size)]


def conductor(chi: DirichletCharacter) -> int:
    return chi.conductor


def _exponents_from_values(modulus: int, value_at) -> tuple[int, ...]:
    grp = unit_group(modulus)
    exps = []
    for g, o in zip(grp.generators, grp.orders):
        exps.append(value_at(g).exponent_in(o))
    return tuple(exps)


def character_product(chi: DirichletCharacter, psi: DirichletCharacter) -> DirichletCharacter:
    m = _lcm(chi.modulus, psi.modulus)
    return DirichletCharacter(m, _exponents_from_values(m, lambda g: chi(g) * psi(g)))


def associated_primitive(chi: DirichletCharacter) -> DirichletCharacter:
    d = chi.conductor
    if d == chi.modulus:
        return chi
    m = chi.modulus

    def lifted_value(g: int) -> RootOfUnityValue:
        a = g
        while gcd(a, m) != 1:
            a += d
        return chi(a)

    return DirichletCharacter(d, _exponents_from_values(d, lifted_value))


def teichmuller_character(p: int) -> DirichletCharacter:
    """omega as the character mod p sending the canonical primitive root to zeta_{p-1}."""
    if not is_prime(p) or p == 2:
        raise UsageError(f"p must be an odd prime, got {p}")
    return DirichletCharacter(p, (1,))


def character_to_json(chi: DirichletCharacter, with_values: bool = False) -> dict:
    out = {
        "modulus": chi.modulus,
        "label": chi.label,
        "exponents": list(chi.exponents),
        "order": chi.order,
        "conductor": chi.conductor,
        "primitive": chi.is_primitive,
    }
    if with_values:
        # entry a: null when chi(a) = 0, else k with chi(a) = zeta_order^k
        out["values"] = [v.exponent for v in chi.values()]
    return out
