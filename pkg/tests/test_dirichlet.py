from math import gcd

import pytest

from mgenocchi.dirichlet import (
    DirichletCharacter,
    associated_primitive,
    character_product,
    character_to_json,
    enumerate_characters,
    teichmuller_character,
    unit_group,
)
from mgenocchi.errors import UsageError
from mgenocchi.exact import CyclotomicNumber

ODD_MODULI = [1, 3, 5, 7, 9, 15, 21, 25, 27, 45]


def phi(m):
    return sum(1 for a in range(1, m + 1) if gcd(a, m) == 1)


def brute_conductor(chi):
    m = chi.modulus
    units = [a for a in range(1, m + 1) if gcd(a, m) == 1]
    for d in sorted(d for d in range(1, m + 1) if m % d == 0):
        if all(chi(a).exponent == 0 for a in units if (a - 1) % d == 0):
            return d
    return m


def test_unit_group_examples():
    assert unit_group(3).generators == (2,) and unit_group(3).orders == (2,)
    assert unit_group(9).generators == (2,) and unit_group(9).orders == (6,)
    assert unit_group(15).orders == (2, 4)


def test_even_modulus_rejected():
    with pytest.raises(UsageError):
        unit_group(12)


@pytest.mark.parametrize("m", ODD_MODULI)
def test_generators_have_stated_orders_and_generate(m):
    grp = unit_group(m)
    assert grp.size == phi(m)
    reached = {1}
    for g, o in zip(grp.generators, grp.orders):
        assert pow(g, o, m) == 1 % m
        assert all(pow(g, d, m) != 1 for d in range(1, o) if o % d == 0) or m == 1
        reached = {x * pow(g, k, m) % m for x in reached for k in range(o)}
    assert len(reached) == phi(m)


@pytest.mark.parametrize("m", ODD_MODULI)
def test_enumeration_and_primitivity(m):
    chars = enumerate_characters(m)
    assert len(chars) == phi(m)
    assert [c.label for c in chars] == list(range(len(chars)))
    for c in chars:
        assert c.conductor == brute_conductor(c)
        assert c.is_primitive == (c.conductor == m)


@pytest.mark.parametrize("m", [3, 9, 15, 21, 45])
def test_multiplicativity(m):
    for chi in enumerate_characters(m):
        for a in range(1, m + 1):
            for b in range(1, m + 1):
                assert chi(a * b) == chi(a) * chi(b) or (chi(a * b).is_zero and (chi(a).is_zero or chi(b).is_zero))


@pytest.mark.parametrize("m", [3, 5, 7, 9, 15, 21, 25, 27, 33, 35, 45])
def test_orthogonality(m):
    for chi in enumerate_characters(m):
        total = CyclotomicNumber.rational(0, chi.order)
        for a in range(1, m + 1):
            total = total + chi(a).to_cyclotomic()
        assert total == (phi(m) if chi.is_principal() else 0)


def test_values(quad3):
    assert quad3(2).exponent == 1 and quad3(2).order == 2
    assert quad3(3).is_zero
    triv = DirichletCharacter.trivial(15)
    assert all(triv(a).exponent == 0 for a in (1, 2, 4, 7, 8, 11, 13, 14))


def test_conductor_examples(quad3):
    assert quad3.conductor == 3
    assert DirichletCharacter(9, (3,)).conductor == 3
    assert DirichletCharacter.trivial(15).conductor == 1
    assert len(enumerate_characters(1)) == 1 and enumerate_characters(1)[0].conductor == 1


def test_products(quad3):
    triv5 = DirichletCharacter.trivial(5)
    induced = character_product(quad3, triv5)
    assert induced.modulus == 15 and induced.conductor == 3
    quad5 = DirichletCharacter(5, (2,))
    assert character_product(quad3, quad5).conductor == 15
    for chi in enumerate_characters(15):
        assert (chi * chi.conjugate()).is_principal()


def test_associated_primitive(quad3):
    induced = character_product(quad3, DirichletCharacter.trivial(5))
    assert associated_primitive(induced) == quad3
    assert associated_primitive(quad3) is quad3
    assert associated_primitive(DirichletCharacter.trivial(15)) == DirichletCharacter.trivial(1)
    for chi in enumerate_characters(45):
        prim = associated_primitive(chi)
        assert prim.is_primitive
        for a in range(1, 46):
            if gcd(a, 45) == 1:
                assert prim(a) == chi(a)


def test_teichmuller_character():
    om = teichmuller_character(7)
    assert om.order == 6 and om.is_primitive
    with pytest.raises(UsageError):
        teichmuller_character(9)


def test_label_roundtrip_and_json():
    for chi in enumerate_characters(15):
        assert DirichletCharacter.from_label(15, chi.label) == chi
    j = character_to_json(DirichletCharacter.from_label(15, 3), with_values=True)
    assert j["modulus"] == 15 and j["exponents"] == [1, 1] and j["primitive"] is True
    assert j["values"][0] is None and j["values"][1] == 0
