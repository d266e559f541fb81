from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nilhecke.errors import NotDivisible, NotInRing
from nilhecke.rings import QQ, ZZ, Ring


def test_parse_grammar():
    assert Ring.parse("Z") == ZZ
    assert Ring.parse("Q") == QQ
    assert Ring.parse("Z/5") == Ring.mod(5)
    assert Ring.parse("F3") == Ring.mod(3)
    assert Ring.parse("Z[1/2,1/3]") == Ring.localized({2, 3})
    assert Ring.parse("Z[1/6]") == Ring.localized({2, 3})
    with pytest.raises(ValueError):
        Ring.parse("R")


def test_str_round_trip():
    for text in ("Z", "Q", "Z/7", "Z[1/2]", "Z[1/2,1/3]"):
        assert str(Ring.parse(text)) == text


def test_units():
    assert ZZ.is_unit_integer(-1) and not ZZ.is_unit_integer(2)
    assert Ring.localized({3}).is_unit_integer(9)
    assert not Ring.localized({3}).is_unit_integer(6)
    assert Ring.mod(5).is_unit_integer(2) and not Ring.mod(4).is_unit_integer(2)
    assert Ring.mod(5).is_field and not Ring.mod(6).is_field and QQ.is_field


def test_division_errors():
    with pytest.raises(NotDivisible):
        ZZ.div(3, 2)
    with pytest.raises(NotInRing):
        ZZ.coerce(Fraction(1, 2))
    assert Ring.localized({2}).coerce(Fraction(3, 4)) == Fraction(3, 4)
    with pytest.raises(NotInRing):
        Ring.localized({2}).coerce(Fraction(1, 3))


@given(st.integers(1, 400), st.sampled_from([2, 3, 5, 7, 11]))
def test_mod_inverse(a, p):
    F = Ring.mod(p)
    if a % p:
        assert F.reduce(a * F.inverse(a)) == 1


@given(st.integers(-50, 50), st.integers(-50, 50), st.integers(-50, 50))
def test_mod_reduction_is_a_homomorphism(a, b, c):
    F = Ring.mod(6)
    assert F.reduce(a * (b + c)) == F.reduce(F.reduce(a) * F.reduce(b) + F.reduce(a) * F.reduce(c))


def test_canonical_maps():
    assert ZZ.has_map_to(Ring.mod(2)) and ZZ.has_map_to(QQ)
    assert Ring.localized({3}).has_map_to(Ring.mod(2))
    assert not Ring.localized({2}).has_map_to(Ring.mod(2))
    assert not QQ.has_map_to(ZZ)
    assert Ring.localized({3}).map_to(Fraction(1, 3), Ring.mod(2)) == 1
