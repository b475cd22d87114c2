"""Field towers: exact rationals, prime fields, extensions."""

from fractions import Fraction

import pytest

from corrdyn.errors import FieldMismatch, InfiniteField, NotPrime, ParseError
from corrdyn.fields import (
    enumerate_elements,
    make_extension,
    make_prime_field,
    parse_field_spec,
    rationals,
)

from _helpers import F5, Q


def test_rationals_arithmetic():
    a = Q.element(Fraction(2, 3))
    b = Q.element(Fraction(-1, 6))
    assert (a + b) == Q.element(Fraction(1, 2))
    assert (a * b) == Q.element(Fraction(-1, 9))
    assert (a / b) == Q.element(-4)
    assert a - a == Q.zero
    assert Q.characteristic == 0
    assert Q.kind == "Q"
    with pytest.raises(InfiniteField):
        Q.order


def test_prime_field_arithmetic():
    assert F5.characteristic == 5
    assert F5.order == 5
    a = F5.element(3)
    assert a + a == F5.element(1)
    assert a * a == F5.element(4)
    assert a.inverse() * a == F5.one
    assert F5.element(-1) == F5.element(4)
    assert (F5.element(2) ** 4) == F5.one
    with pytest.raises(ZeroDivisionError):
        F5.zero.inverse()


def test_not_prime_rejected():
    with pytest.raises(NotPrime):
        make_prime_field(6)
    with pytest.raises(NotPrime):
        make_prime_field(1)


def test_extension_field():
    F25 = make_extension(F5, 2)
    assert F25.order == 25
    assert F25.characteristic == 5
    g = F25.generator()
    # the modulus is irreducible of degree 2, so g generates a degree-2 tower
    assert g * g == F25.element(-2)
    a = F25.element([1, 3])
    assert a * a.inverse() == F25.one
    assert a ** 24 == F25.one
    assert a.frobenius() == a ** 5
    # mixing fields is an error
    with pytest.raises(FieldMismatch):
        F25.element(3) + F5.element(3)


def test_enumerate_elements():
    assert [str(e) for e in enumerate_elements(F5)] == ["0", "1", "2", "3", "4"]
    F4 = make_extension(make_prime_field(2), 2)
    elems = list(enumerate_elements(F4))
    assert len(elems) == 4
    assert len({e.key() for e in elems}) == 4
    with pytest.raises(InfiniteField):
        list(enumerate_elements(Q))


def test_parse_field_spec():
    assert parse_field_spec("Q") == rationals()
    assert parse_field_spec("Fp: 5") == F5
    assert parse_field_spec("Fp:5") == F5
    F25 = parse_field_spec("Fp:5^2")
    assert F25.order == 25
    assert parse_field_spec(F25.spec_string()) == F25
    for bad in ("", "F5", "Fp:", "Fp:x", "Fp:5^"):
        with pytest.raises(ParseError):
            parse_field_spec(bad)


def test_frobenius_fixed_field():
    F9 = make_extension(make_prime_field(3), 2)
    fixed = [e for e in enumerate_elements(F9) if e.frobenius() == e]
    assert len(fixed) == 3
