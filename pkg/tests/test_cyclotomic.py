"""Tests for the cyclotomic field kernel."""

from fractions import Fraction

import pytest

from reflectarr.cyclotomic import (
    CyclotomicField,
    FieldMismatchError,
    cyclotomic_polynomial,
)


def test_cyclotomic_polynomial_small():
    assert cyclotomic_polynomial(1) == (-1, 1)
    assert cyclotomic_polynomial(2) == (1, 1)
    assert cyclotomic_polynomial(3) == (1, 1, 1)
    assert cyclotomic_polynomial(4) == (1, 0, 1)
    assert cyclotomic_polynomial(6) == (1, -1, 1)
    assert cyclotomic_polynomial(12) == (1, 0, -1, 0, 1)


def test_degrees_are_euler_phi():
    phi = {1: 1, 2: 1, 3: 2, 4: 2, 5: 4, 6: 2, 8: 4, 9: 6, 12: 4}
    for m, d in phi.items():
        assert CyclotomicField(m).degree == d


def test_fields_are_interned():
    assert CyclotomicField(5) is CyclotomicField(5)
    assert CyclotomicField(5) is not CyclotomicField(10)


def test_root_of_unity_order():
    for m in (2, 3, 4, 5, 6, 12):
        field = CyclotomicField(m)
        z = field.root
        assert z ** m == field.one
        # the conductor is the exact order
        for k in range(1, m):
            assert z ** k != field.one


def test_prime_root_power_sum_vanishes():
    for m in (3, 5, 7):
        field = CyclotomicField(m)
        acc = field.zero
        for k in range(m):
            acc = acc + field.zeta_power(k)
        assert acc.is_zero


def test_rational_embedding():
    field = CyclotomicField(4)
    half = field.from_rational(Fraction(1, 2))
    assert half.is_rational
    assert half.as_rational() == Fraction(1, 2)
    assert not field.root.is_rational
    assert (half + half) == field.one


def test_inverse_and_division():
    field = CyclotomicField(5)
    x = field.element([1, 2, 0, -1])
    assert x * x.inverse() == field.one
    assert (x / x) == field.one
    y = field.element([0, 3, 1, 1])
    assert (x / y) * y == x
    with pytest.raises(ZeroDivisionError):
        field.zero.inverse()


def test_zeta_power_wraps_and_reduces():
    field = CyclotomicField(3)
    # zeta^2 = -1 - zeta under Phi_3
    assert field.zeta_power(2) == field.element([-1, -1])
    assert field.zeta_power(5) == field.zeta_power(2)
    assert field.zeta_power(-1) == field.zeta_power(2)


def test_gaussian_arithmetic():
    field = CyclotomicField(4)
    i = field.root
    assert i * i == field.from_rational(-1)
    assert (field.one + i) * (field.one - i) == field.from_rational(2)
    assert i.inverse() == -i


def test_cross_field_mixing_rejected():
    a = CyclotomicField(3).root
    b = CyclotomicField(4).root
    with pytest.raises(FieldMismatchError):
        _ = a + b
    with pytest.raises(FieldMismatchError):
        CyclotomicField(4).coerce(a)


def test_element_reduces_long_vectors():
    # vectors up to twice the degree arise from products and must reduce;
    # t^2 == -1 in the Gaussian field
    field = CyclotomicField(4)
    assert field.element([0, 0, 1]) == field.from_rational(-1)
    assert field.element([1, 0, 1]).is_zero


def test_sort_key_total_order():
    field = CyclotomicField(3)
    elems = [field.zeta_power(k) for k in range(3)] + [field.zero, field.one * 2]
    keys = [e.sort_key() for e in elems]
    assert len(set(keys)) == len(set(elems))
    assert sorted(keys) == sorted(keys, key=lambda k: k)
