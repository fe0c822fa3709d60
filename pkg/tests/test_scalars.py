"""Tests for arithmetic in Q(√2, √3)."""

import random
from fractions import Fraction

import pytest

from src.core.scalars import (
    ONE,
    SQRT2,
    SQRT3,
    SQRT6,
    ZERO,
    FieldElement,
    format_field_element,
    sqrt_bounds,
)


class TestArithmetic:
    def test_radical_products(self):
        assert SQRT2 * SQRT3 == SQRT6
        assert SQRT2 * SQRT6 == SQRT3 * 2
        assert SQRT3 * SQRT6 == SQRT2 * 3
        assert SQRT6 * SQRT6 == 6

    def test_conjugate_product_is_rational(self):
        x = ONE + SQRT2
        y = ONE - SQRT2
        assert x * y == -1
        assert (x * y).is_rational()

    def test_mixed_operands(self):
        x = FieldElement(1, 2, 0, 0)
        assert x + 1 == FieldElement(2, 2)
        assert 1 - x == FieldElement(0, -2)
        assert x * Fraction(1, 2) == FieldElement(Fraction(1, 2), 1)
        assert 3 * SQRT3 == FieldElement(0, 0, 3)

    def test_inverse(self):
        x = FieldElement(1, 1, 1, 0)
        assert x * x.invert() == ONE
        y = FieldElement(Fraction(1, 3), -2, 5, Fraction(7, 2))
        assert y / y == ONE
        assert (2 / y) * y == 2

    def test_inverse_of_rational(self):
        assert FieldElement(4).invert() == Fraction(1, 4)

    def test_power(self):
        assert SQRT2**4 == 4
        assert SQRT3**-2 == Fraction(1, 3)

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            ZERO.invert()
        with pytest.raises(ZeroDivisionError):
            SQRT2 / 0


class TestSign:
    def test_simple_signs(self):
        assert SQRT2.sign() == 1
        assert (SQRT2 - SQRT3).sign() == -1
        assert ZERO.sign() == 0

    def test_close_to_zero(self):
        # 49 - 20√6 = (5 - 2√6)^2 ≈ 0.0102
        assert FieldElement(49, 0, 0, -20).sign() == 1
        assert FieldElement(-49, 0, 0, 20).sign() == -1
        assert FieldElement(5, 0, 0, -2).sign() == 1

    def test_mixed_radicals(self):
        assert FieldElement(0, 1, 1, -1).sign() == 1

    def test_ordering(self):
        assert SQRT2 < SQRT3 < FieldElement(2)
        assert max(SQRT6, FieldElement(Fraction(49, 20))) == FieldElement(Fraction(49, 20))

    def test_sqrt_bounds_enclose(self):
        low, high = sqrt_bounds(2, 20)
        assert low * low <= 2 <= high * high
        assert high - low == Fraction(1, 2**20)


class TestIdentity:
    def test_hash_matches_rationals(self):
        assert hash(FieldElement(3)) == hash(3)
        assert hash(FieldElement(Fraction(1, 2))) == hash(Fraction(1, 2))
        assert {FieldElement(2): "x"}[FieldElement(2)] == "x"

    def test_equality_with_rationals(self):
        assert FieldElement(Fraction(3, 4)) == Fraction(3, 4)
        assert SQRT2 != 1

    def test_to_fraction_requires_rational(self):
        assert FieldElement(5).to_fraction() == 5
        with pytest.raises(ValueError):
            SQRT2.to_fraction()


class TestText:
    def test_format(self):
        x = FieldElement(Fraction(1, 2), -3, 0, 1)
        assert format_field_element(x) == "1/2 - 3*r2 + r6"
        assert str(-SQRT3) == "-r3"
        assert str(ZERO) == "0"

    def test_parse(self):
        assert FieldElement.parse("1/2 - 3*r2 + r6") == FieldElement(Fraction(1, 2), -3, 0, 1)
        assert FieldElement.parse("2*r3") == FieldElement(0, 0, 2)

    def test_format_parses_back(self):
        x = FieldElement(Fraction(-7, 3), 0, Fraction(2, 5), -1)
        assert FieldElement.parse(str(x)) == x


def random_element(rng):
    return FieldElement(*(Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(4)))


class TestRandomisedProperties:
    def test_sign_is_multiplicative(self):
        rng = random.Random(2024)
        for _ in range(300):
            x, y = random_element(rng), random_element(rng)
            assert (x * y).sign() == x.sign() * y.sign()

    def test_inverse_is_multiplicative(self):
        rng = random.Random(2025)
        for _ in range(100):
            x, y = random_element(rng), random_element(rng)
            if not x or not y:
                continue
            assert (x * y).invert() == x.invert() * y.invert()
            assert x * x.invert() == ONE
