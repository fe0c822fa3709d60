"""
Exact arithmetic in the biquadratic field Q(√2, √3).

Elements are stored as four rational coordinates on the basis (1, √2, √3, √6).
Equality is coordinate-wise, which is exact because the basis is linearly
independent over Q. Signs are decided by an exact zero test followed by
interval refinement on rational bounds for the square roots.
"""

from __future__ import annotations

from fractions import Fraction
from functools import total_ordering
from math import isqrt
from typing import Iterator, Tuple, Union

Rational = Union[int, Fraction]
Scalar = Union[int, Fraction, "FieldElement"]

RADICALS = (2, 3, 6)
_START_BITS = 32


@total_ordering
class FieldElement:
    """Element a + b√2 + c√3 + d√6 with rational a, b, c, d."""

    __slots__ = ("_coords",)

    def __init__(self, a: Rational = 0, b: Rational = 0, c: Rational = 0, d: Rational = 0) -> None:
        self._coords: Tuple[Fraction, Fraction, Fraction, Fraction] = (
            Fraction(a),
            Fraction(b),
            Fraction(c),
            Fraction(d),
        )

    @property
    def a(self) -> Fraction:
        return self._coords[0]

    @property
    def b(self) -> Fraction:
        return self._coords[1]

    @property
    def c(self) -> Fraction:
        return self._coords[2]

    @property
    def d(self) -> Fraction:
        return self._coords[3]

    @property
    def coords(self) -> Tuple[Fraction, Fraction, Fraction, Fraction]:
        return self._coords

    @classmethod
    def coerce(cls, value: Scalar) -> FieldElement:
        """
        Lift an int, Fraction or FieldElement into the field.

        Args:
            value: Rational or field value

        Returns:
            The same value as a FieldElement

        Raises:
            TypeError: If value is neither rational nor a FieldElement
        """
        if isinstance(value, FieldElement):
            return value
        if isinstance(value, (int, Fraction)):
            return cls(value)
        raise TypeError(f"cannot interpret {value!r} as an element of Q(√2,√3)")

    @classmethod
    def parse(cls, text: str) -> FieldElement:
        """
        Parse the text syntax, e.g. ``"1/2 - 3*r2 + r6"``.

        Args:
            text: Sum of rational multiples of 1, r2, r3 and r6

        Returns:
            Parsed element

        Raises:
            NotationError: If the text does not match the grammar
        """
        from src.algebra.notation import parse_field_element

        return parse_field_element(text)

    # arithmetic

    def __add__(self, other: Scalar) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            a, b, c, d = self._coords
            return FieldElement(a + other, b, c, d)
        if not isinstance(other, FieldElement):
            return NotImplemented
        x, y = self._coords, other._coords
        return FieldElement(x[0] + y[0], x[1] + y[1], x[2] + y[2], x[3] + y[3])

    __radd__ = __add__

    def __neg__(self) -> FieldElement:
        a, b, c, d = self._coords
        return FieldElement(-a, -b, -c, -d)

    def __sub__(self, other: Scalar) -> FieldElement:
        if not isinstance(other, (int, Fraction, FieldElement)):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other: Scalar) -> FieldElement:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return (-self) + other

    def __mul__(self, other: Scalar) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            a, b, c, d = self._coords
            return FieldElement(a * other, b * other, c * other, d * other)
        if not isinstance(other, FieldElement):
            return NotImplemented
        a1, b1, c1, d1 = self._coords
        a2, b2, c2, d2 = other._coords
        # √2√3 = √6, √2√6 = 2√3, √3√6 = 3√2, √6² = 6
        return FieldElement(
            a1 * a2 + 2 * b1 * b2 + 3 * c1 * c2 + 6 * d1 * d2,
            a1 * b2 + b1 * a2 + 3 * (c1 * d2 + d1 * c2),
            a1 * c2 + c1 * a2 + 2 * (b1 * d2 + d1 * b2),
            a1 * d2 + d1 * a2 + b1 * c2 + c1 * b2,
        )

    __rmul__ = __mul__

    def __truediv__(self, other: Scalar) -> FieldElement:
        if isinstance(other, (int, Fraction)):
            if other == 0:
                raise ZeroDivisionError("division by zero in Q(√2,√3)")
            return self * (1 / Fraction(other))
        if not isinstance(other, FieldElement):
            return NotImplemented
        return self * other.invert()

    def __rtruediv__(self, other: Scalar) -> FieldElement:
        if not isinstance(other, (int, Fraction)):
            return NotImplemented
        return FieldElement(other) * self.invert()

    def __pow__(self, exponent: int) -> FieldElement:
        if not isinstance(exponent, int):
            return NotImplemented
        if exponent < 0:
            return self.invert() ** (-exponent)
        result = ONE
        base = self
        while exponent:
            if exponent & 1:
                result = result * base
            base = base * base
            exponent >>= 1
        return result

    def invert(self) -> FieldElement:
        """
        Multiplicative inverse, solving the 4×4 rational multiplication system.

        Returns:
            x with self * x == 1

        Raises:
            ZeroDivisionError: If self is zero
        """
        if self.is_zero():
            raise ZeroDivisionError("0 has no inverse in Q(√2,√3)")
        if self.is_rational():
            return FieldElement(1 / self.a)

        from src.core.linalg import solve

        a, b, c, d = self._coords
        # columns are self*1, self*√2, self*√3, self*√6
        matrix = [
            [a, 2 * b, 3 * c, 6 * d],
            [b, a, 3 * d, 3 * c],
            [c, 2 * d, a, 2 * b],
            [d, c, b, a],
        ]
        solution = solve(matrix, [Fraction(1), Fraction(0), Fraction(0), Fraction(0)])
        if solution is None:
            raise ZeroDivisionError("multiplication matrix is singular")
        return FieldElement(*solution)

    # comparison

    def __eq__(self, other: object) -> bool:
        if isinstance(other, FieldElement):
            return self._coords == other._coords
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.a == other
        return NotImplemented

    def __lt__(self, other: Scalar) -> bool:
        if not isinstance(other, (int, Fraction, FieldElement)):
            return NotImplemented
        return (self - other).sign() < 0

    def __hash__(self) -> int:
        if self.is_rational():
            return hash(self.a)
        return hash(self._coords)

    def __bool__(self) -> bool:
        return not self.is_zero()

    def is_zero(self) -> bool:
        return not any(self._coords)

    def is_rational(self) -> bool:
        return not (self._coords[1] or self._coords[2] or self._coords[3])

    def to_fraction(self) -> Fraction:
        """Return the rational value; raises ValueError if irrational."""
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.a

    def sign(self) -> int:
        """
        Exact sign, by refining rational enclosures of the radicals.

        Terminates for every element: a non-zero element has an enclosure
        that excludes 0 once the bounds are fine enough.

        Returns:
            -1, 0 or 1
        """
        if self.is_zero():
            return 0
        if self.is_rational():
            return (self.a > 0) - (self.a < 0)
        bits = _START_BITS
        while True:
            low, high = self._enclosure(bits)
            if low > 0:
                return 1
            if high < 0:
                return -1
            bits *= 2

    def _enclosure(self, bits: int) -> Tuple[Fraction, Fraction]:
        low = high = self.a
        for coefficient, radicand in zip(self._coords[1:], RADICALS):
            if not coefficient:
                continue
            root_low, root_high = sqrt_bounds(radicand, bits)
            if coefficient > 0:
                low += coefficient * root_low
                high += coefficient * root_high
            else:
                low += coefficient * root_high
                high += coefficient * root_low
        return low, high

    def __abs__(self) -> FieldElement:
        return -self if self.sign() < 0 else self

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self._coords)

    def __repr__(self) -> str:
        return f"FieldElement({self.a}, {self.b}, {self.c}, {self.d})"

    def __str__(self) -> str:
        return format_field_element(self)


def sqrt_bounds(radicand: int, bits: int) -> Tuple[Fraction, Fraction]:
    """
    Rational bounds ``low <= sqrt(radicand) <= high`` of width 2**-bits.

    Args:
        radicand: Non-negative integer
        bits: Precision in binary digits

    Returns:
        Pair (low, high)
    """
    root = isqrt(radicand << (2 * bits))
    scale = 1 << bits
    return Fraction(root, scale), Fraction(root + 1, scale)


def format_field_element(x: FieldElement) -> str:
    """Canonical text form, e.g. ``1/2 - 3*r2 + r6``."""
    parts = []
    for coefficient, name in zip(x.coords, ("", "r2", "r3", "r6")):
        if not coefficient:
            continue
        magnitude = abs(coefficient)
        if not name:
            body = str(magnitude)
        elif magnitude == 1:
            body = name
        else:
            body = f"{magnitude}*{name}"
        sign = "-" if coefficient < 0 else "+"
        parts.append((sign, body))
    if not parts:
        return "0"
    first_sign, first_body = parts[0]
    text = ("-" if first_sign == "-" else "") + first_body
    for sign, body in parts[1:]:
        text += f" {sign} {body}"
    return text


ZERO = FieldElement(0)
ONE = FieldElement(1)
SQRT2 = FieldElement(0, 1)
SQRT3 = FieldElement(0, 0, 1)
SQRT6 = FieldElement(0, 0, 0, 1)
