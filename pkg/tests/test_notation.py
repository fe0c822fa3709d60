"""Tests for the text notation."""

from fractions import Fraction

import pytest

from src.algebra.notation import (
    NotationError,
    format_salamon,
    parse_field_element,
    parse_form,
    parse_salamon,
)
from src.core.exterior import Form
from src.core.scalars import SQRT2, SQRT3, FieldElement


def test_field_element():
    assert parse_field_element("1 + r2") == FieldElement(1, 1)
    assert parse_field_element("-3/4*r6") == FieldElement(0, 0, 0, Fraction(-3, 4))


def test_form_with_coefficients():
    form = parse_form("2*e134 - r3*e25 + (1 + r2)*e12", 5)
    assert form.coefficient((1, 3, 4)) == 2
    assert form.coefficient((2, 5)) == -SQRT3
    assert form.coefficient((1, 2)) == 1 + SQRT2


def test_form_reorders_generators():
    assert parse_form("e21", 2) == Form(2, {(1, 2): -1})


def test_form_with_labels():
    form = parse_form("e47 - 2*e3", 3, labels=[3, 4, 7])
    assert form == Form(3, {(2, 3): 1, (1,): -2})


def test_form_errors():
    with pytest.raises(NotationError):
        parse_form("e18", 7)
    with pytest.raises(NotationError):
        parse_form("e11", 3)
    with pytest.raises(NotationError) as info:
        parse_form("e1 + + e2", 3)
    assert info.value.position is not None
    with pytest.raises(NotationError):
        parse_form("e5", 3, labels=[3, 4, 7])


def test_salamon_seven_dimensional_algebra():
    d = parse_salamon("(0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))")
    assert len(d) == 7
    assert d[3] == Form(7, {(1, 2): 1})
    assert d[4] == Form(7, {(2, 3): 1})
    assert d[5] == Form(7, {(1, 3): -1})
    assert d[6] == Form(7, {(1, 6): -2, (2, 5): 2, (2, 6): 2, (3, 4): -2})
    assert all(form.is_zero() for form in d[:3])


def test_salamon_round_trip_text():
    text = "(0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))"
    assert format_salamon(parse_salamon(text)) == text


def test_salamon_errors():
    with pytest.raises(NotationError):
        parse_salamon("(0,0,14)")
    with pytest.raises(NotationError):
        parse_salamon("(0,0,11)")
    with pytest.raises(NotationError):
        parse_salamon("(0,0,1x)")
    with pytest.raises(NotationError):
        parse_salamon("(0,0,0,0,0,0,0,0,0,0)")
