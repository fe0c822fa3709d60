"""
Text notation for field elements, forms and Salamon structure lists.

    field element   1/2 - 3*r2 + r6
    form            2*e134 - r3*e25 + (1 + r2)*e12
    Salamon list    (0,0,0,12,23,-13,-2(16)+2(25)+2(26)-2(34))

Entry k of a Salamon list is de^k; a two-digit token ``ij`` stands for
e^i ∧ e^j. All grammars are pyparsing expressions; syntax and range errors
surface as NotationError carrying the character offset.
"""

from fractions import Fraction
from typing import Any, List, Optional, Sequence

import pyparsing as pp
import structlog

from src.core.exterior import Form
from src.core.scalars import ONE, ZERO, FieldElement

logger = structlog.get_logger(__name__)

MAX_GENERATORS = 9

_RADICAL_VALUES = {"r2": FieldElement(0, 1), "r3": FieldElement(0, 0, 1), "r6": FieldElement(0, 0, 0, 1)}


class NotationError(ValueError):
    """Malformed or out-of-range notation."""

    def __init__(self, message: str, position: Optional[int] = None) -> None:
        self.position = position
        where = f" (at position {position})" if position is not None else ""
        super().__init__(f"{message}{where}")


def _atom_value(tokens: pp.ParseResults) -> FieldElement:
    parts = list(tokens)
    value = ONE
    for part in parts:
        if part in _RADICAL_VALUES:
            value = value * _RADICAL_VALUES[part]
        else:
            value = value * Fraction(part)
    return value


def _fold_signed(tokens: pp.ParseResults) -> FieldElement:
    total = ZERO
    sign = 1
    for token in tokens:
        if token == "+" or token == "-":
            sign = -1 if token == "-" else 1
            continue
        total = total + (token if sign > 0 else -token)
        sign = 1
    return total


_SIGN = pp.one_of("+ -")
_RATIONAL = pp.Regex(r"\d+(?:/\d+)?")
_RADICAL = pp.Regex(r"r[236](?!\d)")
_SCALAR_ATOM = (
    pp.Group(_RATIONAL + pp.Optional(pp.Suppress("*") + _RADICAL)) | pp.Group(_RADICAL)
).set_parse_action(lambda t: _atom_value(t[0]))
_FIELD_SUM = (pp.Optional(_SIGN) + _SCALAR_ATOM + pp.ZeroOrMore(_SIGN + _SCALAR_ATOM)).set_parse_action(
    _fold_signed
)

_GENERATOR = pp.Regex(r"e\d+")
_COEFFICIENT = (pp.Suppress("(") + _FIELD_SUM + pp.Suppress(")")) | _SCALAR_ATOM
_FORM_TERM = pp.Group(
    (_COEFFICIENT + pp.Optional(pp.Suppress("*") + _GENERATOR)) | _GENERATOR
).set_parse_action(lambda s, loc, t: [(loc, list(t[0]))])
_FORM = pp.Optional(_SIGN) + _FORM_TERM + pp.ZeroOrMore(_SIGN + _FORM_TERM)

_PAREN_PAIR = pp.Suppress("(") + pp.Regex(r"\d\d") + pp.Suppress(")")
_BARE_PAIR = pp.Regex(r"\d\d(?!\d)")
_SAL_TERM = (
    pp.Group(_RATIONAL + pp.Optional(pp.Suppress("*")) + _PAREN_PAIR)
    | pp.Group(_RATIONAL + pp.Suppress("*") + (_PAREN_PAIR | _BARE_PAIR))
    | pp.Group(_PAREN_PAIR | _BARE_PAIR)
).set_parse_action(lambda s, loc, t: [(loc, list(t[0]))])
_SAL_ZERO = pp.Regex(r"0(?![\d(*/])")
_SAL_ENTRY = pp.Group(_SAL_ZERO) | pp.Group(
    pp.Optional(_SIGN) + _SAL_TERM + pp.ZeroOrMore(_SIGN + _SAL_TERM)
)
_SALAMON = (
    pp.Suppress("(") + _SAL_ENTRY + pp.ZeroOrMore(pp.Suppress(",") + _SAL_ENTRY) + pp.Suppress(")")
)


def _parse(grammar: pp.ParserElement, text: str, what: str) -> pp.ParseResults:
    try:
        return grammar.parse_string(text, parse_all=True)
    except pp.ParseException as exc:
        raise NotationError(f"malformed {what}: {exc.msg}", position=exc.loc) from exc


def parse_field_element(text: str) -> FieldElement:
    """
    Parse ``a + b*r2 + c*r3 + d*r6`` style text (any order, repeats allowed).

    Args:
        text: Signed sum of rationals and rational multiples of r2, r3, r6

    Returns:
        The element of Q(√2, √3)

    Raises:
        NotationError: If the text does not match the grammar
    """
    return _parse(_FIELD_SUM, text, "field element")[0]


def parse_form(text: str, n: int, labels: Optional[Sequence[int]] = None) -> Form:
    """
    Parse a form on ``n`` generators.

    Digits after ``e`` name generators; with ``labels`` (e.g. (3, 4, 7)) they
    are looked up in the label list, otherwise they are the indices 1..n.

    Args:
        text: Form such as ``2*e134 - r3*e25``
        n: Number of generators
        labels: Generator names, when they differ from 1..n

    Returns:
        Parsed form

    Raises:
        NotationError: On syntax errors, unknown or repeated generators
    """
    tokens = _parse(_FORM, text, "form")
    lookup = {label: i + 1 for i, label in enumerate(labels)} if labels else None
    result = Form.zero(n)
    sign = 1
    for token in tokens:
        if token == "+" or token == "-":
            sign = -1 if token == "-" else 1
            continue
        location, parts = token
        coefficient = ONE
        indices: List[int] = []
        for part in parts:
            if isinstance(part, FieldElement):
                coefficient = part
            else:
                indices = _generator_indices(part, n, lookup, location)
        if len(set(indices)) != len(indices):
            raise NotationError(f"repeated generator in '{_name(parts)}'", position=location)
        result = result + Form.monomial(n, indices, coefficient * sign)
        sign = 1
    return result


def _name(parts: Sequence[Any]) -> str:
    return "".join(str(part) for part in parts)


def _generator_indices(
    name: str, n: int, lookup: Optional[dict], location: int
) -> List[int]:
    indices = []
    for digit in name[1:]:
        label = int(digit)
        if lookup is not None:
            if label not in lookup:
                raise NotationError(f"unknown generator e{label}", position=location)
            indices.append(lookup[label])
        else:
            if label < 1 or label > n:
                raise NotationError(f"generator e{label} outside 1..{n}", position=location)
            indices.append(label)
    return indices


def parse_salamon(text: str) -> List[Form]:
    """
    Parse a Salamon list into the differentials de^1, ..., de^n.

    Args:
        text: Parenthesised, comma separated entries such as ``(0,0,-2(12))``

    Returns:
        One 2-form per generator

    Raises:
        NotationError: On syntax errors, degenerate pairs or indices out of range
    """
    entries = _parse(_SALAMON, text, "Salamon list")
    n = len(entries)
    if n > MAX_GENERATORS:
        raise NotationError(f"{n} entries given, at most {MAX_GENERATORS} generators supported")
    differentials = []
    for entry in entries:
        tokens = list(entry)
        if len(tokens) == 1 and tokens[0] == "0":
            differentials.append(Form.zero(n))
            continue
        total = Form.zero(n)
        sign = 1
        for token in tokens:
            if token == "+" or token == "-":
                sign = -1 if token == "-" else 1
                continue
            location, parts = token
            coefficient = Fraction(parts[0]) if len(parts) == 2 else Fraction(1)
            pair = parts[-1]
            j, k = int(pair[0]), int(pair[1])
            if j == k:
                raise NotationError(f"degenerate pair {pair}", position=location)
            for index in (j, k):
                if index < 1 or index > n:
                    raise NotationError(
                        f"index {index} in pair {pair} outside 1..{n}", position=location
                    )
            total = total + Form.monomial(n, (j, k), coefficient * sign)
            sign = 1
        differentials.append(total)
    logger.debug("salamon_parsed", generators=n)
    return differentials


def format_salamon(differentials: Sequence[Form]) -> str:
    """Canonical Salamon text, inverse to :func:`parse_salamon` on rational data."""
    entries = []
    for form in differentials:
        if form.is_zero():
            entries.append("0")
            continue
        text = ""
        for monomial, coefficient in form:
            pair = "".join(str(i) for i in monomial)
            negative = coefficient.sign() < 0
            magnitude = -coefficient if negative else coefficient
            if magnitude == 1:
                body = pair
            elif magnitude.is_rational():
                body = f"{magnitude.to_fraction()}({pair})"
            else:
                body = f"({magnitude})({pair})"
            if text:
                text += "-" if negative else "+"
            elif negative:
                text = "-"
            text += body
        entries.append(text)
    return "(" + ",".join(entries) + ")"


def parse_field_matrix(rows: Sequence[Sequence[str]]) -> List[List[FieldElement]]:
    """Parse a matrix given as rows of field-element text."""
    return [[parse_field_element(str(entry)) for entry in row] for row in rows]

