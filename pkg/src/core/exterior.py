"""
Sparse exterior algebra Λ(e^1, ..., e^n) over Q(√2, √3).

A monomial is a strictly increasing tuple of generator indices (1-based).
A Form maps monomials to non-zero field coefficients. Forms are immutable.
"""

from __future__ import annotations

from itertools import combinations
from types import MappingProxyType
from typing import Dict, Iterator, List, Mapping, Optional, Sequence, Tuple

from src.core.scalars import ONE, ZERO, FieldElement, Scalar, format_field_element

Monomial = Tuple[int, ...]


class AmbientMismatchError(ValueError):
    """Operands live in exterior algebras of different dimension."""


class DegreeOutOfRangeError(ValueError):
    """Requested degree lies outside 0..n."""


def normalize(indices: Sequence[int]) -> Tuple[int, Optional[Monomial]]:
    """
    Sort ``indices`` into a monomial.

    Args:
        indices: Generator indices in any order

    Returns:
        ``(sign, monomial)`` with the sign of the sorting permutation; the
        monomial is None and the sign 0 if an index repeats
    """
    items = list(indices)
    if len(set(items)) != len(items):
        return 0, None
    sign = 1
    # insertion sort, counting transpositions
    for i in range(1, len(items)):
        j = i
        while j > 0 and items[j - 1] > items[j]:
            items[j - 1], items[j] = items[j], items[j - 1]
            sign = -sign
            j -= 1
    return sign, tuple(items)


def merge_sign(left: Monomial, right: Monomial) -> int:
    """Sign of the shuffle putting ``left + right`` in order (0 if they overlap)."""
    if set(left) & set(right):
        return 0
    inversions = 0
    for i in left:
        for j in right:
            if i > j:
                inversions += 1
    return -1 if inversions % 2 else 1


def basis_of_degree(n: int, k: int) -> List[Monomial]:
    """
    Lexicographically ordered monomial basis of Λ^k on n generators.

    Args:
        n: Number of generators
        k: Degree, 0 <= k <= n

    Returns:
        All C(n, k) increasing index tuples

    Raises:
        DegreeOutOfRangeError: If k is negative or exceeds n
    """
    if k < 0 or k > n:
        raise DegreeOutOfRangeError(f"degree {k} outside 0..{n}")
    return list(combinations(range(1, n + 1), k))


class Form:
    """
    Element of the exterior algebra on ``n`` generators.

    Zero coefficients are dropped on construction, so equality and hashing
    compare the non-zero terms only. ``^`` is the wedge product.
    """

    __slots__ = ("_n", "_terms")

    def __init__(self, n: int, terms: Optional[Mapping[Monomial, Scalar]] = None) -> None:
        if n < 0:
            raise ValueError("ambient dimension must be non-negative")
        self._n = n
        clean: Dict[Monomial, FieldElement] = {}
        for monomial, coefficient in (terms or {}).items():
            value = FieldElement.coerce(coefficient)
            if not value:
                continue
            if any(i < 1 or i > n for i in monomial):
                raise ValueError(f"monomial {monomial} outside generators 1..{n}")
            if list(monomial) != sorted(set(monomial)):
                raise ValueError(f"monomial {monomial} is not strictly increasing")
            clean[tuple(monomial)] = value
        self._terms = clean

    @classmethod
    def _trusted(cls, n: int, terms: Dict[Monomial, FieldElement]) -> Form:
        form = cls.__new__(cls)
        form._n = n
        form._terms = terms
        return form

    @classmethod
    def zero(cls, n: int) -> Form:
        return cls(n)

    @classmethod
    def scalar(cls, n: int, value: Scalar) -> Form:
        return cls(n, {(): value})

    @classmethod
    def generator(cls, n: int, index: int, coefficient: Scalar = 1) -> Form:
        return cls(n, {(index,): coefficient})

    @classmethod
    def monomial(cls, n: int, indices: Sequence[int], coefficient: Scalar = 1) -> Form:
        """Form ``coefficient * e^{i1} ∧ ... ∧ e^{ik}`` with indices in any order."""
        sign, mono = normalize(indices)
        if mono is None:
            return cls(n)
        return cls(n, {mono: FieldElement.coerce(coefficient) * sign})

    @property
    def n(self) -> int:
        return self._n

    @property
    def terms(self) -> Mapping[Monomial, FieldElement]:
        return MappingProxyType(self._terms)

    def coefficient(self, monomial: Sequence[int]) -> FieldElement:
        """
        Coefficient of e^{i1} ∧ ... ∧ e^{ik}, with the indices in any order.

        Args:
            monomial: Generator indices

        Returns:
            Signed coefficient; zero for repeated indices or absent terms
        """
        sign, mono = normalize(monomial)
        if mono is None:
            return ZERO
        return self._terms.get(mono, ZERO) * sign

    def degrees(self) -> List[int]:
        return sorted({len(m) for m in self._terms})

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def degree(self) -> Optional[int]:
        """Degree of a homogeneous form (None for the zero form)."""
        degrees = self.degrees()
        if len(degrees) > 1:
            raise ValueError("form is not homogeneous")
        return degrees[0] if degrees else None

    def homogeneous_part(self, k: int) -> Form:
        """Terms of degree exactly k."""
        return Form._trusted(self._n, {m: c for m, c in self._terms.items() if len(m) == k})

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self) -> bool:
        return bool(self._terms)

    def __iter__(self) -> Iterator[Tuple[Monomial, FieldElement]]:
        return iter(sorted(self._terms.items(), key=lambda item: (len(item[0]), item[0])))

    def _check(self, other: Form) -> None:
        if self._n != other._n:
            raise AmbientMismatchError(f"ambient dimensions differ: {self._n} != {other._n}")

    def __add__(self, other: Form) -> Form:
        if not isinstance(other, Form):
            return NotImplemented
        self._check(other)
        terms = dict(self._terms)
        for monomial, coefficient in other._terms.items():
            total = terms.get(monomial, ZERO) + coefficient
            if total:
                terms[monomial] = total
            else:
                terms.pop(monomial, None)
        return Form._trusted(self._n, terms)

    def __neg__(self) -> Form:
        return Form._trusted(self._n, {m: -c for m, c in self._terms.items()})

    def __sub__(self, other: Form) -> Form:
        if not isinstance(other, Form):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar: Scalar) -> Form:
        if isinstance(scalar, Form):
            return NotImplemented
        value = FieldElement.coerce(scalar)
        if not value:
            return Form(self._n)
        return Form._trusted(self._n, {m: c * value for m, c in self._terms.items()})

    __rmul__ = __mul__

    def wedge(self, other: Form) -> Form:
        """Wedge product of two forms."""
        return wedge(self, other)

    def __xor__(self, other: Form) -> Form:
        return wedge(self, other)

    def contract(self, vector: Sequence[Scalar]) -> Form:
        """Interior product with a vector."""
        return contract(vector, self)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Form):
            return NotImplemented
        return self._n == other._n and self._terms == other._terms

    def __hash__(self) -> int:
        return hash((self._n, frozenset(self._terms.items())))

    def __repr__(self) -> str:
        return f"Form({self._n}, {self.to_text()!r})"

    def __str__(self) -> str:
        return self.to_text()

    def to_text(self, labels: Optional[Sequence[int]] = None) -> str:
        """Canonical text such as ``2*e134 - r3*e25``; ``labels`` renames generators."""
        if not self._terms:
            return "0"
        pieces = []
        for monomial, coefficient in self:
            names = "".join(str(labels[i - 1] if labels else i) for i in monomial)
            basis = f"e{names}" if monomial else ""
            pieces.append(_format_term(coefficient, basis))
        text = pieces[0]
        for piece in pieces[1:]:
            text += f" - {piece[1:]}" if piece.startswith("-") else f" + {piece}"
        return text


def _format_term(coefficient: FieldElement, basis: str) -> str:
    nonzero = sum(1 for value in coefficient.coords if value)
    if not basis:
        text = format_field_element(coefficient)
        return text if nonzero == 1 else f"({text})"
    if coefficient == 1:
        return basis
    if coefficient == -1:
        return f"-{basis}"
    if nonzero == 1:
        return f"{format_field_element(coefficient)}*{basis}"
    return f"({format_field_element(coefficient)})*{basis}"


def wedge(a: Form, b: Form) -> Form:
    """
    Exterior product with the shuffle sign on every pair of monomials.

    Args:
        a: Left factor
        b: Right factor on the same generators

    Returns:
        a ∧ b

    Raises:
        AmbientMismatchError: If the generator counts differ
    """
    a._check(b)
    terms: Dict[Monomial, FieldElement] = {}
    for left, x in a._terms.items():
        for right, y in b._terms.items():
            sign = merge_sign(left, right)
            if not sign:
                continue
            monomial = tuple(sorted(left + right))
            product = x * y if sign > 0 else -(x * y)
            total = terms.get(monomial, ZERO) + product
            if total:
                terms[monomial] = total
            else:
                terms.pop(monomial, None)
    return Form._trusted(a.n, terms)


def contract(vector: Sequence[Scalar], form: Form) -> Form:
    """
    Interior product i(v): the degree -1 antiderivation with i(v)e^j = v_j.

    Args:
        vector: Coordinates of v on the dual basis e_1..e_n
        form: Form to contract

    Returns:
        i(v)form; contracting a scalar gives 0

    Raises:
        AmbientMismatchError: If the vector length differs from the form's n
    """
    if len(vector) != form.n:
        raise AmbientMismatchError(f"vector has {len(vector)} entries, ambient is {form.n}")
    values = [FieldElement.coerce(v) for v in vector]
    terms: Dict[Monomial, FieldElement] = {}
    for monomial, coefficient in form.terms.items():
        for position, index in enumerate(monomial):
            weight = values[index - 1]
            if not weight:
                continue
            rest = monomial[:position] + monomial[position + 1 :]
            value = coefficient * weight
            if position % 2:
                value = -value
            total = terms.get(rest, ZERO) + value
            if total:
                terms[rest] = total
            else:
                terms.pop(rest, None)
    return Form._trusted(form.n, terms)


def unit_vector(n: int, index: int) -> List[FieldElement]:
    """Coordinates of e_index on n generators."""
    return [ONE if i == index else ZERO for i in range(1, n + 1)]


def volume_monomial(n: int) -> Monomial:
    """The top monomial (1, ..., n)."""
    return tuple(range(1, n + 1))
