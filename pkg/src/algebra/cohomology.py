"""
Cohomology of a (restricted) Chevalley-Eilenberg complex.

Cochains in degree k are coordinate vectors on the complex's monomial basis.
For each degree the boundary space B^k is spanned by the pivot columns of
d_{k-1}; cohomology representatives are the kernel vectors of d_k that a
greedy pass adds to B^k. Class coordinates are taken with respect to those
representatives modulo B^k.
"""

from dataclasses import dataclass
from enum import Enum
from typing import Any, Dict, List, Optional, Sequence, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, Field

from src.algebra.cdga import Cdga
from src.core.exterior import Form, Monomial
from src.core.linalg import (
    SpanSolver,
    column_space_basis,
    independent_subset,
    in_span,
    kernel_basis,
    rank,
    solve,
    transpose,
)
from src.core.scalars import ZERO, FieldElement, Scalar

logger = structlog.get_logger(__name__)

Vector = List[FieldElement]


class NotClosedError(ValueError):
    """A form that should be a cocycle is not closed."""


class ExactnessStatus(str, Enum):
    """Outcome of an exactness test."""

    EXACT = "exact"
    NOT_EXACT = "not_exact"
    NOT_CLOSED = "not_closed"


class ExactnessResult(BaseModel):
    """Verdict of :func:`is_exact`, with a primitive when the form is exact."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    status: ExactnessStatus
    primitive: Optional[Form] = None

    @property
    def exact(self) -> bool:
        return self.status == ExactnessStatus.EXACT


@dataclass
class _DegreeData:
    boundaries: List[Vector]
    cycles: List[Vector]
    representatives: List[Vector]
    solver: SpanSolver


class CochainComplex:
    """Graded cochain spaces and differential matrices of a Cdga."""

    def __init__(self, cdga: Cdga) -> None:
        self.cdga = cdga
        self.n = cdga.n
        self.name = cdga.name
        self._bases: Dict[int, List[Monomial]] = {}
        self._index: Dict[int, Dict[Monomial, int]] = {}
        self._matrices: Dict[int, List[Vector]] = {}
        self._data: Dict[int, _DegreeData] = {}

    def basis(self, k: int) -> List[Monomial]:
        if k not in self._bases:
            self._bases[k] = self.cdga.basis(k) if 0 <= k <= self.n else []
            self._index[k] = {m: i for i, m in enumerate(self._bases[k])}
        return self._bases[k]

    def dimension(self, k: int) -> int:
        return len(self.basis(k))

    def vector_of(self, form: Form, k: int) -> Vector:
        """
        Coordinates of ``form`` on the degree k monomial basis.

        Raises:
            ValueError: If a term has the wrong degree or lies outside the basis.
        """
        basis = self.basis(k)
        index = self._index[k]
        vector = [ZERO] * len(basis)
        for monomial, coefficient in form.terms.items():
            if len(monomial) != k:
                raise ValueError(f"form has a term of degree {len(monomial)}, expected {k}")
            if monomial not in index:
                raise ValueError(
                    f"monomial {self.cdga.format(Form.monomial(self.n, monomial))} "
                    f"is not in the cochain basis of {self.name or 'the complex'}"
                )
            vector[index[monomial]] = coefficient
        return vector

    def form_of(self, vector: Sequence[Scalar], k: int) -> Form:
        """Form with the given coordinates on the degree k basis."""
        basis = self.basis(k)
        return Form(self.n, {m: c for m, c in zip(basis, vector) if c})

    def differential_matrix(self, k: int) -> List[Vector]:
        """Matrix of d: C^k -> C^{k+1}, rows indexed by the degree k+1 basis."""
        if k not in self._matrices:
            source = self.basis(k)
            target_dim = self.dimension(k + 1)
            columns = [self.vector_of(self.cdga.d_monomial(m), k + 1) for m in source]
            self._matrices[k] = (
                transpose(columns, target_dim) if columns else [[] for _ in range(target_dim)]
            )
        return self._matrices[k]

    def _degree_data(self, k: int) -> _DegreeData:
        if k in self._data:
            return self._data[k]
        dim = self.dimension(k)
        boundaries: List[Vector] = []
        if k >= 1 and self.dimension(k - 1) and dim:
            incoming = self.differential_matrix(k - 1)
            pivots = column_space_basis(incoming)
            boundaries = [[row[j] for row in incoming] for j in pivots]
        outgoing = self.differential_matrix(k)
        cycles = kernel_basis(outgoing, dim) if dim else []
        chosen = independent_subset(boundaries + cycles)
        representatives = [cycles[i - len(boundaries)] for i in chosen if i >= len(boundaries)]
        solver = SpanSolver(boundaries + representatives, dim)
        data = _DegreeData(boundaries, cycles, representatives, solver)
        self._data[k] = data
        return data

    def cycles(self, k: int) -> List[Form]:
        return [self.form_of(v, k) for v in self._degree_data(k).cycles]

    def boundaries(self, k: int) -> List[Form]:
        return [self.form_of(v, k) for v in self._degree_data(k).boundaries]

    def representatives(self, k: int) -> List[Form]:
        """Chosen cocycles whose classes form a basis of H^k."""
        return [self.form_of(v, k) for v in self._degree_data(k).representatives]

    def betti_number(self, k: int) -> int:
        """dim H^k, zero outside 0..n."""
        if k < 0 or k > self.n:
            return 0
        return len(self._degree_data(k).representatives)

    def is_closed(self, form: Form) -> bool:
        return not self.cdga.d(form)

    def class_coordinates(self, vector: Sequence[Scalar], k: int) -> Vector:
        """
        Coordinates of a cocycle on the representative basis modulo B^k.

        Args:
            vector: Cochain in the degree k basis.
            k: Degree.

        Returns:
            One coordinate per representative.

        Raises:
            NotClosedError: If ``vector`` is not a cocycle.
        """
        data = self._degree_data(k)
        coefficients = data.solver.coordinates(vector)
        if coefficients is None:
            raise NotClosedError("cochain is not a cocycle")
        return coefficients[len(data.boundaries) :]


class CohomologyClass:
    """A class in H^k given by coordinates on the representative basis and a cocycle."""

    def __init__(
        self,
        complex_: CochainComplex,
        degree: int,
        coordinates: Sequence[FieldElement],
        representative: Form,
    ) -> None:
        self.complex = complex_
        self.degree = degree
        self.coordinates: Tuple[FieldElement, ...] = tuple(coordinates)
        self.representative = representative

    def is_zero(self) -> bool:
        return not any(self.coordinates)

    def _check(self, other: "CohomologyClass") -> None:
        if other.complex is not self.complex or other.degree != self.degree:
            raise ValueError("classes live in different cohomology groups")

    def __add__(self, other: "CohomologyClass") -> "CohomologyClass":
        self._check(other)
        return CohomologyClass(
            self.complex,
            self.degree,
            [a + b for a, b in zip(self.coordinates, other.coordinates)],
            self.representative + other.representative,
        )

    def __neg__(self) -> "CohomologyClass":
        return self.scaled(-1)

    def __sub__(self, other: "CohomologyClass") -> "CohomologyClass":
        return self + (-other)

    def scaled(self, factor: Scalar) -> "CohomologyClass":
        value = FieldElement.coerce(factor)
        return CohomologyClass(
            self.complex,
            self.degree,
            [c * value for c in self.coordinates],
            self.representative * value,
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, CohomologyClass):
            return NotImplemented
        return (
            other.complex is self.complex
            and other.degree == self.degree
            and other.coordinates == self.coordinates
        )

    def __hash__(self) -> int:
        return hash((id(self.complex), self.degree, self.coordinates))

    def __repr__(self) -> str:
        return f"CohomologyClass(H^{self.degree}, [{self.complex.cdga.format(self.representative)}])"

    def to_text(self) -> str:
        return f"[{self.complex.cdga.format(self.representative)}]"


def betti(complex_: CochainComplex) -> List[int]:
    """
    Betti numbers b_0, ..., b_n of the complex.

    Args:
        complex_: Cochain complex to measure.

    Returns:
        List of length n + 1 with dim H^k at index k.
    """
    numbers = [complex_.betti_number(k) for k in range(complex_.n + 1)]
    logger.info("betti_computed", complex=complex_.name or "complex", betti=numbers)
    return numbers


def cohomology_basis(complex_: CochainComplex, k: int) -> List[CohomologyClass]:
    """
    Basis of H^k given by the chosen cocycle representatives.

    Args:
        complex_: Cochain complex.
        k: Degree; out of range degrees give an empty basis.

    Returns:
        One class per representative, with unit coordinates.
    """
    reps = complex_.representatives(k) if 0 <= k <= complex_.n else []
    size = len(reps)
    return [
        CohomologyClass(
            complex_, k, [FieldElement(1) if i == j else ZERO for j in range(size)], rep
        )
        for i, rep in enumerate(reps)
    ]


def class_of(complex_: CochainComplex, form: Form, degree: Optional[int] = None) -> CohomologyClass:
    """
    Cohomology class of a closed form, keeping ``form`` as representative.

    Args:
        complex_: Cochain complex the form lives in.
        form: Closed homogeneous form.
        degree: Degree of ``form``; required when ``form`` is zero.

    Returns:
        The class with coordinates on the representative basis.

    Raises:
        NotClosedError: If ``form`` is not closed.
    """
    if degree is None:
        degree = form.degree()
        if degree is None:
            raise ValueError("degree must be given for the zero form")
    if not complex_.is_closed(form):
        raise NotClosedError(f"{complex_.cdga.format(form)} is not closed")
    vector = complex_.vector_of(form, degree)
    coordinates = complex_.class_coordinates(vector, degree) if vector else []
    return CohomologyClass(complex_, degree, coordinates, form)


def class_from_coordinates(
    complex_: CochainComplex, k: int, coordinates: Sequence[Scalar]
) -> CohomologyClass:
    """
    Class with the given coordinates on the representative basis of H^k.

    Args:
        complex_: Cochain complex.
        k: Degree.
        coordinates: One scalar per representative.

    Returns:
        The class whose representative is the matching combination.
    """
    reps = complex_.representatives(k)
    form = Form.zero(complex_.n)
    for rep, c in zip(reps, coordinates):
        if c:
            form = form + rep * c
    return CohomologyClass(complex_, k, [FieldElement.coerce(c) for c in coordinates], form)


def is_exact(complex_: CochainComplex, form: Form, degree: Optional[int] = None) -> ExactnessResult:
    """
    Decide whether ``form`` is exact.

    Args:
        complex_: Cochain complex.
        form: Homogeneous form to test.
        degree: Degree of ``form``; the zero form is exact in any degree.

    Returns:
        An :class:`ExactnessResult`; ``primitive`` is set when exact.
    """
    if degree is None:
        degree = form.degree()
        if degree is None:
            return ExactnessResult(status=ExactnessStatus.EXACT, primitive=Form.zero(complex_.n))
    if not complex_.is_closed(form):
        return ExactnessResult(status=ExactnessStatus.NOT_CLOSED)
    if not form:
        return ExactnessResult(status=ExactnessStatus.EXACT, primitive=Form.zero(complex_.n))
    if degree == 0 or complex_.dimension(degree - 1) == 0:
        return ExactnessResult(status=ExactnessStatus.NOT_EXACT)
    matrix = complex_.differential_matrix(degree - 1)
    solution = solve(matrix, complex_.vector_of(form, degree))
    if solution is None:
        return ExactnessResult(status=ExactnessStatus.NOT_EXACT)
    return ExactnessResult(
        status=ExactnessStatus.EXACT, primitive=complex_.form_of(solution, degree - 1)
    )


def cup(x: CohomologyClass, y: CohomologyClass) -> CohomologyClass:
    """
    Cup product of two classes of the same complex.

    Args:
        x: Left factor.
        y: Right factor.

    Returns:
        The class of the wedge of the representatives.

    Raises:
        ValueError: If the classes live in different complexes.
    """
    if x.complex is not y.complex:
        raise ValueError("classes live in different complexes")
    product = x.representative ^ y.representative
    return class_of(x.complex, product, x.degree + y.degree)


def bar(form: Form, degree: int) -> Form:
    """ā = (-1)^{|a|} a."""
    return -form if degree % 2 else form


class MasseyResult(BaseModel):
    """
    Triple Massey product ⟨ξ1, ξ2, ξ3⟩ evaluated on one defining system.

    ``indeterminacy`` is a basis of the indeterminacy subgroup in class
    coordinates of degree ``degree``; ``trivial`` is None when undefined.
    """

    model_config = ConfigDict(arbitrary_types_allowed=True)

    degree: int
    defined: bool
    failed_premise: Optional[str] = None
    representative: Optional[CohomologyClass] = None
    indeterminacy: List[List[Any]] = Field(default_factory=list)
    trivial: Optional[bool] = None
    defining_system: Optional[Tuple[Form, Form]] = None

    def contains(self, candidate: CohomologyClass) -> bool:
        """Whether ``candidate`` lies in the coset representative + indeterminacy."""
        if self.representative is None:
            return False
        difference = [a - b for a, b in zip(candidate.coordinates, self.representative.coordinates)]
        return in_span(self.indeterminacy, difference)


def indeterminacy_span(
    x1: CohomologyClass, x2: CohomologyClass, x3: CohomologyClass
) -> List[Vector]:
    """
    Basis of ξ1·H^{|ξ2|+|ξ3|-1} + H^{|ξ1|+|ξ2|-1}·ξ3 in class coordinates.

    Args:
        x1: First class.
        x2: Middle class.
        x3: Last class.

    Returns:
        Linearly independent coordinate vectors spanning the subgroup.
    """
    complex_ = x1.complex
    spanning = [cup(x1, h).coordinates for h in cohomology_basis(complex_, x2.degree + x3.degree - 1)]
    spanning += [cup(h, x3).coordinates for h in cohomology_basis(complex_, x1.degree + x2.degree - 1)]
    vectors = [list(v) for v in spanning if any(v)]
    return [vectors[i] for i in independent_subset(vectors)]


def massey_triple(x1: CohomologyClass, x2: CohomologyClass, x3: CohomologyClass) -> MasseyResult:
    """
    Evaluate ⟨ξ1, ξ2, ξ3⟩ with da12 = ā1 a2, da23 = ā2 a3.

    The representative is ā1 a23 + ā12 a3. When ξ1ξ2 or ξ2ξ3 is non-zero the
    product is undefined and ``defined`` is False.

    Args:
        x1: First class.
        x2: Middle class.
        x3: Last class.

    Returns:
        A :class:`MasseyResult` carrying the representative and indeterminacy.

    Raises:
        ValueError: If the classes live in different complexes.
    """
    complex_ = x1.complex
    if x2.complex is not complex_ or x3.complex is not complex_:
        raise ValueError("classes live in different complexes")
    p, q, r = x1.degree, x2.degree, x3.degree
    total = p + q + r - 1
    a1, a2, a3 = x1.representative, x2.representative, x3.representative

    first = is_exact(complex_, bar(a1, p) ^ a2, p + q)
    if not first.exact:
        logger.info("massey_undefined", premise="x1*x2", status=first.status.value)
        return MasseyResult(degree=total, defined=False, failed_premise="x1*x2")
    second = is_exact(complex_, bar(a2, q) ^ a3, q + r)
    if not second.exact:
        logger.info("massey_undefined", premise="x2*x3", status=second.status.value)
        return MasseyResult(degree=total, defined=False, failed_premise="x2*x3")

    a12, a23 = first.primitive, second.primitive
    assert a12 is not None and a23 is not None
    value = (bar(a1, p) ^ a23) + (bar(a12, p + q - 1) ^ a3)
    representative = class_of(complex_, value, total)
    indeterminacy = indeterminacy_span(x1, x2, x3)
    trivial = in_span(indeterminacy, list(representative.coordinates))
    logger.info(
        "massey_evaluated",
        degree=total,
        representative=complex_.cdga.format(value),
        indeterminacy_dim=len(indeterminacy),
        trivial=trivial,
    )
    return MasseyResult(
        degree=total,
        defined=True,
        representative=representative,
        indeterminacy=indeterminacy,
        trivial=trivial,
        defining_system=(a12, a23),
    )


def same_span(first: Sequence[Sequence[Scalar]], second: Sequence[Sequence[Scalar]]) -> bool:
    """
    Mutual membership of two finite spanning sets.

    Args:
        first: Vectors of the first set.
        second: Vectors of the second set.

    Returns:
        True when both sets span the same subspace.
    """
    a = [list(v) for v in first]
    b = [list(v) for v in second]
    if not a or not b:
        return not any(any(v) for v in a + b)
    return rank(a) == rank(b) == rank(a + b)


def classes_span_equal(first: Sequence[CohomologyClass], second: Sequence[CohomologyClass]) -> bool:
    """Whether two lists of classes span the same subspace of cohomology."""
    return same_span([c.coordinates for c in first], [c.coordinates for c in second])
