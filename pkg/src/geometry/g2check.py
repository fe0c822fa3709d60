"""
Algebraic G2 checks for 3-forms on a 7-dimensional space.

For a 3-form φ the symmetric matrix b is read off from

    i(e_i)φ ∧ i(e_j)φ ∧ φ = b_ij e^{1234567}.

φ is a G2 form exactly when b is definite. For φ = A*φ0 one has
b = 6·det(A)·AᵀA, so det(b) = 6^7·c^9 with c = det(A) and the induced metric
is g = b / (6c).
"""

from fractions import Fraction
from typing import List, Optional, Sequence, Tuple

import structlog
from pydantic import BaseModel, ConfigDict, Field
from sympy import integer_nthroot

from src.core.exterior import Form, Monomial, contract, unit_vector, volume_monomial, wedge
from src.core.linalg import determinant, mat_mul, transpose
from src.core.scalars import ZERO, FieldElement, Scalar

logger = structlog.get_logger(__name__)

DIMENSION = 7

STANDARD_TERMS: Tuple[Tuple[Monomial, int], ...] = (
    ((1, 2, 7), 1),
    ((3, 4, 7), 1),
    ((5, 6, 7), 1),
    ((1, 3, 5), 1),
    ((2, 3, 6), -1),
    ((1, 4, 6), -1),
    ((2, 4, 5), -1),
)


class G2FormError(ValueError):
    """Input is not a 3-form on a 7-dimensional space, or A is singular."""


class G2InvolutionError(ValueError):
    """Involution incompatible with φ or of the wrong eigenspace dimensions."""

    def __init__(self, message: str, monomial: Optional[Monomial] = None) -> None:
        self.monomial = monomial
        super().__init__(message)


class G2Report(BaseModel):
    """Invariants of the bilinear form b attached to a 3-form."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    b: List[List[FieldElement]]
    determinant: FieldElement
    leading_minors: List[FieldElement]
    definite: bool
    sign: int
    scale_ninth: FieldElement
    conformal_factor: Optional[FieldElement] = None
    metric: Optional[List[List[FieldElement]]] = None
    notes: List[str] = Field(default_factory=list)


def standard_g2_form() -> Form:
    """φ0 = e127 + e347 + e567 + e135 - e236 - e146 - e245."""
    return Form(DIMENSION, {m: c for m, c in STANDARD_TERMS})


def _check_threeform(phi: Form) -> None:
    if phi.n != DIMENSION:
        raise G2FormError(f"expected a form on 7 generators, got {phi.n}")
    if phi and phi.degrees() != [3]:
        raise G2FormError(f"expected a homogeneous 3-form, got degrees {phi.degrees()}")


def bilinear_form(phi: Form) -> List[List[FieldElement]]:
    """
    b_ij as the top coefficient of i(e_i)φ ∧ i(e_j)φ ∧ φ.

    Args:
        phi: Homogeneous 3-form on seven generators.

    Returns:
        The symmetric 7x7 matrix b.

    Raises:
        G2FormError: If ``phi`` is not a 3-form in dimension 7.
    """
    _check_threeform(phi)
    top = volume_monomial(DIMENSION)
    contracted = [contract(unit_vector(DIMENSION, i), phi) for i in range(1, DIMENSION + 1)]
    b = [[ZERO] * DIMENSION for _ in range(DIMENSION)]
    for i in range(DIMENSION):
        for j in range(i, DIMENSION):
            value = wedge(wedge(contracted[i], contracted[j]), phi).coefficient(top)
            b[i][j] = value
            b[j][i] = value
    return b


def leading_principal_minors(matrix: Sequence[Sequence[FieldElement]]) -> List[FieldElement]:
    """Determinants of the upper-left k x k blocks, k = 1..n."""
    return [determinant([list(row[:k]) for row in matrix[:k]]) for k in range(1, len(matrix) + 1)]


def definiteness(minors: Sequence[FieldElement]) -> int:
    """+1 positive definite, -1 negative definite, 0 otherwise (Sylvester)."""
    signs = [m.sign() for m in minors]
    if all(s > 0 for s in signs):
        return 1
    if all(s == (-1) ** (k + 1) for k, s in enumerate(signs)):
        return -1
    return 0


def rational_ninth_root(value: FieldElement) -> Optional[Fraction]:
    """
    Exact rational c with c^9 == value, when one exists.

    Args:
        value: Field element, usually det(b) / 6^7.

    Returns:
        The rational root, or None when ``value`` is irrational or not a ninth power.
    """
    if not value.is_rational():
        return None
    q = value.to_fraction()
    negative = q < 0
    q = abs(q)
    num, num_exact = integer_nthroot(q.numerator, 9)
    den, den_exact = integer_nthroot(q.denominator, 9)
    if not (num_exact and den_exact):
        return None
    root = Fraction(int(num), int(den))
    return -root if negative else root


def gram_from_threeform(phi: Form) -> G2Report:
    """
    Compute b, its determinant and definiteness, and c^9 = det(b) / 6^7.

    Args:
        phi: Homogeneous 3-form on seven generators.

    Returns:
        A :class:`G2Report`; metric and conformal factor are set when c is rational.
    """
    b = bilinear_form(phi)
    minors = leading_principal_minors(b)
    det = minors[-1]
    sign = definiteness(minors)
    scale_ninth = det / (6**DIMENSION)
    report = G2Report(
        b=b,
        determinant=det,
        leading_minors=minors,
        definite=sign != 0,
        sign=sign,
        scale_ninth=scale_ninth,
    )
    root = rational_ninth_root(scale_ninth)
    if root is not None and root != 0:
        c = FieldElement(root)
        report.conformal_factor = c
        report.metric = [[entry / (c * 6) for entry in row] for row in b]
    elif sign != 0:
        report.notes.append("conformal factor is irrational; metric reported through c^9 only")
    logger.debug("g2_gram_computed", definite=report.definite, sign=sign)
    return report


def is_g2_form(phi: Form) -> bool:
    """Whether b(φ) is definite."""
    return gram_from_threeform(phi).definite


def change_of_basis(phi: Form, matrix: Sequence[Sequence[Scalar]]) -> Form:
    """
    Rewrite φ, given on a basis v^1..v^n, in terms of e^j via v^i = Σ_j A_ij e^j.

    Args:
        phi: Form written on the v basis.
        matrix: Square matrix A.

    Returns:
        The same form written on the e basis.

    Raises:
        G2FormError: If A is not square of size n or is singular.
    """
    n = phi.n
    rows = [[FieldElement.coerce(x) for x in row] for row in matrix]
    if len(rows) != n or any(len(row) != n for row in rows):
        raise G2FormError(f"expected a {n}x{n} matrix")
    if not determinant(rows):
        raise G2FormError("change-of-basis matrix is singular")
    covectors = [Form(n, {(j + 1,): row[j] for j in range(n) if row[j]}) for row in rows]
    result = Form.zero(n)
    for monomial, coefficient in phi.terms.items():
        product = Form.scalar(n, coefficient)
        for index in monomial:
            product = wedge(product, covectors[index - 1])
        result = result + product
    return result


def pulled_back_gram(matrix: Sequence[Sequence[Scalar]]) -> List[List[FieldElement]]:
    """Closed form 6·det(A)·AᵀA of b for A*φ0."""
    rows = [[FieldElement.coerce(x) for x in row] for row in matrix]
    scale = determinant(rows) * 6
    product = mat_mul(transpose(rows), rows)
    return [[entry * scale for entry in row] for row in product]


class InvolutionReport(BaseModel):
    """Eigenspace data of an involution compatible with φ."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    plus_dimension: int
    minus_dimension: int
    plus_generators: List[int]
    restricted_coefficient: FieldElement
    volume_sign: int


def check_g2_involution(phi: Form, signs: Sequence[int]) -> InvolutionReport:
    """
    Check a diagonal involution j against φ.

    Requires j*φ = φ, eigenspaces of dimensions (3, 4), and φ restricted to the
    +1 eigenspace equal to ± the unit volume form of the induced metric there.

    Args:
        phi: G2 form.
        signs: Seven diagonal entries of j.

    Returns:
        An :class:`InvolutionReport`.

    Raises:
        G2InvolutionError: If j is not admissible for φ.
        G2FormError: If φ is not a G2 form.
    """
    _check_threeform(phi)
    if len(signs) != DIMENSION or any(s not in (1, -1) for s in signs):
        raise G2InvolutionError("need seven signs, each +1 or -1")
    if all(s == 1 for s in signs):
        raise G2InvolutionError("identity is not an admissible involution")
    for monomial, coefficient in sorted(phi.terms.items()):
        parity = 1
        for index in monomial:
            parity *= signs[index - 1]
        if parity != 1:
            raise G2InvolutionError(
                f"j* changes the sign of the term on e{''.join(map(str, monomial))}", monomial
            )
    plus = [k for k in range(1, DIMENSION + 1) if signs[k - 1] == 1]
    if len(plus) != 3:
        raise G2InvolutionError(
            f"eigenspace dimensions are ({len(plus)}, {DIMENSION - len(plus)}), expected (3, 4)"
        )

    report = gram_from_threeform(phi)
    if not report.definite:
        raise G2FormError("φ is not a G2 form")
    coefficient = phi.coefficient(tuple(plus))
    sub = [[report.b[i - 1][j - 1] for j in plus] for i in plus]
    det_sub = determinant(sub)
    # φ|V+ = ±vol_g  <=>  coef^2 (6c)^3 = det(b|V+), cubed to use c^9
    lhs = coefficient**6 * FieldElement(216**3) * report.scale_ninth
    rhs = det_sub**3
    if lhs != rhs:
        raise G2InvolutionError("φ restricted to the +1 eigenspace is not a unit volume form")
    sign = coefficient.sign()
    logger.debug("g2_involution_checked", plus=plus, volume_sign=sign)
    return InvolutionReport(
        plus_dimension=3,
        minus_dimension=4,
        plus_generators=plus,
        restricted_coefficient=coefficient,
        volume_sign=sign,
    )
