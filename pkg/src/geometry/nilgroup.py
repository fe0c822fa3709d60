"""
Simply connected nilpotent Lie group in exponential coordinates.

Points are coordinate vectors λ on a fixed basis u_1..u_n of the Lie algebra
(u_k = s_k e_k for a scaling s). The product is the truncated
Baker-Campbell-Hausdorff series

    x * y = x + y + 1/2 [x,y] + 1/12 ([x,[x,y]] - [y,[x,y]]),

exact for algebras of nilpotency step at most three. The lattice Γ is the set
of integer coordinate vectors; closure under the product depends on the
scaling and is tested, not assumed.
"""

from __future__ import annotations

import random
from fractions import Fraction
from itertools import product as cartesian
from math import floor
from typing import Any, Dict, List, Optional, Sequence, Tuple

import structlog
import sympy
from pydantic import BaseModel, ConfigDict, Field

from src.algebra.cdga import LieAlgebraData
from src.core.scalars import FieldElement

logger = structlog.get_logger(__name__)

BracketTable = Dict[Tuple[int, int], Dict[int, Any]]

LATTICE_SCALING = (
    Fraction(1),
    Fraction(1),
    Fraction(1),
    Fraction(1, 2),
    Fraction(1, 2),
    Fraction(1, 2),
    Fraction(1, 6),
)
UNSCALED_CENTRE = (
    Fraction(1),
    Fraction(1),
    Fraction(1),
    Fraction(1, 2),
    Fraction(1, 2),
    Fraction(1, 2),
    Fraction(1),
)
ISOTROPY_AXES = (1, 2, 5, 6)

# Relations between the u_i for the standard lattice, x*y*x^-1*y^-1.
LISTED_COMMUTATORS: Dict[Tuple[int, int], Dict[int, int]] = {
    (1, 2): {4: -2},
    (2, 3): {5: -2},
    (1, 3): {6: 2},
    (1, 6): {7: 6},
    (2, 5): {7: -6},
    (2, 6): {7: -6},
    (3, 4): {7: 6},
}


class GroupElement:
    """Point of the group, as exponential coordinates on the u-basis."""

    __slots__ = ("coords",)

    def __init__(self, coords: Sequence[Any]) -> None:
        self.coords: Tuple[Any, ...] = tuple(
            Fraction(c) if isinstance(c, (int, Fraction)) else c for c in coords
        )

    @classmethod
    def basis(cls, n: int, index: int, scale: Any = 1) -> GroupElement:
        """index-th basis vector of dimension n, times scale."""
        return cls([Fraction(scale) if k == index else Fraction(0) for k in range(1, n + 1)])

    @classmethod
    def parse(cls, text: str) -> GroupElement:
        """Comma separated rationals, e.g. ``"1/2,0,0,1,0,0,3"``."""
        parts = [p.strip() for p in text.strip().strip("()").split(",")]
        try:
            return cls([Fraction(p) for p in parts])
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"cannot read group element from {text!r}") from exc

    @property
    def dimension(self) -> int:
        return len(self.coords)

    def is_integral(self) -> bool:
        return all(isinstance(c, Fraction) and c.denominator == 1 for c in self.coords)

    def as_lattice(self) -> LatticeElement:
        """The same point as a LatticeElement; ValueError unless integral."""
        if not self.is_integral():
            raise ValueError(f"{self} is not a lattice point")
        return LatticeElement(self.coords)

    def scaled(self, factor: Any) -> GroupElement:
        return GroupElement([c * factor for c in self.coords])

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupElement):
            return NotImplemented
        return self.coords == other.coords

    def __hash__(self) -> int:
        return hash(self.coords)

    def __repr__(self) -> str:
        return f"{type(self).__name__}({', '.join(str(c) for c in self.coords)})"

    def __str__(self) -> str:
        return "(" + ", ".join(str(c) for c in self.coords) + ")"


class LatticeElement(GroupElement):
    """Element of Γ: integer coordinates."""


class Discrepancy(BaseModel):
    """One coordinate where the closed formula and the series product differ."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    coordinate: int
    oracle: Fraction
    listed: Fraction


class LatticeClosureReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    closed: bool
    trials: int
    witness: Optional[Tuple[GroupElement, GroupElement, GroupElement]] = None


class IsotropyComponent(BaseModel):
    """Half-period ε together with the lattice element γ with γ * ε = j(ε)."""

    model_config = ConfigDict(arbitrary_types_allowed=True)

    epsilon: GroupElement
    witness: LatticeElement


class GridReport(BaseModel):
    model_config = ConfigDict(arbitrary_types_allowed=True)

    points: int
    isotropic: List[GroupElement] = Field(default_factory=list)
    mismatches: List[GroupElement] = Field(default_factory=list)


class NilpotentGroup:
    """
    Group structure on exponential coordinates for a step ≤ 3 nilpotent algebra.

    Args:
        lie: Structure constants on the e-basis; they must be rational.
        scaling: Factors s_k with u_k = s_k e_k; defaults to all ones.

    Raises:
        ValueError: On a zero or missing scaling factor, irrational constants,
            or nilpotency step above three.
    """

    def __init__(self, lie: LieAlgebraData, scaling: Optional[Sequence[Any]] = None) -> None:
        n = lie.dimension
        scale = [Fraction(s) for s in (scaling or [1] * n)]
        if len(scale) != n or any(s == 0 for s in scale):
            raise ValueError(f"need {n} non-zero scaling factors")
        self.dimension = n
        self.scaling = tuple(scale)
        table: BracketTable = {}
        for (i, j), image in lie.structure_constants.items():
            converted = {}
            for k, value in image.items():
                coefficient = FieldElement.coerce(value)
                if not coefficient.is_rational():
                    raise ValueError("group coordinates need rational structure constants")
                converted[k] = coefficient.to_fraction() * scale[i - 1] * scale[j - 1] / scale[k - 1]
            table[(i, j)] = converted
        self.table = table
        self._check_step()

    def _check_step(self) -> None:
        n = self.dimension
        basis = [GroupElement.basis(n, i).coords for i in range(1, n + 1)]
        for a in basis:
            for b in basis:
                ab = self._bracket(a, b, self.table)
                if not any(ab):
                    continue
                for c in basis:
                    abc = self._bracket(ab, c, self.table)
                    if not any(abc):
                        continue
                    for d in basis:
                        if any(self._bracket(abc, d, self.table)):
                            raise ValueError("algebra has nilpotency step above three")

    def bracket_in_u(self, i: int, j: int) -> Dict[int, Fraction]:
        """Coefficients of [u_i, u_j] on the u-basis."""
        if i == j:
            return {}
        image = self.table.get((min(i, j), max(i, j)), {})
        return dict(image) if i < j else {k: -v for k, v in image.items()}

    @staticmethod
    def _bracket(x: Sequence[Any], y: Sequence[Any], table: BracketTable) -> List[Any]:
        result: List[Any] = [0] * len(x)
        for (i, j), image in table.items():
            weight = x[i - 1] * y[j - 1] - x[j - 1] * y[i - 1]
            if weight == 0:
                continue
            for k, value in image.items():
                result[k - 1] = result[k - 1] + weight * value
        return result

    def _bch(self, x: Sequence[Any], y: Sequence[Any], table: BracketTable) -> List[Any]:
        xy = self._bracket(x, y, table)
        difference = [a - b for a, b in zip(x, y)]
        cubic = self._bracket(difference, xy, table)
        return [
            a + b + Fraction(1, 2) * c + Fraction(1, 12) * d
            for a, b, c, d in zip(x, y, xy, cubic)
        ]

    def bracket(self, x: GroupElement, y: GroupElement) -> GroupElement:
        """Lie bracket [x, y] in u-coordinates."""
        return GroupElement(self._bracket(x.coords, y.coords, self.table))

    def bch_product(self, x: GroupElement, y: GroupElement) -> GroupElement:
        """
        Group product x * y by the truncated series.

        Args:
            x: Left factor.
            y: Right factor.

        Returns:
            The product in exponential coordinates.

        Raises:
            ValueError: If either factor has the wrong dimension.
        """
        if x.dimension != self.dimension or y.dimension != self.dimension:
            raise ValueError(f"expected {self.dimension} coordinates")
        return GroupElement(self._bch(x.coords, y.coords, self.table))

    def multiply(self, *elements: GroupElement) -> GroupElement:
        """Left to right product of ``elements``; the identity when empty."""
        result = self.identity()
        for element in elements:
            result = self.bch_product(result, element)
        return result

    def identity(self) -> GroupElement:
        return GroupElement([0] * self.dimension)

    def inverse(self, x: GroupElement) -> GroupElement:
        """x^-1, which is -x in exponential coordinates."""
        return x.scaled(-1)

    def commutator(self, x: GroupElement, y: GroupElement) -> GroupElement:
        """x * y * x^-1 * y^-1."""
        return self.multiply(x, y, self.inverse(x), self.inverse(y))

    def commutator_table(self) -> Dict[Tuple[int, int], GroupElement]:
        """Group commutators of the u-basis elements, for i < j."""
        n = self.dimension
        table = {}
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                table[(i, j)] = self.commutator(GroupElement.basis(n, i), GroupElement.basis(n, j))
        return table

    def lattice_closure_check(self, trials: int, seed: int, bound: int = 5) -> LatticeClosureReport:
        """
        Multiply random integer pairs and look for a non-integer product.

        Args:
            trials: Number of pairs.
            seed: Seed of the pair generator.
            bound: Coordinates are drawn from [-bound, bound].

        Returns:
            A :class:`LatticeClosureReport`; ``witness`` holds (x, y, x * y)
            for the first failure.
        """
        rng = random.Random(seed)
        n = self.dimension
        for _ in range(trials):
            x = GroupElement([rng.randint(-bound, bound) for _ in range(n)])
            y = GroupElement([rng.randint(-bound, bound) for _ in range(n)])
            z = self.bch_product(x, y)
            if not z.is_integral():
                logger.info("lattice_not_closed", x=str(x), y=str(y), product=str(z))
                return LatticeClosureReport(closed=False, trials=trials, witness=(x, y, z))
        return LatticeClosureReport(closed=True, trials=trials)

    def symbolic_integrality(self) -> Optional[Tuple[int, sympy.Expr]]:
        """
        Expand the product polynomially and return the first coordinate whose
        polynomial has a non-integer coefficient, or None.

        Returns:
            (coordinate, polynomial) for the first offending coordinate, or None
            when Γ is closed under the product.
        """
        n = self.dimension
        lam = sympy.symbols(f"l1:{n + 1}")
        mu = sympy.symbols(f"m1:{n + 1}")
        table = {
            key: {k: sympy.Rational(v.numerator, v.denominator) for k, v in image.items()}
            for key, image in self.table.items()
        }
        xy = self._bracket(lam, mu, table)
        difference = [a - b for a, b in zip(lam, mu)]
        cubic = self._bracket(difference, xy, table)
        for k in range(n):
            expr = sympy.expand(lam[k] + mu[k] + sympy.Rational(1, 2) * xy[k] + sympy.Rational(1, 12) * cubic[k])
            poly = sympy.Poly(expr, *lam, *mu)
            if any(not coefficient.is_integer for coefficient in poly.coeffs()):
                return k + 1, expr
        return None

    def reduce_to_fundamental_domain(self, x: GroupElement) -> Tuple[LatticeElement, GroupElement]:
        """
        Write x = γ * d with γ ∈ Γ and every coordinate of d in [0, 1).

        Integer parts are peeled off by left multiplication, u_1 first; each
        step only moves coordinates of higher index.

        Args:
            x: Point of the group.

        Returns:
            The pair (γ, d).
        """
        n = self.dimension
        current = x
        factors = []
        for index in range(1, n + 1):
            shift = floor(current.coords[index - 1])
            if shift:
                step = GroupElement.basis(n, index, shift)
                current = self.bch_product(self.inverse(step), current)
                factors.append(step)
        gamma = self.multiply(*factors) if factors else self.identity()
        return gamma.as_lattice(), current

    def apply_involution(self, x: GroupElement, signs: Sequence[int]) -> GroupElement:
        """Diagonal involution j acting on exponential coordinates."""
        return GroupElement([c * s for c, s in zip(x.coords, signs)])

    def isotropy_test(
        self, x: GroupElement, signs: Sequence[int], box: int
    ) -> Optional[LatticeElement]:
        """
        The γ ∈ Γ with γ * x = j(x) and all |γ_k| <= box, if any.

        γ is unique when it exists, namely j(x) * x^-1, so the search reduces to
        an integrality test and a bound check.

        Args:
            x: Point of the group.
            signs: Diagonal entries of j.
            box: Bound on the coordinates of γ.

        Returns:
            γ as a lattice element, or None.
        """
        candidate = self.bch_product(self.apply_involution(x, signs), self.inverse(x))
        if not candidate.is_integral():
            return None
        if any(abs(c) > box for c in candidate.coords):
            return None
        return candidate.as_lattice()

    def enumerate_isotropy_components(
        self,
        signs: Sequence[int],
        box: int,
        axes: Sequence[int] = ISOTROPY_AXES,
        sample: Optional[GroupElement] = None,
    ) -> List[IsotropyComponent]:
        """
        Check that every ε ∈ {0, 1/2}^axes (times an element of the fixed
        subgroup, when ``sample`` is given) is isotropic, with witness γ.

        Args:
            signs: Diagonal entries of j.
            box: Bound on the coordinates of each witness.
            axes: Coordinates that take the values 0 and 1/2.
            sample: Element h of the fixed subgroup; ε * h is tested instead of ε.

        Returns:
            One component per ε, in lexicographic order of the halves.

        Raises:
            ValueError: If some ε is not isotropic.
        """
        n = self.dimension
        components = []
        for halves in cartesian((Fraction(0), Fraction(1, 2)), repeat=len(axes)):
            coords = [Fraction(0)] * n
            for axis, value in zip(axes, halves):
                coords[axis - 1] = value
            epsilon = GroupElement(coords)
            point = self.bch_product(epsilon, sample) if sample is not None else epsilon
            witness = self.isotropy_test(point, signs, box)
            if witness is None:
                raise ValueError(f"ε = {epsilon} is not isotropic")
            components.append(IsotropyComponent(epsilon=epsilon, witness=witness))
        logger.info("isotropy_components", count=len(components))
        return components

    def isotropy_grid(
        self, signs: Sequence[int], box: int, steps: int, axes: Sequence[int] = ISOTROPY_AXES
    ) -> GridReport:
        """
        Scan {0, 1/steps, ..., (steps-1)/steps}^axes; isotropy is expected
        exactly where every coordinate lies in {0, 1/2}.

        Args:
            signs: Diagonal entries of j.
            box: Bound on the coordinates of each witness.
            steps: Grid resolution per axis.
            axes: Coordinates that are scanned.

        Returns:
            A :class:`GridReport` with the isotropic points and any mismatches.
        """
        n = self.dimension
        report = GridReport(points=0)
        halves = {Fraction(0), Fraction(1, 2)}
        for values in cartesian([Fraction(k, steps) for k in range(steps)], repeat=len(axes)):
            coords = [Fraction(0)] * n
            for axis, value in zip(axes, values):
                coords[axis - 1] = value
            point = GroupElement(coords)
            report.points += 1
            isotropic = self.isotropy_test(point, signs, box) is not None
            if isotropic:
                report.isotropic.append(point)
            if isotropic != all(v in halves for v in values):
                report.mismatches.append(point)
        return report


def closed_formula_product(x: GroupElement, y: GroupElement) -> GroupElement:
    """
    Closed-form lattice product as listed, term for term.

    Compared against the series product by ``cross_check``; its u_7
    coordinate contains symmetric terms and a sign the series does not
    reproduce.
    """
    l1, l2, l3, l4, l5, l6, l7 = x.coords
    m1, m2, m3, m4, m5, m6, m7 = y.coords
    u7 = (
        l7
        + m7
        + 3 * (l1 * m6 + l6 * m1)
        - 3 * (l2 * m5 - l5 * m2)
        - 3 * (l2 * m6 - l6 * m2)
        + 3 * (l3 * m4 + l4 * m3)
        + (l1 - m1 - l2 + m2) * (l1 * m3 - l3 * m1)
        - (l3 - m3) * (l1 * m2 - m2 * l1)
        - (l2 - m2) * (l2 * m3 - l3 * m2)
    )
    return GroupElement(
        [
            l1 + m1,
            l2 + m2,
            l3 + m3,
            l4 + m4 - (l1 * m2 - l2 * m1),
            l5 + m5 - (l2 * m3 - l3 * m2),
            l6 + m6 + (l1 * m3 - l3 * m1),
            u7,
        ]
    )


def cross_check(group: NilpotentGroup, x: GroupElement, y: GroupElement) -> List[Discrepancy]:
    """
    Coordinates where the listed closed formula disagrees with the series.

    Args:
        group: Group providing the series product.
        x: Left factor.
        y: Right factor.

    Returns:
        One :class:`Discrepancy` per differing coordinate; each is logged.
    """
    oracle = group.bch_product(x, y)
    listed = closed_formula_product(x, y)
    discrepancies = [
        Discrepancy(coordinate=k + 1, oracle=a, listed=b)
        for k, (a, b) in enumerate(zip(oracle.coords, listed.coords))
        if a != b
    ]
    for item in discrepancies:
        logger.warning(
            "closed_formula_mismatch",
            x=str(x),
            y=str(y),
            coordinate=item.coordinate,
            oracle=str(item.oracle),
            listed=str(item.listed),
        )
    return discrepancies


def listed_commutator_status(
    table: Dict[Tuple[int, int], GroupElement], centre: int
) -> Dict[Tuple[int, int], str]:
    """
    Compare computed commutators with the listed relations.

    Each listed pair gets "exact" or "modulo-centre" (agreement after
    dropping the central coordinate) or "mismatch"; unlisted pairs must be
    trivial ("exact") or are flagged "mismatch".
    """
    status = {}
    for pair, element in table.items():
        expected = [Fraction(0)] * element.dimension
        for k, value in LISTED_COMMUTATORS.get(pair, {}).items():
            expected[k - 1] = Fraction(value)
        actual = list(element.coords)
        if actual == expected:
            status[pair] = "exact"
        elif pair in LISTED_COMMUTATORS and all(
            a == b for k, (a, b) in enumerate(zip(actual, expected), start=1) if k != centre
        ):
            status[pair] = "modulo-centre"
        else:
            status[pair] = "mismatch"
    return status
