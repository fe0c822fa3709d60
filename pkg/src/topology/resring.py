"""
Cohomology ring of the resolution X̃ of the orbifold X = M / j.

The singular locus of X is a disjoint union of sixteen copies L_i of a
Heisenberg nilmanifold with cohomology computed from the CE algebra of
⟨e^3, e^4, e^7⟩. Blowing up replaces each L_i by a P^1-bundle, and

    H*(X̃) = H*(X) ⊕ ⊕_i H*(L_i)·x_i,     deg x_i = 2,

with products

    α·β               = α ∧ β
    α·(γ ⊗ x_i)       = (r_i(α) ∧ γ) ⊗ x_i
    (γ ⊗ x_i)(γ' ⊗ x_j) = 0                                   (i != j)
    (γ ⊗ x_i)(γ' ⊗ x_i) = -2 e_*(γ ∧ γ') - (2 - 2g)(γ ∧ γ' ∧ ω ⊗ x_i)

where r_i is restriction, e_* the pushforward H^k(L) -> H^{k+4}(X) defined by
∫_X e_*(γ) ∧ β = ∫_L γ ∧ r(β), ω the fibre class and g = 1 the fibre genus.
PD[L_i] = e_*(1).
"""

from fractions import Fraction
from itertools import product as cartesian
from typing import Any, Dict, List, Optional, Sequence, Tuple

import structlog
from pydantic import BaseModel

from src.algebra.cdga import Cdga, CdgaMorphism, restriction_to, sub_algebra
from src.algebra.cohomology import (
    CochainComplex,
    CohomologyClass,
    class_from_coordinates,
    class_of,
    cohomology_basis,
)
from src.core.exterior import Form, volume_monomial
from src.core.linalg import in_span, independent_subset, rank, solve
from src.core.scalars import ZERO, FieldElement, Scalar

logger = structlog.get_logger(__name__)

COMPONENT_LABELS = (3, 4, 7)
COMPONENT_COUNT = 16
FIBRE_GENUS = 1
M_VOLUME = Fraction(1, 48)
ORBIFOLD_FACTOR = Fraction(1, 2)
L_VOLUME = Fraction(1, 12)

SparseVector = Dict[int, FieldElement]


class DegeneratePairingError(ValueError):
    """The intersection pairing used to define a pushforward is singular."""


def _accumulate(target: SparseVector, source: SparseVector, factor: Scalar = 1) -> None:
    for key, value in source.items():
        total = target.get(key, ZERO) + value * factor
        if total:
            target[key] = total
        else:
            target.pop(key, None)


def _dense(vector: SparseVector, indices: Sequence[int]) -> List[FieldElement]:
    return [vector.get(i, ZERO) for i in indices]


class GradedAlgebra:
    """
    Finite graded-commutative algebra given by a basis and a product table.

    Element 0 of the basis is the unit. Products missing from the table are zero.

    Args:
        names: Display name of each basis element.
        degrees: Degree of each basis element.
        table: Sparse products of basis pairs (i, j).
        top_degree: Highest degree carried by the algebra.
    """

    def __init__(
        self,
        names: Sequence[str],
        degrees: Sequence[int],
        table: Dict[Tuple[int, int], SparseVector],
        top_degree: int,
    ) -> None:
        self.names = list(names)
        self.degrees = list(degrees)
        self.table = table
        self.top_degree = top_degree

    @property
    def dimension(self) -> int:
        return len(self.names)

    def indices_of_degree(self, k: int) -> List[int]:
        return [i for i, d in enumerate(self.degrees) if d == k]

    def betti(self) -> List[int]:
        return [len(self.indices_of_degree(k)) for k in range(self.top_degree + 1)]

    def product(self, i: int, j: int) -> SparseVector:
        return self.table.get((i, j), {})

    def multiply(self, u: SparseVector, v: SparseVector) -> SparseVector:
        """
        Product of two sparse vectors by bilinear extension of the table.

        Args:
            u: Left factor.
            v: Right factor.

        Returns:
            The product, without zero entries.
        """
        result: SparseVector = {}
        for i, a in u.items():
            for j, b in v.items():
                entry = self.table.get((i, j))
                if entry:
                    _accumulate(result, entry, a * b)
        return result

    def basis_vector(self, i: int) -> SparseVector:
        return {i: FieldElement(1)}

    def audit_associativity(self) -> Optional[Tuple[int, int, int]]:
        """First basis triple with (ab)c != a(bc), over triples below the top degree."""
        by_degree = {k: self.indices_of_degree(k) for k in range(self.top_degree + 1)}
        for a in range(self.dimension):
            for b in range(self.dimension):
                room = self.top_degree - self.degrees[a] - self.degrees[b]
                if room < 0:
                    continue
                ab = self.product(a, b)
                for k in range(room + 1):
                    for c in by_degree[k]:
                        left = self.multiply(ab, self.basis_vector(c))
                        right = self.multiply(self.basis_vector(a), self.product(b, c))
                        if left != right:
                            return a, b, c
        return None

    def audit_graded_commutativity(self) -> Optional[Tuple[int, int]]:
        """First basis pair with ab != (-1)^{|a||b|} ba, or None."""
        for a in range(self.dimension):
            for b in range(a, self.dimension):
                sign = -1 if self.degrees[a] * self.degrees[b] % 2 else 1
                forward = self.product(a, b)
                backward = {k: v * sign for k, v in self.product(b, a).items()}
                if forward != backward:
                    return a, b
        return None


class CohomologyRing:
    """H*(complex) with the basis of :func:`cohomology_basis` and cup product table.

    Args:
        complex_: Cochain complex whose cohomology is tabulated.
    """

    def __init__(self, complex_: CochainComplex) -> None:
        self.complex = complex_
        self.classes: List[CohomologyClass] = []
        self.offsets: Dict[int, int] = {}
        for k in range(complex_.n + 1):
            self.offsets[k] = len(self.classes)
            self.classes.extend(cohomology_basis(complex_, k))
        self._algebra: Optional[GradedAlgebra] = None

    @property
    def dimension(self) -> int:
        return len(self.classes)

    def vector(self, cls: CohomologyClass) -> SparseVector:
        start = self.offsets.get(cls.degree, 0)
        return {start + i: c for i, c in enumerate(cls.coordinates) if c}

    def class_of_form(self, form: Form, degree: Optional[int] = None) -> CohomologyClass:
        return class_of(self.complex, form, degree)

    def vector_of_form(self, form: Form, degree: Optional[int] = None) -> SparseVector:
        return self.vector(self.class_of_form(form, degree))

    def class_of_vector(self, vector: SparseVector, degree: int) -> CohomologyClass:
        """Class in H^degree whose coordinates are read from ``vector``."""
        start = self.offsets[degree]
        size = self.complex.betti_number(degree)
        return class_from_coordinates(
            self.complex, degree, [vector.get(start + i, ZERO) for i in range(size)]
        )

    def algebra(self) -> GradedAlgebra:
        """Cup product table as a :class:`GradedAlgebra`, built on first use."""
        if self._algebra is None:
            table: Dict[Tuple[int, int], SparseVector] = {}
            top = self.complex.n
            for i, x in enumerate(self.classes):
                for j, y in enumerate(self.classes):
                    degree = x.degree + y.degree
                    if degree > top:
                        continue
                    product = x.representative ^ y.representative
                    if not product:
                        continue
                    value = self.vector_of_form(product, degree)
                    if value:
                        table[(i, j)] = value
            names = [c.to_text() for c in self.classes]
            self._algebra = GradedAlgebra(names, [c.degree for c in self.classes], table, top)
        return self._algebra


def integrate(form: Form, volume: Fraction) -> FieldElement:
    """Top coefficient times the covolume."""
    return form.coefficient(volume_monomial(form.n)) * volume


def heisenberg_component_ring(source: Cdga, labels: Sequence[int] = COMPONENT_LABELS) -> Cdga:
    """CE algebra of the fixed-locus component, generated by the given labels."""
    generators = [source.labels.index(label) + 1 for label in labels]
    return sub_algebra(source, generators, name="L")


def restriction_morphism(source: Cdga, component: Cdga) -> CdgaMorphism:
    """e^k -> e^k for component labels, other generators -> 0; checked to be a chain map."""
    morphism = restriction_to(source, component)
    morphism.check_chain_map()
    return morphism


class MasseyLiftVerdict(BaseModel):
    """
    Outcome of :func:`massey_lift_check`.

    ``counterexample`` holds coefficients on the resolution spanning set that
    reproduce the target when it fails to persist there.
    """

    persists_on_orbifold: bool
    persists_on_resolution: bool
    exceptional_classes_independent: bool
    counterexample: Optional[List[Any]] = None


class ResolutionRing(GradedAlgebra):
    """
    H*(X̃) as a graded algebra, built from the invariant complex of M and the
    component complex of L.

    Args:
        orbifold: Invariant complex of M, computing H*(X).
        component: Complex of one component L of the singular locus.
        fibre_form: Closed 2-form on L representing the fibre class ω.
        components: Number of components L_i.
        genus: Genus of the exceptional fibre.

    Raises:
        DegeneratePairingError: If a pushforward cannot be defined.
    """

    def __init__(
        self,
        orbifold: CochainComplex,
        component: CochainComplex,
        fibre_form: Form,
        components: int = COMPONENT_COUNT,
        genus: int = FIBRE_GENUS,
    ) -> None:
        self.orbifold = CohomologyRing(orbifold)
        self.component = CohomologyRing(component)
        self.components = components
        self.genus = genus
        self.restriction = restriction_morphism(orbifold.cdga, component.cdga)
        self.top = orbifold.n
        self.fibre = self.component.vector_of_form(fibre_form, 2)

        self._restricted = [self._restrict_vector(c) for c in self.orbifold.classes]
        self._pushed = [self.pushforward(c) for c in self.component.classes]

        names: List[str] = []
        degrees: List[int] = []
        self.sectors: List[Tuple[int, int]] = []  # (0, j) orbifold class j, (i, m) component i
        self._orbifold_index: Dict[int, int] = {}
        self._component_index: Dict[Tuple[int, int], int] = {}
        for k in range(self.top + 1):
            for j, cls in enumerate(self.orbifold.classes):
                if cls.degree == k:
                    self._orbifold_index[j] = len(names)
                    self.sectors.append((0, j))
                    names.append(f"rho*{cls.to_text()}")
                    degrees.append(k)
            for i in range(1, components + 1):
                for m, cls in enumerate(self.component.classes):
                    if cls.degree + 2 == k:
                        self._component_index[(i, m)] = len(names)
                        self.sectors.append((i, m))
                        names.append(f"{cls.to_text()}x{i}")
                        degrees.append(k)
        super().__init__(names, degrees, self._build_table(degrees), self.top)
        logger.info("resolution_ring_built", dimension=self.dimension, betti=self.betti())

    # integration and pushforward

    def integrate_orbifold(self, form: Form) -> FieldElement:
        """∫_X of a top form, with the orbifold factor."""
        return integrate(form, M_VOLUME * ORBIFOLD_FACTOR)

    def integrate_component(self, form: Form) -> FieldElement:
        """∫_L of a top form on the component."""
        return integrate(form, L_VOLUME)

    def restrict(self, cls: CohomologyClass) -> CohomologyClass:
        """r: H*(X) -> H*(L)."""
        return self.component.class_of_form(self.restriction.apply(cls.representative), cls.degree)

    def _restrict_vector(self, cls: CohomologyClass) -> SparseVector:
        if cls.degree > self.component.complex.n:
            return {}
        return self.component.vector(self.restrict(cls))

    def pushforward(self, gamma: CohomologyClass) -> CohomologyClass:
        """e_*: H^k(L) -> H^{k+4}(X), dual to restriction under the pairings."""
        k = gamma.degree
        target = k + 4
        dual = 3 - k
        orbifold = self.orbifold.complex
        targets = cohomology_basis(orbifold, target)
        duals = cohomology_basis(orbifold, dual)
        if len(targets) != len(duals):
            raise DegeneratePairingError(f"b_{target} != b_{dual}")
        if not targets:
            return class_from_coordinates(orbifold, target, [])
        matrix = [
            [self.integrate_orbifold(t.representative ^ d.representative) for t in targets]
            for d in duals
        ]
        rhs = [
            self.integrate_component(
                gamma.representative ^ self.restriction.apply(d.representative)
            )
            for d in duals
        ]
        if rank(matrix) != len(targets):
            raise DegeneratePairingError(f"pairing H^{target} x H^{dual} is degenerate")
        coordinates = solve(matrix, rhs)
        assert coordinates is not None
        return class_from_coordinates(orbifold, target, coordinates)

    def poincare_dual_of_component(self) -> CohomologyClass:
        """PD[L] = e_*(1)."""
        unit = self.component.classes[0]
        return self.pushforward(unit)

    # ring structure

    def _component_product(self, m: int, n: int) -> SparseVector:
        return self.component.algebra().product(m, n)

    def _lift_component(self, vector: SparseVector, i: int) -> SparseVector:
        return {self._component_index[(i, m)]: c for m, c in vector.items()}

    def _lift_orbifold(self, vector: SparseVector) -> SparseVector:
        return {self._orbifold_index[j]: c for j, c in vector.items()}

    def _build_table(self, degrees: List[int]) -> Dict[Tuple[int, int], SparseVector]:
        table: Dict[Tuple[int, int], SparseVector] = {}
        orbifold_algebra = self.orbifold.algebra()
        component_algebra = self.component.algebra()
        size = len(self.sectors)
        for a, b in cartesian(range(size), repeat=2):
            if degrees[a] + degrees[b] > self.top:
                continue
            (i, m), (i2, m2) = self.sectors[a], self.sectors[b]
            value: SparseVector = {}
            if i == 0 and i2 == 0:
                value = self._lift_orbifold(orbifold_algebra.product(m, m2))
            elif i == 0:
                product = component_algebra.multiply(self._restricted[m], {m2: FieldElement(1)})
                value = self._lift_component(product, i2)
            elif i2 == 0:
                product = component_algebra.multiply({m: FieldElement(1)}, self._restricted[m2])
                value = self._lift_component(product, i)
            elif i == i2:
                gamma = self._component_product(m, m2)
                pushed: SparseVector = {}
                for t, c in gamma.items():
                    _accumulate(pushed, self.orbifold.vector(self._pushed[t]), c)
                value = self._lift_orbifold({j: -2 * c for j, c in pushed.items()})
                euler = 2 - 2 * self.genus
                if euler:
                    twisted = component_algebra.multiply(gamma, self.fibre)
                    _accumulate(value, self._lift_component(twisted, i), -euler)
            if value:
                table[(a, b)] = value
        return table

    def rho_star(self, vector: SparseVector) -> SparseVector:
        """Pullback of an orbifold class vector to H*(X̃)."""
        return self._lift_orbifold(vector)

    def tau(self, i: int) -> SparseVector:
        """1 ⊗ x_i."""
        return {self._component_index[(i, 0)]: FieldElement(1)}


def projectivization_ring(
    component: CohomologyRing, fibre: SparseVector, genus: int = FIBRE_GENUS
) -> GradedAlgebra:
    """
    H*(L)[x] / (x^2 + (2 - 2g) ω x) on the basis {γ, γx}.

    Args:
        component: Cohomology ring of L.
        fibre: Sparse vector of ω in H^2(L).
        genus: Genus of the fibre.

    Returns:
        The ring of the projectivized bundle.
    """
    base = component.algebra()
    size = base.dimension
    names = base.names + [f"{name}x" for name in base.names]
    degrees = base.degrees + [d + 2 for d in base.degrees]
    top = base.top_degree + 2
    euler = 2 - 2 * genus
    table: Dict[Tuple[int, int], SparseVector] = {}
    for a, b in cartesian(range(2 * size), repeat=2):
        m, twisted_a = a % size, a >= size
        n, twisted_b = b % size, b >= size
        product = base.product(m, n)
        if not product:
            continue
        if twisted_a and twisted_b:
            if not euler:
                continue
            value = {k + size: -euler * c for k, c in base.multiply(product, fibre).items()}
        elif twisted_a or twisted_b:
            value = {k + size: c for k, c in product.items()}
        else:
            value = dict(product)
        if value:
            table[(a, b)] = value
    return GradedAlgebra(names, degrees, table, top)


def massey_lift_check(
    ring: ResolutionRing,
    target: Form,
    left: Form,
    beta_span: Sequence[Form],
) -> MasseyLiftVerdict:
    """
    Decide whether target ∉ [left]·span(beta) in H*(X), and whether the same
    holds in H*(X̃) once the classes ρ*[left]·τ_i join the span.

    Args:
        ring: Resolution ring.
        target: Closed invariant form whose class is tested.
        left: Closed invariant form of the left factor.
        beta_span: Closed invariant forms spanning the right factors.

    Returns:
        A :class:`MasseyLiftVerdict`.
    """
    orbifold = ring.orbifold
    left_cls = orbifold.class_of_form(left)
    target_cls = orbifold.class_of_form(target)
    degree = target_cls.degree
    products = []
    for beta in beta_span:
        beta_cls = orbifold.class_of_form(beta)
        value = orbifold.algebra().multiply(orbifold.vector(left_cls), orbifold.vector(beta_cls))
        products.append(value)
    orbifold_indices = [orbifold.offsets[degree] + i for i in range(len(target_cls.coordinates))]
    spanning = [_dense(v, orbifold_indices) for v in products]
    on_orbifold = not in_span(spanning, list(target_cls.coordinates))

    indices = ring.indices_of_degree(degree)
    lifted_left = ring.rho_star(orbifold.vector(left_cls))
    exceptional = [ring.multiply(lifted_left, ring.tau(i)) for i in range(1, ring.components + 1)]
    spanning_res = [_dense(ring.rho_star(v), indices) for v in products]
    spanning_res += [_dense(v, indices) for v in exceptional]
    target_res = _dense(ring.rho_star(orbifold.vector(target_cls)), indices)
    on_resolution = not in_span(spanning_res, target_res)

    image = [
        _dense(ring.rho_star({orbifold.offsets[degree] + i: FieldElement(1)}), indices)
        for i in range(len(target_cls.coordinates))
    ]
    with_exceptional = image + [_dense(v, indices) for v in exceptional]
    independent = len(independent_subset(with_exceptional)) == len(image) + len(exceptional)

    counterexample = None
    if not on_resolution:
        columns = [list(col) for col in zip(*spanning_res)] if spanning_res else []
        counterexample = solve(columns, target_res)
    logger.info(
        "massey_lift_checked",
        orbifold=on_orbifold,
        resolution=on_resolution,
        exceptional_independent=independent,
    )
    return MasseyLiftVerdict(
        persists_on_orbifold=on_orbifold,
        persists_on_resolution=on_resolution,
        exceptional_classes_independent=independent,
        counterexample=counterexample,
    )
