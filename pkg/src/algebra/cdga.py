"""
Chevalley-Eilenberg CDGAs of nilpotent Lie algebras, morphisms and involutions.

A Cdga here is Λ(e^1..e^n) with a differential given on generators and extended
as a graded derivation. It may be restricted to a sub-collection of monomials
per degree (the invariant subcomplex of a diagonal involution), in which case
only those monomials form its cochain bases.
"""

from typing import Dict, List, Mapping, Optional, Sequence, Tuple

import structlog

from src.algebra.notation import format_salamon, parse_form, parse_salamon
from src.core.exterior import Form, Monomial, basis_of_degree, wedge
from src.core.scalars import ZERO, FieldElement, Scalar

logger = structlog.get_logger(__name__)

StructureConstants = Dict[Tuple[int, int], Dict[int, FieldElement]]


class NotAChainMapError(ValueError):
    """A proposed morphism does not commute with the differentials."""

    def __init__(self, message: str, generator: int, defect: Optional[Form] = None) -> None:
        self.generator = generator
        self.defect = defect
        super().__init__(message)


class LieAlgebraData:
    """
    Structure constants c_ij^k of an n-dimensional Lie algebra, [e_i, e_j] = Σ_k c_ij^k e_k.

    Only pairs i < j are stored; the bracket is extended antisymmetrically.
    """

    def __init__(self, dimension: int, structure_constants: Mapping[Tuple[int, int], Mapping[int, Scalar]]):
        if dimension < 1:
            raise ValueError("dimension must be positive")
        self.dimension = dimension
        constants: StructureConstants = {}
        for (i, j), image in structure_constants.items():
            if not (1 <= i <= dimension and 1 <= j <= dimension):
                raise ValueError(f"pair ({i},{j}) outside 1..{dimension}")
            if i == j:
                if any(FieldElement.coerce(c) for c in image.values()):
                    raise ValueError(f"[e{i},e{i}] must vanish")
                continue
            sign = 1 if i < j else -1
            key = (min(i, j), max(i, j))
            target = constants.setdefault(key, {})
            for k, value in image.items():
                if not 1 <= k <= dimension:
                    raise ValueError(f"bracket value index {k} outside 1..{dimension}")
                total = target.get(k, ZERO) + FieldElement.coerce(value) * sign
                if total:
                    target[k] = total
                else:
                    target.pop(k, None)
        self.structure_constants = {key: value for key, value in constants.items() if value}

    def bracket_basis(self, i: int, j: int) -> Dict[int, FieldElement]:
        """
        Bracket of two basis vectors.

        Args:
            i: Index of the first basis vector
            j: Index of the second basis vector

        Returns:
            {k: c_ij^k} with zero entries omitted
        """
        if i == j:
            return {}
        image = self.structure_constants.get((min(i, j), max(i, j)), {})
        if i < j:
            return dict(image)
        return {k: -v for k, v in image.items()}

    def bracket(self, x: Sequence[Scalar], y: Sequence[Scalar]) -> List[FieldElement]:
        """Bracket of two coordinate vectors."""
        result = [ZERO] * self.dimension
        for (i, j), image in self.structure_constants.items():
            weight = FieldElement.coerce(x[i - 1]) * y[j - 1] - FieldElement.coerce(x[j - 1]) * y[i - 1]
            if not weight:
                continue
            for k, value in image.items():
                result[k - 1] = result[k - 1] + weight * value
        return result

    def basis_vector(self, i: int) -> List[FieldElement]:
        return [FieldElement(1) if k == i else ZERO for k in range(1, self.dimension + 1)]

    @classmethod
    def from_cdga(cls, cdga: "Cdga") -> "LieAlgebraData":
        """Read c_ij^k = -(coefficient of e^{ij} in de^k) off a differential."""
        constants: Dict[Tuple[int, int], Dict[int, FieldElement]] = {}
        for k in range(1, cdga.n + 1):
            for monomial, coefficient in cdga.differential_of_generator(k).terms.items():
                if len(monomial) != 2:
                    raise ValueError(f"de^{k} is not quadratic")
                constants.setdefault(monomial, {})[k] = -coefficient
        return cls(cdga.n, constants)


def check_jacobi(lie: LieAlgebraData) -> Optional[Tuple[int, int, int]]:
    """
    Search the basis triples for a Jacobi violation.

    Args:
        lie: Structure constants

    Returns:
        First triple (i, j, k) with a non-zero Jacobiator, or None
    """
    n = lie.dimension
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            for k in range(j + 1, n + 1):
                ei, ej, ek = (lie.basis_vector(t) for t in (i, j, k))
                total = [ZERO] * n
                for a, b, c in ((ei, ej, ek), (ej, ek, ei), (ek, ei, ej)):
                    term = lie.bracket(lie.bracket(a, b), c)
                    total = [s + t for s, t in zip(total, term)]
                if any(total):
                    return (i, j, k)
    return None


class Cdga:
    """Free graded-commutative algebra on degree-1 generators with a differential."""

    def __init__(
        self,
        differentials: Sequence[Form],
        labels: Optional[Sequence[int]] = None,
        bases: Optional[Mapping[int, Sequence[Monomial]]] = None,
        name: str = "",
    ) -> None:
        n = len(differentials)
        for index, form in enumerate(differentials, start=1):
            if form.n != n:
                raise ValueError(f"de^{index} lives on {form.n} generators, expected {n}")
            if form and form.degrees() != [2]:
                raise ValueError(f"de^{index} must be a 2-form")
        self.n = n
        self.labels: Tuple[int, ...] = tuple(labels) if labels else tuple(range(1, n + 1))
        if len(self.labels) != n:
            raise ValueError("one label per generator required")
        self.name = name
        self._differentials = list(differentials)
        self._bases = {k: list(v) for k, v in bases.items()} if bases is not None else None
        self._cache: Dict[Monomial, Form] = {}

    @classmethod
    def from_salamon(cls, text: str, name: str = "") -> "Cdga":
        """
        Build the Chevalley-Eilenberg algebra from Salamon notation.

        Args:
            text: Salamon list such as ``(0,0,-12)``
            name: Name used in logs and reports

        Returns:
            The algebra with de^k read from entry k

        Raises:
            NotationError: If the list is malformed
        """
        return cls(parse_salamon(text), name=name)

    def to_salamon(self) -> str:
        """Structure equations in Salamon notation."""
        return format_salamon(self._differentials)

    @property
    def is_restricted(self) -> bool:
        return self._bases is not None

    def basis(self, k: int) -> List[Monomial]:
        """Monomial basis in degree k; restricted algebras use their stored bases."""
        if self._bases is not None:
            return list(self._bases.get(k, []))
        return basis_of_degree(self.n, k)

    def differential_of_generator(self, index: int) -> Form:
        return self._differentials[index - 1]

    @property
    def differentials(self) -> List[Form]:
        return list(self._differentials)

    def d_monomial(self, monomial: Monomial) -> Form:
        """Differential of a basis monomial, by the Leibniz rule."""
        cached = self._cache.get(monomial)
        if cached is not None:
            return cached
        result = Form.zero(self.n)
        for position, index in enumerate(monomial):
            image = self._differentials[index - 1]
            if not image:
                continue
            left = Form.monomial(self.n, monomial[:position])
            right = Form.monomial(self.n, monomial[position + 1 :])
            term = wedge(wedge(left, image), right)
            result = result + (-term if position % 2 else term)
        self._cache[monomial] = result
        return result

    def d(self, form: Form) -> Form:
        """Apply the differential, a degree +1 derivation."""
        if form.n != self.n:
            raise ValueError(f"form lives on {form.n} generators, algebra has {self.n}")
        result = Form.zero(self.n)
        for monomial, coefficient in form.terms.items():
            image = self.d_monomial(monomial)
            if image:
                result = result + image * coefficient
        return result

    def parse(self, text: str) -> Form:
        """Parse a form written with this algebra's generator labels."""
        return parse_form(text, self.n, self.labels)

    def format(self, form: Form) -> str:
        return form.to_text(self.labels)

    def contains(self, form: Form) -> bool:
        """Whether every monomial of ``form`` belongs to this (sub)complex."""
        if self._bases is None:
            return True
        allowed = {m for monomials in self._bases.values() for m in monomials}
        return all(m in allowed for m in form.terms)

    def restricted(self, bases: Mapping[int, Sequence[Monomial]], name: str = "") -> "Cdga":
        return Cdga(self._differentials, self.labels, bases, name or self.name)


def chevalley_eilenberg(lie: LieAlgebraData, name: str = "") -> Cdga:
    """
    Chevalley-Eilenberg algebra of a Lie algebra.

    Args:
        lie: Structure constants
        name: Name used in logs and reports

    Returns:
        Cdga with de^k = -Σ_{i<j} c_ij^k e^{ij}
    """
    n = lie.dimension
    differentials = []
    for k in range(1, n + 1):
        terms = {}
        for (i, j), image in lie.structure_constants.items():
            if k in image:
                terms[(i, j)] = -image[k]
        differentials.append(Form(n, terms))
    return Cdga(differentials, name=name)


def check_d_squared(cdga: Cdga) -> Optional[Tuple[int, Form]]:
    """
    Check d² = 0 on the generators.

    Args:
        cdga: Algebra to test

    Returns:
        First generator k with d(de^k) != 0 together with that 3-form, or None
    """
    for k in range(1, cdga.n + 1):
        value = cdga.d(cdga.differential_of_generator(k))
        if value:
            return k, value
    return None


class CdgaMorphism:
    """Algebra map determined by the images of the source generators."""

    def __init__(self, source: Cdga, target: Cdga, images: Sequence[Form]) -> None:
        if len(images) != source.n:
            raise ValueError(f"need {source.n} generator images, got {len(images)}")
        for index, image in enumerate(images, start=1):
            if image.n != target.n:
                raise ValueError(f"image of e^{index} lives on {image.n} generators")
            if image and image.degrees() != [1]:
                raise ValueError(f"image of e^{index} must be a 1-form")
        self.source = source
        self.target = target
        self.images = list(images)

    def apply(self, form: Form) -> Form:
        """Image of a form, extended multiplicatively from the generators."""
        result = Form.zero(self.target.n)
        for monomial, coefficient in form.terms.items():
            product = Form.scalar(self.target.n, coefficient)
            for index in monomial:
                product = wedge(product, self.images[index - 1])
                if not product:
                    break
            result = result + product
        return result

    def chain_map_defect(self) -> Optional[Tuple[int, Form]]:
        """First generator where f∘d and d∘f disagree."""
        for k in range(1, self.source.n + 1):
            left = self.apply(self.source.differential_of_generator(k))
            right = self.target.d(self.images[k - 1])
            if left != right:
                return k, left - right
        return None

    def check_chain_map(self) -> None:
        """
        Insist that the morphism commutes with the differentials.

        Raises:
            NotAChainMapError: If f∘d != d∘f on some generator
        """
        defect = self.chain_map_defect()
        if defect is not None:
            k, difference = defect
            raise NotAChainMapError(
                f"morphism does not commute with d on e^{self.source.labels[k - 1]}", k, difference
            )


class Involution(CdgaMorphism):
    """Diagonal involution e^k -> s_k e^k of a Cdga."""

    def __init__(self, cdga: Cdga, signs: Sequence[int]) -> None:
        if len(signs) != cdga.n:
            raise ValueError(f"need {cdga.n} signs, got {len(signs)}")
        if any(s not in (1, -1) for s in signs):
            raise ValueError("involution signs must be +1 or -1")
        self.signs = tuple(int(s) for s in signs)
        images = [Form.generator(cdga.n, k, s) for k, s in enumerate(self.signs, start=1)]
        super().__init__(cdga, cdga, images)

    def monomial_sign(self, monomial: Monomial) -> int:
        sign = 1
        for index in monomial:
            sign *= self.signs[index - 1]
        return sign


def involution_from_signs(cdga: Cdga, signs: Sequence[int]) -> Involution:
    """
    Build the diagonal involution and insist that it is a chain map.

    Args:
        cdga: Algebra the involution acts on
        signs: One sign per generator

    Returns:
        The involution e^k -> signs[k] e^k

    Raises:
        ValueError: If a sign is not ±1 or the count is wrong
        NotAChainMapError: If some de^k has a term of the wrong parity
    """
    involution = Involution(cdga, signs)
    for k in range(1, cdga.n + 1):
        for monomial, _ in cdga.differential_of_generator(k).terms.items():
            if involution.monomial_sign(monomial) != involution.signs[k - 1]:
                label = cdga.labels[k - 1]
                raise NotAChainMapError(
                    f"sign pattern does not commute with d on e^{label}: "
                    f"term {cdga.format(Form.monomial(cdga.n, monomial))} has the wrong parity",
                    k,
                )
    logger.debug("involution_accepted", signs=list(involution.signs))
    return involution


def invariant_basis(involution: Involution, k: int) -> List[Monomial]:
    """Degree k monomials fixed by the involution."""
    return [m for m in involution.source.basis(k) if involution.monomial_sign(m) == 1]


def anti_invariant_basis(involution: Involution, k: int) -> List[Monomial]:
    """Monomials that j sends to their negatives."""
    return [m for m in involution.source.basis(k) if involution.monomial_sign(m) == -1]


def invariant_subcomplex(cdga: Cdga, involution: Involution) -> Cdga:
    """
    Restriction of ``cdga`` to the +1 eigenspace of a diagonal involution.

    Args:
        cdga: Full algebra
        involution: Diagonal involution of ``cdga``

    Returns:
        Restricted Cdga whose bases are the invariant monomials
    """
    bases = {k: invariant_basis(involution, k) for k in range(cdga.n + 1)}
    name = f"{cdga.name}^inv" if cdga.name else "invariant"
    return cdga.restricted(bases, name)


def sub_algebra(cdga: Cdga, generators: Sequence[int], name: str = "") -> Cdga:
    """
    CE algebra of the subalgebra spanned by ``generators``.

    Each de^k is restricted to monomials inside the chosen generators; labels
    of the result are the chosen generator labels.
    """
    keep = sorted(generators)
    position = {g: i + 1 for i, g in enumerate(keep)}
    m = len(keep)
    differentials = []
    for g in keep:
        terms = {}
        for monomial, coefficient in cdga.differential_of_generator(g).terms.items():
            if all(i in position for i in monomial):
                terms[tuple(position[i] for i in monomial)] = coefficient
        differentials.append(Form(m, terms))
    labels = [cdga.labels[g - 1] for g in keep]
    return Cdga(differentials, labels=labels, name=name)


def restriction_to(source: Cdga, target: Cdga) -> CdgaMorphism:
    """Map sending e^k to the generator of ``target`` with the same label, others to 0."""
    lookup = {label: i + 1 for i, label in enumerate(target.labels)}
    images = []
    for label in source.labels:
        if label in lookup:
            images.append(Form.generator(target.n, lookup[label]))
        else:
            images.append(Form.zero(target.n))
    return CdgaMorphism(source, target, images)
