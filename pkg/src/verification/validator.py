"""
Verifier for the nilmanifold / G2 orbifold example.

Runs a fixed list of checks against a OrbifoldConfig and collects the outcome
of each as a CheckResult. A failed mathematical statement never raises: it
becomes an error-severity Issue. Malformed input (notation errors) is
detected while the verifier is constructed and propagates to the caller.
"""

import random
import time
from fractions import Fraction
from functools import cached_property
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import structlog

from src import __version__
from src.algebra.cdga import (
    Cdga,
    Involution,
    LieAlgebraData,
    check_d_squared,
    check_jacobi,
    involution_from_signs,
    invariant_subcomplex,
)
from src.algebra.cohomology import (
    CochainComplex,
    CohomologyClass,
    betti,
    class_from_coordinates,
    class_of,
    cohomology_basis,
    is_exact,
    massey_triple,
    same_span,
)
from src.algebra.notation import parse_field_matrix, parse_form
from src.config import OrbifoldConfig, Settings
from src.core.exterior import Form
from src.core.linalg import independent_subset
from src.core.models import CheckResult, Issue, MasseyReport, Severity, VerificationReport
from src.core.scalars import ZERO, FieldElement
from src.geometry.g2check import (
    check_g2_involution,
    change_of_basis,
    gram_from_threeform,
    standard_g2_form,
)
from src.geometry.nilgroup import (
    UNSCALED_CENTRE,
    GroupElement,
    NilpotentGroup,
    cross_check,
    listed_commutator_status,
)
from src.topology.resring import (
    ResolutionRing,
    heisenberg_component_ring,
    massey_lift_check,
)

logger = structlog.get_logger(__name__)


def _error(code: str, message: str, **details: Any) -> Issue:
    return Issue(severity=Severity.ERROR, code=code, message=message, details=details or None)


def _warning(code: str, message: str, **details: Any) -> Issue:
    return Issue(severity=Severity.WARNING, code=code, message=message, details=details or None)


def _info(code: str, message: str, **details: Any) -> Issue:
    return Issue(severity=Severity.INFO, code=code, message=message, details=details or None)


def _symmetric(numbers: Sequence[int]) -> bool:
    return list(numbers) == list(reversed(numbers))


class OrbifoldVerifier:
    """Run the verification checks for one configuration."""

    def __init__(self, config: OrbifoldConfig, settings: Settings) -> None:
        """
        Parse every piece of notation in the configuration.

        Args:
            config: Mathematical input
            settings: Seed and search sizes

        Raises:
            NotationError: if any form, matrix or Salamon list is malformed
        """
        self.config = config
        self.settings = settings
        self.cdga = Cdga.from_salamon(config.salamon, name="g")
        n = self.cdga.n
        self.phi_v = parse_form(config.g2_form, n)
        self.v_matrix = parse_field_matrix(config.v_matrix)
        self.massey_forms = [self.cdga.parse(text) for text in config.massey.classes]
        self.massey_listed_middle = self.cdga.parse(config.massey.listed_middle)
        self.massey_expected = self.cdga.parse(config.massey.expected_representative)
        listed = config.cohomology
        self.h1 = [self.cdga.parse(t) for t in listed.h1]
        self.h2 = [self.cdga.parse(t) for t in listed.h2]
        self.h3 = [self.cdga.parse(t) for t in listed.h3]
        self.h3_rejected = [self.cdga.parse(t) for t in listed.h3_rejected]
        self.b3 = [self.cdga.parse(t) for t in listed.b3]
        self.b3_listed_sign = self.cdga.parse(listed.b3_listed_sign)
        self.z2 = [self.cdga.parse(t) for t in listed.z2]
        resolution = config.resolution
        labels = resolution.component_labels
        self.component_fibre = parse_form(resolution.fibre_form, len(labels), labels)
        self.component_massey = [
            parse_form(t, len(labels), labels) for t in resolution.component_massey
        ]
        self.component_massey_expected = parse_form(
            resolution.component_massey_representative, len(labels), labels
        )
        self.lift_left = self.cdga.parse(resolution.lift_left)
        self.lift_target = self.cdga.parse(resolution.lift_target)
        self.beta_span = [self.cdga.parse(t) for t in resolution.beta_span]

    # shared objects, built on first use

    @cached_property
    def full_complex(self) -> CochainComplex:
        return CochainComplex(self.cdga)

    @cached_property
    def involution(self) -> Involution:
        return involution_from_signs(self.cdga, self.config.involution_signs)

    @cached_property
    def invariant(self) -> CochainComplex:
        return CochainComplex(invariant_subcomplex(self.cdga, self.involution))

    @cached_property
    def phi(self) -> Form:
        return change_of_basis(self.phi_v, self.v_matrix)

    @cached_property
    def group(self) -> NilpotentGroup:
        scaling = [Fraction(s) for s in self.config.u_scaling]
        return NilpotentGroup(LieAlgebraData.from_cdga(self.cdga), scaling)

    @cached_property
    def component(self) -> CochainComplex:
        labels = self.config.resolution.component_labels
        return CochainComplex(heisenberg_component_ring(self.invariant.cdga, labels))

    @cached_property
    def resolution(self) -> ResolutionRing:
        return ResolutionRing(
            self.invariant,
            self.component,
            self.component_fibre,
            components=self.config.resolution.components,
            genus=self.config.resolution.fibre_genus,
        )

    def _text(self, form: Form) -> str:
        return self.cdga.format(form)

    def _classes(self, complex_: CochainComplex, forms: Sequence[Form]) -> List[CohomologyClass]:
        return [class_of(complex_, form) for form in forms]

    # running

    def checks(self) -> List[Tuple[str, str, Callable[[], CheckResult]]]:
        """(name, description, method) for every check, in run order."""
        return [
            ("lie-algebra", "d^2 = 0 and the Jacobi identity", self.check_lie_algebra),
            ("invariant-cohomology", "Betti numbers and bases of the invariant complex", self.check_invariant_cohomology),
            ("non-formality-spaces", "boundaries B^3 and cocycles Z^2", self.check_non_formality_spaces),
            ("g2-form", "closed G2 form invariant under the involution", self.check_g2_form),
            ("g2-involution", "eigenspaces and restricted volume form", self.check_g2_involution),
            ("massey-orbifold", "non-trivial triple Massey product on the quotient", self.check_massey_orbifold),
            ("nilgroup", "lattice commutators and closure, fundamental domain, j as an automorphism", self.check_nilgroup),
            ("closed-formula", "listed product formula against the series", self.check_closed_formula),
            ("isotropy", "components of the fixed locus and grid scan", self.check_isotropy),
            ("component-cohomology", "fixed-locus component ring and its Poincare dual", self.check_component),
            ("resolution-ring", "Betti numbers and product table of the resolution", self.check_resolution_ring),
            ("massey-lift", "Massey obstruction on the resolution", self.check_massey_lift),
            ("duality", "Poincare symmetry of Betti numbers", self.check_duality),
        ]

    def names(self) -> List[str]:
        """Check names in run order."""
        return [name for name, _, _ in self.checks()]

    def run_check(self, name: str) -> CheckResult:
        """
        Run one check by name.

        Args:
            name: One of :meth:`names`

        Returns:
            The CheckResult; exceptions inside the check become an EXCEPTION issue

        Raises:
            KeyError: If no check has that name
        """
        for check_name, description, method in self.checks():
            if check_name == name:
                return self._guarded(check_name, description, method)
        raise KeyError(f"unknown check {name!r}")

    def _guarded(self, name: str, description: str, method: Callable[[], CheckResult]) -> CheckResult:
        started = time.perf_counter()
        try:
            result = method()
        except (ValueError, ArithmeticError, KeyError) as exc:
            result = CheckResult.from_issues(
                name,
                description,
                {},
                [_error("EXCEPTION", str(exc), type=type(exc).__name__)],
            )
        result.description = description
        logger.info(
            "check_finished",
            check=name,
            status=result.status.value,
            elapsed=round(time.perf_counter() - started, 3),
        )
        return result

    def run(self, only: Optional[Sequence[str]] = None) -> VerificationReport:
        """
        Run the selected checks in order.

        Args:
            only: Check names to run; every check when None

        Returns:
            VerificationReport, passed when every selected check passed
        """
        selected = [c for c in self.checks() if only is None or c[0] in only]
        results = [self._guarded(name, description, method) for name, description, method in selected]
        return VerificationReport(
            version=__version__,
            seed=self.settings.seed,
            passed=all(r.passed for r in results),
            checks=results,
        )

    # checks

    def check_lie_algebra(self) -> CheckResult:
        """d^2 = 0 on generators and the Jacobi identity on basis triples."""
        issues: List[Issue] = []
        witness = check_d_squared(self.cdga)
        if witness is not None:
            k, value = witness
            issues.append(
                _error("D_SQUARED", f"d^2 e{self.cdga.labels[k - 1]} = {self._text(value)}")
            )
        triple = check_jacobi(LieAlgebraData.from_cdga(self.cdga))
        if triple is not None:
            issues.append(_error("JACOBI", "Jacobi identity fails", triple=list(triple)))
        details: Dict[str, Any] = {
            "salamon": self.cdga.to_salamon(),
            "dimension": self.cdga.n,
            "d_squared_zero": witness is None,
        }
        if witness is None:
            details["betti"] = betti(self.full_complex)
        return CheckResult.from_issues("lie-algebra", "", details, issues)

    def check_invariant_cohomology(self) -> CheckResult:
        """Betti numbers of the invariant complex and the listed bases of H^1..H^3."""
        issues: List[Issue] = []
        complex_ = self.invariant
        numbers = betti(complex_)
        expected = self.config.expected.betti_invariant
        if numbers != expected:
            issues.append(_error("BETTI", "invariant Betti numbers differ", computed=numbers, expected=expected))

        for degree, listed in ((1, self.h1), (2, self.h2)):
            computed = cohomology_basis(complex_, degree)
            listed = self._classes(complex_, listed)
            if not same_span([c.coordinates for c in computed], [c.coordinates for c in listed]):
                issues.append(_error("BASIS", f"listed H^{degree} representatives span a different space"))

        listed_h3 = self._classes(complex_, self.h3)
        vectors = [list(c.coordinates) for c in listed_h3]
        independent = len(independent_subset(vectors)) == len(vectors)
        if not independent:
            issues.append(_error("H3_DEPENDENT", "listed H^3 representatives are dependent"))
        for form in self.h3_rejected:
            closed = complex_.is_closed(form)
            invariant = self.invariant.cdga.contains(form)
            if closed and invariant:
                issues.append(_info("H3_EXTRA_ACCEPTED", f"{self._text(form)} is an invariant cocycle"))
            else:
                issues.append(
                    _info(
                        "H3_REPRESENTATIVE_REJECTED",
                        f"{self._text(form)} is not an invariant cocycle",
                        closed=closed,
                        invariant=invariant,
                    )
                )
        details = {
            "betti": numbers,
            "h1": [c.to_text() for c in cohomology_basis(complex_, 1)],
            "h2": [c.to_text() for c in cohomology_basis(complex_, 2)],
            "listed_h3_independent": independent,
        }
        return CheckResult.from_issues("invariant-cohomology", "", details, issues)

    def check_non_formality_spaces(self) -> CheckResult:
        """Listed spanning sets of B^3 and Z^2 against the computed spaces."""
        issues: List[Issue] = []
        complex_ = self.invariant
        boundaries = complex_.boundaries(3)
        cycles = complex_.cycles(2)
        expected = self.config.expected
        if len(boundaries) != expected.dim_b3:
            issues.append(_error("DIM_B3", f"dim B^3 = {len(boundaries)}, expected {expected.dim_b3}"))
        if len(cycles) != expected.dim_z2:
            issues.append(_error("DIM_Z2", f"dim Z^2 = {len(cycles)}, expected {expected.dim_z2}"))

        def vectors(forms: Sequence[Form], k: int) -> List[List[FieldElement]]:
            return [complex_.vector_of(f, k) for f in forms]

        if not same_span(vectors(boundaries, 3), vectors(self.b3, 3)):
            issues.append(_error("B3_SPAN", "listed exact 3-forms span a different space"))
        if not same_span(vectors(cycles, 2), vectors(self.z2, 2)):
            issues.append(_error("Z2_SPAN", "listed closed 2-forms span a different space"))

        listed = is_exact(complex_, self.b3_listed_sign, 3)
        if not listed.exact:
            issues.append(
                _info(
                    "B3_SIGN",
                    f"{self._text(self.b3_listed_sign)} is {listed.status.value}",
                )
            )
        details = {
            "dim_b3": len(boundaries),
            "dim_z2": len(cycles),
            "b3": [self._text(f) for f in boundaries],
            "z2": [self._text(f) for f in cycles],
        }
        return CheckResult.from_issues("non-formality-spaces", "", details, issues)

    def check_g2_form(self) -> CheckResult:
        """Definiteness, closedness and j-invariance of the configured 3-form."""
        issues: List[Issue] = []
        standard = gram_from_threeform(standard_g2_form())
        six = FieldElement(6)
        identity_ok = all(
            standard.b[i][j] == (six if i == j else 0) for i in range(7) for j in range(7)
        )
        if not identity_ok:
            issues.append(_error("STANDARD_GRAM", "standard form does not give 6 * identity"))

        phi = self.phi
        report = gram_from_threeform(phi)
        if not report.definite:
            issues.append(_error("NOT_G2", "form is not definite"))
        d_phi = self.cdga.d(phi)
        if d_phi:
            issues.append(_error("NOT_CLOSED", f"d(phi) = {self._text(d_phi)}"))
        involution = Involution(self.cdga, self.config.involution_signs)
        if involution.apply(phi) != phi:
            issues.append(_error("NOT_INVARIANT", "j*(phi) != phi"))
        details = {
            "phi": self._text(phi),
            "definite": report.definite,
            "sign": report.sign,
            "det_b": str(report.determinant),
            "scale_ninth": str(report.scale_ninth),
            "closed": not d_phi,
        }
        for note in report.notes:
            issues.append(_info("G2_NOTE", note))
        return CheckResult.from_issues("g2-form", "", details, issues)

    def check_g2_involution(self) -> CheckResult:
        """Eigenspaces of j and the restriction of φ to the fixed 3-space."""
        report = check_g2_involution(self.phi, self.config.involution_signs)
        details = {
            "eigenspace_dimensions": [report.plus_dimension, report.minus_dimension],
            "fixed_generators": report.plus_generators,
            "restricted_coefficient": str(report.restricted_coefficient),
            "volume_sign": report.volume_sign,
        }
        return CheckResult.from_issues("g2-involution", "", details, [])

    def check_massey_orbifold(self) -> CheckResult:
        """Triple Massey product on the invariant complex, stable under representative changes."""
        issues: List[Issue] = []
        complex_ = self.invariant
        x1, x2, x3 = self._classes(complex_, self.massey_forms)
        result = massey_triple(x1, x2, x3)
        expected = class_of(complex_, self.massey_expected)
        if not result.defined:
            issues.append(_error("UNDEFINED", f"Massey product undefined: {result.failed_premise} != 0"))
        elif result.trivial:
            issues.append(_error("TRIVIAL", "Massey product contains zero"))
        elif not result.contains(expected):
            issues.append(_error("REPRESENTATIVE", f"{expected.to_text()} is not in the Massey set"))

        rng = random.Random(self.settings.seed)
        rounds = 0
        if result.defined:
            one_forms = complex_.basis(1)
            for _ in range(self.settings.massey_rounds):
                shift = Form(complex_.n, {m: rng.randint(-3, 3) for m in one_forms})
                moved = class_of(complex_, x2.representative + self.invariant.cdga.d(shift), 2)
                other = massey_triple(x1, moved, x3)
                rounds += 1
                if not other.defined or other.trivial or not other.contains(expected):
                    issues.append(
                        _error(
                            "REPRESENTATIVE_DEPENDENCE",
                            "Massey verdict changes with the middle representative",
                            shift=self._text(shift),
                        )
                    )
                    break

        literal = class_of(complex_, self.massey_listed_middle)
        literal_result = massey_triple(x1, literal, x3)
        if not literal_result.defined:
            issues.append(
                _info(
                    "LITERAL_UNDEFINED",
                    f"with middle class [{self._text(self.massey_listed_middle)}] "
                    f"the product is undefined ({literal_result.failed_premise} != 0)",
                )
            )
        report = MasseyReport(
            classes=[c.to_text() for c in (x1, x2, x3)],
            degree=result.degree,
            defined=result.defined,
            failed_premise=result.failed_premise,
            defining_system=(
                [self._text(a) for a in result.defining_system] if result.defining_system else None
            ),
            representative=result.representative.to_text() if result.representative else None,
            indeterminacy=[
                class_from_coordinates(complex_, result.degree, v).to_text()
                for v in result.indeterminacy
            ],
            trivial=result.trivial,
        )
        details: Dict[str, Any] = report.model_dump(mode="json")
        details["randomised_rounds"] = rounds
        return CheckResult.from_issues("massey-orbifold", "", details, issues)

    def check_nilgroup(self) -> CheckResult:
        """Commutators, lattice closure, fundamental domain and j as a group automorphism."""
        issues: List[Issue] = []
        group = self.group
        n = group.dimension
        table = group.commutator_table()
        status = listed_commutator_status(table, centre=n)
        for pair, verdict in status.items():
            if verdict == "mismatch":
                issues.append(
                    _error("COMMUTATOR", f"commutator of u{pair[0]}, u{pair[1]} is {table[pair]}")
                )
            elif verdict == "modulo-centre":
                issues.append(
                    _info(
                        "COMMUTATOR_CENTRE",
                        f"commutator of u{pair[0]}, u{pair[1]} is {table[pair]}; listed relation holds modulo u{n}",
                    )
                )

        closure = group.lattice_closure_check(
            self.settings.lattice_trials, self.settings.seed, self.settings.lattice_bound
        )
        if not closure.closed:
            assert closure.witness is not None
            x, y, z = closure.witness
            issues.append(_error("LATTICE", f"{x} * {y} = {z} is not integral"))
        symbolic = group.symbolic_integrality()
        if symbolic is not None:
            coordinate, expr = symbolic
            issues.append(_error("LATTICE_SYMBOLIC", f"coordinate {coordinate}: {expr}"))

        unscaled = NilpotentGroup(LieAlgebraData.from_cdga(self.cdga), UNSCALED_CENTRE)
        unscaled_closed = unscaled.symbolic_integrality() is None

        rng = random.Random(self.settings.seed)
        reduced = 0
        for _ in range(self.settings.reduction_trials):
            x = GroupElement([Fraction(rng.randint(-40, 40), rng.randint(1, 8)) for _ in range(n)])
            gamma, d = group.reduce_to_fundamental_domain(x)
            if not all(0 <= c < 1 for c in d.coords) or group.bch_product(gamma, d) != x:
                issues.append(_error("FUNDAMENTAL_DOMAIN", f"reduction of {x} failed", gamma=str(gamma), d=str(d)))
                break
            reduced += 1

        signs = self.config.involution_signs
        involution_pairs = 0
        for _ in range(self.settings.involution_pairs):
            x, y = (
                GroupElement([Fraction(rng.randint(-12, 12), rng.randint(1, 6)) for _ in range(n)])
                for _ in range(2)
            )
            product = group.apply_involution(group.bch_product(x, y), signs)
            jx, jy = group.apply_involution(x, signs), group.apply_involution(y, signs)
            images = group.bch_product(jx, jy)
            if product != images:
                issues.append(_error("INVOLUTION_HOMOMORPHISM", f"j({x} * {y}) != j({x}) * j({y})"))
                break
            if group.apply_involution(jx, signs) != x:
                issues.append(_error("INVOLUTION_ORDER", f"j(j({x})) != {x}"))
                break
            involution_pairs += 1
        details = {
            "commutators": {f"{i},{j}": str(table[(i, j)]) for (i, j) in sorted(table) if any(table[(i, j)].coords)},
            "lattice_trials": closure.trials,
            "lattice_closed": closure.closed,
            "symbolic_integral": symbolic is None,
            "unscaled_centre_closed": unscaled_closed,
            "reduced_points": reduced,
            "involution_pairs": involution_pairs,
        }
        return CheckResult.from_issues("nilgroup", "", details, issues)

    def check_closed_formula(self) -> CheckResult:
        """Listed closed product formula against the series, on basis and random pairs."""
        issues: List[Issue] = []
        group = self.group
        n = group.dimension
        rng = random.Random(self.settings.seed)
        samples = [(GroupElement.basis(n, i), GroupElement.basis(n, j)) for i in range(1, n + 1) for j in range(1, n + 1)]
        for _ in range(200):
            samples.append(
                (
                    GroupElement([rng.randint(-3, 3) for _ in range(n)]),
                    GroupElement([rng.randint(-3, 3) for _ in range(n)]),
                )
            )
        mismatched = 0
        coordinates = set()
        first: Optional[Dict[str, str]] = None
        for x, y in samples:
            found = cross_check(group, x, y)
            if found:
                mismatched += 1
                coordinates.update(item.coordinate for item in found)
                if first is None:
                    first = {
                        "x": str(x),
                        "y": str(y),
                        "coordinate": str(found[0].coordinate),
                        "series": str(found[0].oracle),
                        "listed": str(found[0].listed),
                    }
        non_central = sorted(c for c in coordinates if c != n)
        if non_central:
            issues.append(_error("FORMULA_NON_CENTRAL", "listed formula differs below the centre", coordinates=non_central))
        if mismatched:
            issues.append(
                _warning(
                    "FORMULA_CENTRAL",
                    f"listed central coordinate disagrees on {mismatched} of {len(samples)} pairs",
                    first=first,
                )
            )
        details = {"pairs": len(samples), "disagreements": mismatched, "coordinates": sorted(coordinates)}
        return CheckResult.from_issues("closed-formula", "", details, issues)

    def check_isotropy(self) -> CheckResult:
        """Sixteen isotropy components, stable under the fixed subgroup, and the grid scan."""
        issues: List[Issue] = []
        group = self.group
        signs = self.config.involution_signs
        box = self.settings.isotropy_box
        try:
            components = group.enumerate_isotropy_components(signs, box)
        except ValueError as exc:
            components = []
            issues.append(_error("COMPONENT", str(exc)))
        expected = self.config.expected.isotropy_components
        if components and len(components) != expected:
            issues.append(_error("COMPONENT_COUNT", f"{len(components)} components, expected {expected}"))

        # h on the fixed axes, so ε * h has the same witness as ε
        rng = random.Random(self.settings.seed)
        sample = GroupElement(
            [
                Fraction(rng.randint(-12, 12), rng.randint(1, 6)) if s == 1 else Fraction(0)
                for s in signs
            ]
        )
        try:
            sampled = group.enumerate_isotropy_components(signs, box, sample=sample)
        except ValueError as exc:
            sampled = []
            issues.append(_error("COMPONENT_SAMPLE", f"with h = {sample}: {exc}"))
        witnesses = [c.witness for c in components]
        sample_agrees = bool(sampled) and [c.witness for c in sampled] == witnesses
        if sampled and not sample_agrees:
            issues.append(
                _error("COMPONENT_SAMPLE", f"witnesses change when ε is multiplied by h = {sample}")
            )
        grid = group.isotropy_grid(signs, box, self.settings.grid_steps)
        for point in grid.mismatches[:5]:
            issues.append(_error("GRID", f"isotropy at {point} contradicts the half-integer rule"))
        details = {
            "components": [
                {"epsilon": str(c.epsilon), "witness": str(c.witness)} for c in components
            ],
            "sample": str(sample),
            "sample_agrees": sample_agrees,
            "grid_points": grid.points,
            "grid_isotropic": [str(p) for p in grid.isotropic],
            "grid_mismatches": len(grid.mismatches),
        }
        return CheckResult.from_issues("isotropy", "", details, issues)

    def check_component(self) -> CheckResult:
        """Fixed-locus component: Betti numbers, bracket factor, PD[L] pairing, Massey product."""
        issues: List[Issue] = []
        component = self.component
        numbers = betti(component)
        expected = self.config.expected.betti_component
        if numbers != expected:
            issues.append(_error("BETTI", "component Betti numbers differ", computed=numbers, expected=expected))

        a, b, c = self.config.resolution.component_labels
        coefficient = LieAlgebraData.from_cdga(self.cdga).bracket_basis(a, b).get(c, ZERO)
        if coefficient != 1:
            issues.append(
                _info("BRACKET_FACTOR", f"[e{a},e{b}] = {coefficient}*e{c}, listed as e{c}", computed=str(coefficient))
            )

        ring = self.resolution
        pd = ring.poincare_dual_of_component()
        for alpha in cohomology_basis(self.invariant, 3):
            left = ring.integrate_orbifold(pd.representative ^ alpha.representative)
            right = ring.integrate_component(ring.restriction.apply(alpha.representative))
            if left != right:
                issues.append(_error("PD_PAIRING", f"pairing with {alpha.to_text()} gives {left} != {right}"))

        x1, x2, x3 = self._classes(component, self.component_massey)
        result = massey_triple(x1, x2, x3)
        expected_cls = class_of(component, self.component_massey_expected)
        if not result.defined or result.trivial or not result.contains(expected_cls):
            issues.append(_error("COMPONENT_MASSEY", "component Massey product is not the expected class"))
        details = {
            "salamon": component.cdga.to_salamon(),
            "labels": list(component.cdga.labels),
            "betti": numbers,
            "poincare_dual": self._text(pd.representative),
            "massey_representative": result.representative.to_text() if result.representative else None,
            "massey_indeterminacy_dimension": len(result.indeterminacy),
        }
        return CheckResult.from_issues("component-cohomology", "", details, issues)

    def check_resolution_ring(self) -> CheckResult:
        """Betti numbers of the resolution, tau relations and the ring audits."""
        issues: List[Issue] = []
        ring = self.resolution
        numbers = ring.betti()
        expected = self.config.expected.betti_resolution
        if numbers != expected:
            issues.append(_error("BETTI", "resolution Betti numbers differ", computed=numbers, expected=expected))

        pd = ring.orbifold.vector(ring.poincare_dual_of_component())
        minus_two_pd = ring.rho_star({k: v * -2 for k, v in pd.items()})
        for i in range(1, ring.components + 1):
            square = ring.multiply(ring.tau(i), ring.tau(i))
            if square != minus_two_pd:
                issues.append(_error("TAU_SQUARE", f"tau{i}^2 != -2 PD[L]"))
                break
        if ring.components > 1 and ring.multiply(ring.tau(1), ring.tau(2)):
            issues.append(_error("TAU_ORTHOGONAL", "tau1 * tau2 != 0"))

        orbifold = ring.orbifold.algebra()
        failures = [
            (a, b)
            for a in range(orbifold.dimension)
            for b in range(orbifold.dimension)
            if ring.multiply(ring.rho_star({a: FieldElement(1)}), ring.rho_star({b: FieldElement(1)}))
            != ring.rho_star(orbifold.product(a, b))
        ]
        if failures:
            a, b = failures[0]
            issues.append(
                _error("RHO_MULTIPLICATIVE", f"rho* fails on {orbifold.names[a]}, {orbifold.names[b]}")
            )

        associativity = ring.audit_associativity()
        if associativity is not None:
            names = [ring.names[i] for i in associativity]
            issues.append(_error("ASSOCIATIVITY", "product table is not associative", triple=names))
        commutativity = ring.audit_graded_commutativity()
        if commutativity is not None:
            names = [ring.names[i] for i in commutativity]
            issues.append(_error("COMMUTATIVITY", "product table is not graded commutative", pair=names))
        details = {
            "betti": numbers,
            "dimension": ring.dimension,
            "tau_square": self._text(ring.orbifold.class_of_vector(pd, 4).representative * -2),
        }
        return CheckResult.from_issues("resolution-ring", "", details, issues)

    def check_massey_lift(self) -> CheckResult:
        """Massey obstruction on the orbifold and whether it survives on the resolution."""
        issues: List[Issue] = []
        verdict = massey_lift_check(self.resolution, self.lift_target, self.lift_left, self.beta_span)
        if not verdict.persists_on_orbifold:
            issues.append(_error("ORBIFOLD", "target lies in the indeterminacy on the quotient"))
        if not verdict.persists_on_resolution:
            issues.append(
                _error(
                    "RESOLUTION",
                    "target lies in the enlarged indeterminacy on the resolution",
                    counterexample=[str(c) for c in verdict.counterexample or []],
                )
            )
        if not verdict.exceptional_classes_independent:
            issues.append(_error("EXCEPTIONAL", "exceptional classes meet the pulled-back sector"))
        details = {
            "target": self._text(self.lift_target),
            "left": self._text(self.lift_left),
            "beta_span": [self._text(b) for b in self.beta_span],
            "persists_on_orbifold": verdict.persists_on_orbifold,
            "persists_on_resolution": verdict.persists_on_resolution,
        }
        return CheckResult.from_issues("massey-lift", "", details, issues)

    def check_duality(self) -> CheckResult:
        """Poincare symmetry of every Betti sequence."""
        issues: List[Issue] = []
        table = {
            "full": betti(self.full_complex),
            "invariant": betti(self.invariant),
            "resolution": self.resolution.betti(),
        }
        for name, numbers in table.items():
            if not _symmetric(numbers):
                issues.append(_error("DUALITY", f"{name} Betti numbers are not symmetric", betti=numbers))
        return CheckResult.from_issues("duality", "", table, issues)
