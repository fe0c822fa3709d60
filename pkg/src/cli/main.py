"""
nilg2 command line.

    nilg2 [--input orbifold.yaml] [--format text|json] [--seed N] COMMAND ...

Exit codes: 0 every check passed, 1 a check failed, 2 the input could not be
read (notation errors, invalid configuration, usage errors).
"""

import functools
from dataclasses import dataclass
from pathlib import Path
from typing import Any, Callable, List, NoReturn, Optional, TypeVar, Union, cast

import click
import structlog
import yaml
from pydantic import ValidationError

from src import __version__
from src.algebra.cdga import (
    Cdga,
    LieAlgebraData,
    NotAChainMapError,
    check_d_squared,
    check_jacobi,
)
from src.algebra.cohomology import CochainComplex, betti, cohomology_basis
from src.algebra.notation import NotationError, parse_form
from src.config import OrbifoldConfig, Settings, load_orbifold_config, load_settings
from src.core.log import configure_logging
from src.core.models import (
    BettiReport,
    CheckResult,
    ClassListing,
    GroupElementReport,
    Issue,
    Severity,
    VerificationReport,
)
from src.geometry.g2check import G2FormError, gram_from_threeform
from src.geometry.nilgroup import GroupElement, cross_check
from src.verification.validator import OrbifoldVerifier

logger = structlog.get_logger(__name__)

EXIT_OK = 0
EXIT_FAILED = 1
EXIT_INPUT = 2

F = TypeVar("F", bound=Callable[..., Any])
Report = Union[CheckResult, VerificationReport]


@dataclass
class CliState:
    """Options shared by every command."""

    config: OrbifoldConfig
    settings: Settings
    fmt: str
    _verifier: Optional[OrbifoldVerifier] = None

    @property
    def verifier(self) -> OrbifoldVerifier:
        if self._verifier is None:
            self._verifier = OrbifoldVerifier(self.config, self.settings)
        return self._verifier

    def update_settings(self, **values: Any) -> None:
        self.settings = self.settings.model_copy(update=values)
        self._verifier = None


def input_errors(func: F) -> F:
    """Turn unreadable input into exit code 2 with a message on stderr."""

    @functools.wraps(func)
    def wrapper(*args: Any, **kwargs: Any) -> Any:
        try:
            return func(*args, **kwargs)
        except NotationError as exc:
            click.echo(f"error: {exc}", err=True)
        except (ValidationError, yaml.YAMLError, OSError) as exc:
            click.echo(f"error: invalid configuration: {exc}", err=True)
        except NotAChainMapError as exc:
            click.echo(f"error: {exc}", err=True)
            raise SystemExit(EXIT_FAILED)
        except ValueError as exc:
            click.echo(f"error: {exc}", err=True)
        raise SystemExit(EXIT_INPUT)

    return cast(F, wrapper)


def _render_value(value: Any, indent: int) -> List[str]:
    pad = "  " * indent
    if isinstance(value, dict):
        lines = []
        for key, item in value.items():
            if isinstance(item, (dict, list)) and item:
                lines.append(f"{pad}{key}:")
                lines.extend(_render_value(item, indent + 1))
            else:
                lines.append(f"{pad}{key}: {item}")
        return lines
    if isinstance(value, list):
        if all(not isinstance(item, (dict, list)) for item in value):
            return [f"{pad}{', '.join(str(item) for item in value)}"]
        lines = []
        for item in value:
            lines.extend(_render_value(item, indent))
        return lines
    return [f"{pad}{value}"]


def _render_check(result: CheckResult) -> List[str]:
    mark = "PASS" if result.passed else "FAIL"
    lines = [f"[{mark}] {result.name}: {result.description}".rstrip(": ")]
    lines.extend(_render_value(result.details, 1))
    for issue in result.issues:
        lines.append(f"  {issue.severity.value} {issue.code}: {issue.message}")
    return lines


def emit(state: CliState, report: Report) -> NoReturn:
    """Print the report and exit with its verdict."""
    if state.fmt == "json":
        click.echo(report.model_dump_json(indent=2))
    elif isinstance(report, VerificationReport):
        for check in report.checks:
            click.echo("\n".join(_render_check(check)))
        failed = report.failed_checks()
        summary = "all checks passed" if not failed else f"failed: {', '.join(failed)}"
        click.echo(f"{len(report.checks)} checks, {summary}")
    else:
        click.echo("\n".join(_render_check(report)))
    raise SystemExit(EXIT_OK if report.passed else EXIT_FAILED)


def _result(name: str, details: Any, issues: Optional[List[Issue]] = None) -> CheckResult:
    return CheckResult.from_issues(name, "", details, issues or [])


@click.group()
@click.option("--input", "input_path", type=click.Path(path_type=Path), help="Orbifold model configuration YAML.")
@click.option("--settings", "settings_path", type=click.Path(path_type=Path), help="Settings YAML.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text", show_default=True)
@click.option("--seed", type=int, default=None, help="Seed for randomised checks.")
@click.option("--log-level", default=None, help="DEBUG, INFO, WARNING or ERROR.")
@click.version_option(__version__, prog_name="nilg2")
@click.pass_context
def cli(
    ctx: click.Context,
    input_path: Optional[Path],
    settings_path: Optional[Path],
    fmt: str,
    seed: Optional[int],
    log_level: Optional[str],
) -> None:
    """Exact verification of a G2 nilmanifold, its quotient and resolution."""
    try:
        settings = load_settings(settings_path, seed=seed, log_level=log_level)
        config = load_orbifold_config(input_path)
        configure_logging(settings.log_level, settings.log_format)
    except (ValidationError, yaml.YAMLError, OSError, ValueError) as exc:
        click.echo(f"error: invalid configuration: {exc}", err=True)
        raise SystemExit(EXIT_INPUT)
    ctx.obj = CliState(config=config, settings=settings, fmt=fmt)


# lie


@cli.group()
@click.option("--salamon", default=None, help="Structure equations, e.g. (0,0,12).")
@click.pass_context
def lie(ctx: click.Context, salamon: Optional[str]) -> None:
    """Chevalley-Eilenberg complex of the Lie algebra."""
    ctx.meta["salamon"] = salamon


def _lie_cdga(ctx: click.Context) -> Cdga:
    state: CliState = ctx.obj
    return Cdga.from_salamon(ctx.meta.get("salamon") or state.config.salamon, name="g")


def _d_squared_issues(cdga: Cdga) -> List[Issue]:
    witness = check_d_squared(cdga)
    if witness is None:
        return []
    k, value = witness
    return [
        Issue(
            severity=Severity.ERROR,
            code="D_SQUARED",
            message=f"d^2 e{cdga.labels[k - 1]} = {cdga.format(value)}",
            details={"generator": cdga.labels[k - 1], "value": cdga.format(value)},
        )
    ]


@lie.command("check")
@click.pass_context
@input_errors
def lie_check(ctx: click.Context) -> None:
    """Check d^2 = 0 and the Jacobi identity."""
    cdga = _lie_cdga(ctx)
    issues = _d_squared_issues(cdga)
    triple = check_jacobi(LieAlgebraData.from_cdga(cdga))
    if triple is not None:
        issues.append(
            Issue(
                severity=Severity.ERROR,
                code="JACOBI",
                message=f"Jacobi identity fails on e{triple[0]}, e{triple[1]}, e{triple[2]}",
            )
        )
    emit(ctx.obj, _result("lie-check", {"salamon": cdga.to_salamon(), "dimension": cdga.n}, issues))


@lie.command("betti")
@click.pass_context
@input_errors
def lie_betti(ctx: click.Context) -> None:
    """Betti numbers of the full complex."""
    cdga = _lie_cdga(ctx)
    issues = _d_squared_issues(cdga)
    if issues:
        emit(ctx.obj, _result("lie-betti", {"salamon": cdga.to_salamon()}, issues))
    numbers = betti(CochainComplex(cdga))
    report = BettiReport(
        complex=cdga.to_salamon(),
        betti=numbers,
        euler_characteristic=sum((-1) ** k * b for k, b in enumerate(numbers)),
        poincare_duality=numbers == numbers[::-1],
    )
    emit(ctx.obj, _result("lie-betti", report.model_dump(mode="json")))


def _listings(complex_: CochainComplex, degrees: List[int]) -> List[dict]:
    listings = []
    for k in degrees:
        classes = cohomology_basis(complex_, k)
        listing = ClassListing(
            complex=complex_.name,
            degree=k,
            dimension=len(classes),
            representatives=[c.to_text() for c in classes],
        )
        listings.append(listing.model_dump(mode="json"))
    return listings


@lie.command("basis")
@click.option("--degree", type=int, default=None, help="Only this degree.")
@click.pass_context
@input_errors
def lie_basis(ctx: click.Context, degree: Optional[int]) -> None:
    """Cohomology representatives of the full complex."""
    cdga = _lie_cdga(ctx)
    issues = _d_squared_issues(cdga)
    if issues:
        emit(ctx.obj, _result("lie-basis", {"salamon": cdga.to_salamon()}, issues))
    complex_ = CochainComplex(cdga)
    degrees = [degree] if degree is not None else list(range(cdga.n + 1))
    emit(ctx.obj, _result("lie-basis", {"classes": _listings(complex_, degrees)}))


# invariant / massey


@cli.command()
@click.option("--degree", type=int, default=None, help="Only this degree.")
@click.pass_obj
@input_errors
def invariant(state: CliState, degree: Optional[int]) -> None:
    """Cohomology of the invariant subcomplex, compared with the listed bases."""
    result = state.verifier.run_check("invariant-cohomology")
    complex_ = state.verifier.invariant
    degrees = [degree] if degree is not None else list(range(complex_.n + 1))
    result.details["classes"] = _listings(complex_, degrees)
    emit(state, result)


@cli.command()
@click.pass_obj
@input_errors
def massey(state: CliState) -> None:
    """Triple Massey product on the invariant complex."""
    emit(state, state.verifier.run_check("massey-orbifold"))


# g2


@cli.group()
def g2() -> None:
    """G2 form checks."""


@g2.command("verify")
@click.option(
    "--form",
    "form_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    default=None,
    help="File holding a 3-form on e1..e7 instead of the configured one.",
)
@click.option("--form-text", default=None, help="3-form on e1..e7, given inline.")
@click.pass_obj
@input_errors
def g2_verify(state: CliState, form_path: Optional[Path], form_text: Optional[str]) -> None:
    """Definiteness, closedness and invariance of the G2 form."""
    if form_path is not None and form_text is not None:
        raise click.UsageError("--form and --form-text are mutually exclusive")
    if form_path is not None:
        form_text = form_path.read_text(encoding="utf-8").strip()
    if form_text is None:
        emit(state, state.verifier.run_check("g2-form"))
    phi = parse_form(cast(str, form_text), 7)
    try:
        report = gram_from_threeform(phi)
    except G2FormError as exc:
        raise ValueError(str(exc)) from exc
    issues = []
    if not report.definite:
        issues.append(Issue(severity=Severity.ERROR, code="NOT_G2", message="bilinear form is not definite"))
    details = {
        "phi": phi.to_text(),
        "b": [[str(x) for x in row] for row in report.b],
        "sign": report.sign,
        "scale_ninth": str(report.scale_ninth),
    }
    if report.conformal_factor is not None:
        details["conformal_factor"] = str(report.conformal_factor)
    emit(state, _result("g2-verify", details, issues))


@g2.command("involution")
@click.pass_obj
@input_errors
def g2_involution(state: CliState) -> None:
    """Eigenspaces of the involution and the restricted volume form."""
    emit(state, state.verifier.run_check("g2-involution"))


# nilgroup


@cli.group()
def nilgroup() -> None:
    """Nilpotent group, lattice and fixed locus."""


def _element(text: str, dimension: int) -> GroupElement:
    element = GroupElement.parse(text)
    if element.dimension != dimension:
        raise ValueError(f"expected {dimension} coordinates, got {element.dimension}")
    return element


def _element_report(element: GroupElement) -> dict:
    return GroupElementReport(
        coordinates=[str(c) for c in element.coords], integral=element.is_integral()
    ).model_dump(mode="json")


@nilgroup.command("product")
@click.argument("x")
@click.argument("y")
@click.pass_obj
@input_errors
def nilgroup_product(state: CliState, x: str, y: str) -> None:
    """Product of two points given as comma separated rationals."""
    group = state.verifier.group
    left = _element(x, group.dimension)
    right = _element(y, group.dimension)
    product = group.bch_product(left, right)
    discrepancies = cross_check(group, left, right)
    issues = [
        Issue(
            severity=Severity.WARNING,
            code="FORMULA_MISMATCH",
            message=f"listed formula gives {d.listed} in coordinate {d.coordinate}",
        )
        for d in discrepancies
    ]
    emit(state, _result("nilgroup-product", {"product": _element_report(product)}, issues))


@nilgroup.command("reduce")
@click.argument("x")
@click.pass_obj
@input_errors
def nilgroup_reduce(state: CliState, x: str) -> None:
    """Write x = gamma * d with d in the fundamental domain."""
    group = state.verifier.group
    point = _element(x, group.dimension)
    gamma, d = group.reduce_to_fundamental_domain(point)
    issues = []
    if group.bch_product(gamma, d) != point:
        issues.append(Issue(severity=Severity.ERROR, code="REDUCTION", message="gamma * d != x"))
    details = {"gamma": _element_report(gamma), "d": _element_report(d)}
    emit(state, _result("nilgroup-reduce", details, issues))


@nilgroup.command("fixed")
@click.option("--grid", type=int, default=None, help="Grid steps per axis.")
@click.option("--box", type=int, default=None, help="Bound on witness coordinates.")
@click.pass_obj
@input_errors
def nilgroup_fixed(state: CliState, grid: Optional[int], box: Optional[int]) -> None:
    """Components of the fixed locus and the grid scan."""
    updates = {k: v for k, v in (("grid_steps", grid), ("isotropy_box", box)) if v is not None}
    if updates:
        state.update_settings(**updates)
    emit(state, state.verifier.run_check("isotropy"))


@nilgroup.command("commutators")
@click.pass_obj
@input_errors
def nilgroup_commutators(state: CliState) -> None:
    """Commutators of the lattice generators, lattice closure, reduction."""
    emit(state, state.verifier.run_check("nilgroup"))


# resolve


@cli.group()
def resolve() -> None:
    """Cohomology ring of the resolution."""


@resolve.command("betti")
@click.pass_obj
@input_errors
def resolve_betti(state: CliState) -> None:
    """Betti numbers of the resolution."""
    ring = state.verifier.resolution
    numbers = ring.betti()
    expected = state.config.expected.betti_resolution
    issues = []
    if numbers != expected:
        issues.append(
            Issue(severity=Severity.ERROR, code="BETTI", message=f"expected {expected}, got {numbers}")
        )
    report = BettiReport(
        complex="resolution",
        betti=numbers,
        euler_characteristic=sum((-1) ** k * b for k, b in enumerate(numbers)),
        poincare_duality=numbers == numbers[::-1],
    )
    emit(state, _result("resolve-betti", report.model_dump(mode="json"), issues))


@resolve.command("ring")
@click.option("--audit", is_flag=True, help="Audit associativity of the full product table.")
@click.pass_obj
@input_errors
def resolve_ring(state: CliState, audit: bool) -> None:
    """Product table summary; with --audit the full ring checks."""
    if audit:
        emit(state, state.verifier.run_check("resolution-ring"))
    ring = state.verifier.resolution
    details = {
        "dimension": ring.dimension,
        "graded_dimensions": ring.betti(),
        "nonzero_products": len(ring.table),
        "poincare_dual": ring.orbifold.complex.cdga.format(
            ring.poincare_dual_of_component().representative
        ),
    }
    emit(state, _result("resolve-ring", details))


@resolve.command("massey-lift")
@click.pass_obj
@input_errors
def resolve_massey_lift(state: CliState) -> None:
    """Whether the Massey obstruction survives on the resolution."""
    emit(state, state.verifier.run_check("massey-lift"))


# everything


@cli.command("verify-all")
@click.option("--only", multiple=True, help="Run only the named checks.")
@click.pass_obj
@input_errors
def verify_all(state: CliState, only: List[str]) -> None:
    """Run every check and report per-check verdicts."""
    verifier = state.verifier
    unknown = [name for name in only if name not in verifier.names()]
    if unknown:
        raise ValueError(f"unknown checks: {', '.join(unknown)}")
    emit(state, verifier.run(list(only) or None))


def main() -> None:
    cli(prog_name="nilg2")


if __name__ == "__main__":
    main()
