"""
Report models.

Every command produces one of these; the JSON form is what ``--format json``
prints. Exact values (field elements, forms, classes) are carried as their
canonical text so that reports are deterministic and readable.
"""

from enum import Enum
from typing import Any, Dict, List, Optional

from pydantic import BaseModel, Field


class Severity(str, Enum):
    """How much an issue matters for the verdict."""

    ERROR = "error"
    WARNING = "warning"
    INFO = "info"


class CheckStatus(str, Enum):
    """Verdict of a single check."""

    PASSED = "passed"
    FAILED = "failed"


class Issue(BaseModel):
    """Finding attached to a check."""

    severity: Severity
    code: str
    message: str
    details: Optional[Dict[str, Any]] = None


class CheckResult(BaseModel):
    """Outcome of one named check."""

    name: str
    description: str = ""
    status: CheckStatus
    details: Dict[str, Any] = Field(default_factory=dict)
    issues: List[Issue] = Field(default_factory=list)

    @property
    def passed(self) -> bool:
        """True unless an error-severity issue is attached."""
        return self.status == CheckStatus.PASSED

    @classmethod
    def from_issues(
        cls,
        name: str,
        description: str,
        details: Dict[str, Any],
        issues: List[Issue],
    ) -> "CheckResult":
        """
        Build a result whose status follows the issues.

        Args:
            name: Check name
            description: One-line description
            details: Check-specific data, JSON compatible
            issues: Findings; warnings and infos do not fail the check

        Returns:
            CheckResult, failed exactly when an error-severity issue is present
        """
        failed = any(issue.severity == Severity.ERROR for issue in issues)
        return cls(
            name=name,
            description=description,
            status=CheckStatus.FAILED if failed else CheckStatus.PASSED,
            details=details,
            issues=issues,
        )


class BettiReport(BaseModel):
    """Betti numbers of a complex."""

    complex: str
    betti: List[int]
    euler_characteristic: int
    poincare_duality: bool


class ClassListing(BaseModel):
    """Cohomology representatives in one degree."""

    complex: str
    degree: int
    dimension: int
    representatives: List[str]


class MasseyReport(BaseModel):
    """Evaluation of a triple Massey product."""

    classes: List[str]
    degree: int
    defined: bool
    failed_premise: Optional[str] = None
    defining_system: Optional[List[str]] = None
    representative: Optional[str] = None
    indeterminacy: List[str] = Field(default_factory=list)
    trivial: Optional[bool] = None


class GroupElementReport(BaseModel):
    """Point of the nilpotent group, coordinates as rational text."""

    coordinates: List[str]
    integral: bool


class VerificationReport(BaseModel):
    """Aggregate of all checks run by ``verify-all``."""

    tool: str = "nilg2"
    version: str
    seed: int
    passed: bool
    checks: List[CheckResult]

    def failed_checks(self) -> List[str]:
        """Names of the checks that did not pass."""
        return [check.name for check in self.checks if not check.passed]
