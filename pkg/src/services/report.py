"""
Verification Reports

Plain data returned by the verification service and serialized by the
command line.
"""

from dataclasses import dataclass, field
from typing import Any, Dict, List, Optional

PASS = 'pass'
FAIL = 'fail'
SKIPPED = 'skipped'


@dataclass
class CheckResult:
    """Outcome of one named check."""

    name: str
    status: str
    max_residual: Optional[float] = None
    tolerance: Optional[float] = None
    details: Dict[str, Any] = field(default_factory=dict)

    @classmethod
    def skipped(cls, name: str, reason: str) -> 'CheckResult':
        return cls(name, SKIPPED, details={'reason': reason})

    @classmethod
    def from_residual(cls, name: str, residual: float, tolerance: float, **details) -> 'CheckResult':
        status = PASS if residual <= tolerance else FAIL
        return cls(name, status, float(residual), float(tolerance), dict(details))

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'status': self.status,
            'max_residual': self.max_residual,
            'tolerance': self.tolerance,
            'details': self.details,
        }


@dataclass
class Report:
    """All checks of one `verify` run plus notes on published formulas."""

    model: str
    params: Dict[str, Any]
    checks: List[CheckResult] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)

    @property
    def all_passed(self) -> bool:
        """Skipped checks neither pass nor fail the run."""
        return all(check.status != FAIL for check in self.checks)

    def check(self, name: str) -> CheckResult:
        for result in self.checks:
            if result.name == name:
                return result
        raise KeyError(name)

    def to_dict(self) -> Dict[str, Any]:
        return {
            'checks': [check.to_dict() for check in self.checks],
            'all_passed': self.all_passed,
            'notes': list(self.notes),
        }
