"""
Services Package

Service classes that orchestrate the numerical core.

- The verification service runs the named checks of `mopkit verify`
- Reports collect the outcome of every check
"""

from .report import CheckResult, Report
from .verification_service import verification_service

__all__ = [
    "CheckResult",
    "Report",
    "verification_service"
]
