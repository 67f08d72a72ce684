"""Oracle verification suites."""

from .verification import VerificationRunner, checks_dataset, require_passed

__all__ = ["VerificationRunner", "checks_dataset", "require_passed"]
