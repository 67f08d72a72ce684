"""Exception hierarchy for the cross-section library.

Every failure that is part of an operation's contract raises a subclass of
``XsecError``. The CLI maps ``exit_code`` onto the process status and prints
``detail`` as a single-line diagnostic.

None of these derive from ``ValueError``; raised inside a pydantic
validator they propagate unwrapped instead of becoming a ValidationError.
"""


class XsecError(Exception):
    """Base class for all library errors."""

    exit_code: int = 2

    def __init__(self, detail: str):
        super().__init__(detail)
        self.detail = detail

    def __str__(self) -> str:
        return self.detail


class DomainError(XsecError):
    """An argument lies outside the domain of an operation."""


class ForwardSingularityError(DomainError):
    """Forward scattering (theta = 0, q = 0) was requested."""

    def __init__(self, detail: str = "forward singularity: theta = 0 (q = 0) is excluded"):
        super().__init__(detail)


class KinematicsError(DomainError):
    """Four-vectors are off shell or violate the elastic constraints."""


class PolarizationError(DomainError):
    """The beam polarization mode does not match the requested formula."""


class RegimeError(DomainError):
    """Inputs fall outside the regime where an operation is defined."""


class ConfigError(XsecError):
    """A configuration file or command-line option is invalid."""


class UsageError(ConfigError):
    """Command-line usage error raised by the argument parser."""


class QuadratureError(XsecError):
    """Adaptive quadrature did not reach the requested tolerance."""

    exit_code = 3

    def __init__(self, detail: str, achieved_error: float):
        super().__init__(f"{detail} (achieved error {achieved_error:.3e})")
        self.achieved_error = achieved_error


class InsufficientDataError(XsecError):
    """A scan produced too few envelope maxima to fit."""

    exit_code = 3


class VerificationFailure(XsecError):
    """An oracle comparison exceeded its tolerance."""

    exit_code = 1


class OutputError(XsecError):
    """Writing a dataset failed."""

    exit_code = 4
