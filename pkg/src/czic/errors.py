"""Exception hierarchy shared across the toolkit.

The CLI maps these onto exit codes: RegimeError -> 2, I/O errors -> 3,
everything else below -> 4.
"""


class CzicError(Exception):
    """Base class for all toolkit errors."""


class ParameterError(CzicError, ValueError):
    """A parameter is outside its declared domain (bad power, alpha, table...)."""


class RegimeError(CzicError):
    """A bound was requested outside the interference regime where it holds."""

    def __init__(self, requirement: str, threshold: float):
        self.requirement = requirement
        self.threshold = threshold
        super().__init__(f"regime precondition failed: requires {requirement} {threshold!r}")


class ValidityError(CzicError, ValueError):
    """A correlation triple has no positive-semidefinite covariance extension."""


class CodebookCapError(CzicError):
    """Requested codebook sizes exceed the decoder evaluation cap."""


class EstimationError(CzicError):
    """Sample statistics are too degenerate to form an estimate."""
