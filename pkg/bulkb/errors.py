"""Exception hierarchy for bulkb.

Every failure raised by the library derives from :class:`BulkBError` so the
command line can map it to an exit code in one place.
"""


class BulkBError(Exception):
    """Base class for all bulkb failures."""

    exit_code = 3


class InvalidModelError(BulkBError, ValueError):
    """Unsupported model kind, bad lattice size or missing constants."""

    exit_code = 1


class SectorError(BulkBError, ValueError):
    """A sector label outside the allowed range, or mixed sectors."""

    exit_code = 1


class PlanarityError(BulkBError, ValueError):
    """A link pattern that is not a planar involution with consistent tags."""


class EigenSolverError(BulkBError, RuntimeError):
    """An eigenpair failed to converge or its residual is too large."""

    exit_code = 2


class NoJordanCellError(BulkBError, RuntimeError):
    """The expected rank-2 Jordan cell was not found in the s = 2 block."""

    exit_code = 2

    def __init__(self, message: str, candidates: list | None = None):
        super().__init__(message)
        self.candidates = candidates or []


class DegeneratePairingError(BulkBError, ArithmeticError):
    """A pairing used as a denominator is below the configured floor."""

    exit_code = 2


class LimitDisagreementError(BulkBError, ArithmeticError):
    """The two one-sided limits of a regularized quantity do not agree."""

    exit_code = 2


class FitError(BulkBError, ValueError):
    """Too few points or a rank-deficient finite-size fit."""

    exit_code = 1
