"""Exception types shared across the package."""

__all__ = [
    "QwalkError",
    "InvalidParameterError",
    "InvalidStateError",
    "DegenerateSpectrumError",
    "PreconditionError",
]


class QwalkError(Exception):
    """Base class for all package-specific errors."""


class InvalidParameterError(QwalkError, ValueError):
    """A numeric parameter is outside its admissible range."""


class InvalidStateError(QwalkError, ValueError):
    """An initial chirality state fails its normalization contract."""


class DegenerateSpectrumError(QwalkError, ArithmeticError):
    """Kernel eigenvalues are too close in phase to separate branches reliably.

    Raised instead of silently perturbing the wavenumber node; the caller
    decides how to move off the degenerate set.
    """


class PreconditionError(QwalkError, ValueError):
    """An operation was called with inputs outside its documented domain."""
