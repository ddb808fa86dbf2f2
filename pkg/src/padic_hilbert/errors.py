"""Exception hierarchy.

Every failure mode the library can produce maps onto one of two broad
classes: a *domain* error (the input is outside the mathematical domain of
the operation) or a *precision* error (the answer exists but is not
determined by the digits we hold).  The CLI maps these to exit codes 1 and 2
respectively.
"""

from __future__ import annotations


class PadicHilbertError(Exception):
    """Base class for all library errors."""


class DomainError(PadicHilbertError):
    """The operation is undefined for the given input (e.g. division by an
    exact zero, a non-square under an exact square root, a dimension
    mismatch)."""


class PrecisionLossError(PadicHilbertError):
    """The digits held do not determine the requested result (e.g. the norm
    of a scalar that is indistinguishable from zero at working precision)."""


class DimensionMismatchError(DomainError):
    """Shapes of vectors/matrices/tensors do not line up."""


class NotOrthonormalError(DomainError):
    """A basis that was required to be an orthonormal system is not."""


class NotInvolutiveError(DomainError):
    """An anti-linear map that was required to square to the identity does
    not."""


class NotTraceClassError(DomainError):
    """Trace (or a trace-dependent construction) requested of an operator
    that is not trace class."""


class NotCertifiedError(DomainError):
    """A subspace operation was given a basis that fails its certificate."""


class InputFormatError(DomainError):
    """Malformed wire input.  ``pointer`` is a JSON pointer to the offending
    field (empty string for the document root)."""

    def __init__(self, message: str, pointer: str = "") -> None:
        super().__init__(message)
        self.pointer = pointer
