"""Exception types shared across the package."""


class SpanfactorError(Exception):
    """Base class for all errors raised by this package."""


class FieldMismatchError(SpanfactorError):
    """Operands belong to different fields."""


class DimensionMismatchError(SpanfactorError):
    """Matrix shapes are incompatible for the requested operation."""


class InfiniteFieldError(SpanfactorError):
    """An enumeration was requested over the rationals."""


class SingularMatrixError(SpanfactorError):
    """A nonsingular matrix was required (conjugator, transvection input, ...)."""


class NoSolutionError(SpanfactorError):
    """A linear system has no solution.

    Carries ``certificate``: a row combination of the equations that reduces
    to 0 = c with c nonzero.
    """

    def __init__(self, message, certificate=None):
        super().__init__(message)
        self.certificate = certificate


class PreconditionViolatedError(SpanfactorError):
    """A documented precondition of an operation does not hold."""


class BudgetExhaustedError(SpanfactorError):
    """A witness search ran out of trials without finding a witness."""


class SpanDeficientError(SpanfactorError):
    """The product span does not reach the requested target."""


class TooLargeError(SpanfactorError):
    """An exhaustive enumeration would exceed the configured ceiling."""


class InternalContradictionError(SpanfactorError):
    """A theorem-guaranteed step failed; indicates a bug, not a user error."""
