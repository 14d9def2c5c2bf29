"""Exception types shared across the package."""


class DomainError(ValueError):
    """Argument outside the domain where the quantity is defined."""


class AccuracyError(ArithmeticError):
    """A numerical procedure could not reach its target accuracy.

    ``achieved`` carries the best error estimate that was obtained.
    """

    def __init__(self, message, achieved=None):
        super().__init__(message)
        self.achieved = achieved


class ConsistencyError(RuntimeError):
    """An internal self-check (e.g. unitarity of a constructed matrix) failed."""


class UsageError(ValueError):
    """Invalid combination of options or parameters outside an envelope."""
