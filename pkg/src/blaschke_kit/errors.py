"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the domain of the operation."""


class AccuracyError(RuntimeError):
    """A numerical procedure failed to reach its tolerance.

    The best available estimate is kept on the exception so callers can
    still report it.
    """

    def __init__(self, message, estimate=None, error=None):
        super().__init__(message)
        self.estimate = estimate
        self.error = error


class IndeterminateError(RuntimeError):
    """Membership could not be decided at the configured grid resolution."""


class InvalidScenario(ValueError):
    """A scenario violates the preconditions of the statement it targets."""
