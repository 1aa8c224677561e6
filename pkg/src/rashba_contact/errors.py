"""Exception types shared across the library."""


class DomainError(ValueError):
    """Argument lies outside an operation's mathematical domain."""


class PoleError(DomainError):
    """Evaluation requested at (or too close to) a pole of a closed form."""


class RegimeError(DomainError):
    """Operation invoked outside the parameter regime it is defined for."""


class SingularMatrixError(ValueError):
    """A 2x2 system is singular, or a distinguished extension was passed where
    a finite coupling matrix is required."""


class ConvergenceError(RuntimeError):
    """An iterative scheme failed to reach the requested tolerance.

    Carries the best available estimate so callers can inspect how far off
    the computation ended up.
    """

    def __init__(self, message: str, *, value=None, abs_error: float | None = None):
        super().__init__(message)
        self.value = value
        self.abs_error = abs_error
