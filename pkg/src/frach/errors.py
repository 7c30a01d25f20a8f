"""Exception types shared across the package."""


class FrachError(Exception):
    """Base class for every error raised by this package."""


class DomainError(FrachError):
    """An argument lies outside the mathematical domain of an operation."""


class PoleError(DomainError):
    """The gamma function was evaluated at a nonpositive integer."""


class IndeterminateError(FrachError):
    """A factorial-power ratio is infinite (numerator gamma at a pole)."""


class TooShortError(FrachError):
    """A grid function has too few points for a difference operator."""


class StepMismatchError(FrachError):
    """Two grid functions with different steps cannot be aligned."""


class SingularProblemError(FrachError):
    """The end condition cannot determine the solution constant."""


class SingularSystemError(FrachError):
    """Gaussian elimination met a pivot too small to trust."""


class NonConvergenceError(FrachError):
    """Iterative minimization exhausted its iteration budget."""
