"""Exception hierarchy shared by the solver modules."""


class StefanError(Exception):
    """Base class for every error raised by this package."""


class DomainError(StefanError, ValueError):
    """An argument lies outside the range where a function is defined."""


class OverflowGuardError(StefanError, OverflowError):
    """An argument would push exp(x**2) past double range."""


class BracketError(StefanError, ValueError):
    """The supplied interval does not bracket a sign change."""


class ConvergenceError(StefanError, RuntimeError):
    """An iteration ran out of budget.

    Attributes:
        bracket: last (lo, hi) interval reached, when meaningful.
    """

    def __init__(self, message, bracket=None):
        super().__init__(message)
        self.bracket = bracket


class IntegrationError(StefanError, ArithmeticError):
    """The shooting integrator produced a non-finite state."""


class ValidationError(StefanError, ValueError):
    """A physical or dimensionless parameter violates its invariant.

    Attributes:
        field: name of the offending parameter.
    """

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field
