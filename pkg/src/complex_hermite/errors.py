"""Exception types shared across the package."""


class DomainError(ValueError):
    """Arguments fall outside the region where a formula is valid."""


class ConvergenceError(ArithmeticError):
    """A truncated series did not meet its tail-acceptance threshold."""

    def __init__(self, message, increment=None, order=None):
        super().__init__(message)
        self.increment = increment
        self.order = order
