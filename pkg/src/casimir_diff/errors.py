"""Exception types shared across the package."""


class ConfigurationError(ValueError):
    """Invalid model, table, stack or run configuration."""


class DomainError(ValueError):
    """Argument outside the mathematical domain of an operation."""


class ConvergenceError(RuntimeError):
    """Quadrature or Matsubara summation failed to reach tolerance.

    ``partial`` holds the best available estimate and ``error_estimate``
    its estimated absolute error.
    """

    def __init__(self, message, partial=None, error_estimate=None):
        super().__init__(message)
        self.partial = partial
        self.error_estimate = error_estimate
