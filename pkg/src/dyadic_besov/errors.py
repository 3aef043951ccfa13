"""Exception types shared across the package."""


class DomainError(ValueError):
    """An input lies outside the mathematical domain of an operation."""


class CapacityError(RuntimeError):
    """A dense computation would exceed the supported resolution."""


class ValidationError(RuntimeError):
    """Two independent computations of the same quantity disagree."""

    def __init__(self, message, level=None):
        super().__init__(message)
        self.level = level
