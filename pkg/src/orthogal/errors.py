"""Shared exception types."""


class NotReciprocalError(ValueError):
    """Input fails the functional equation T^N P(1/T) = eps P(T)."""


class NotSeparableError(ValueError):
    """Input polynomial has a repeated factor where a separable one is required."""


class BudgetExceededError(RuntimeError):
    """An enumeration or point-counting budget was exceeded."""
