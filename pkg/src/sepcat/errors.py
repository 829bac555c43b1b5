"""Exceptions shared across the package."""


class InternalCheckError(RuntimeError):
    """A mathematically guaranteed identity failed; this is an implementation bug."""


class BudgetExceededError(RuntimeError):
    """A cochain space exceeded the configured dimension budget."""
