"""Exception types shared across the package."""


class BudgetExceeded(RuntimeError):
    """A search or enumeration exceeded its configured budget."""


class EnumerationLimitExceeded(BudgetExceeded):
    """An exhaustive enumeration produced more items than the caller allowed."""


class InvariantViolation(RuntimeError):
    """An internal consistency check failed; indicates a bug, not bad input."""
