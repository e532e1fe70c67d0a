"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument is outside the mathematical domain of the operation."""


class BudgetError(RuntimeError):
    """A lattice or series evaluation would exceed the configured term budget."""
