"""Exception types raised by the package."""


class QuiverError(ValueError):
    """Malformed quiver: bad vertex index, duplicate or reserved arrow name."""


class RepresentationError(ValueError):
    """A matrix representation or isometry family does not fit its quiver."""


class CycleError(ValueError):
    """An arrow sequence is not a closed composable walk."""


class SignatureMismatch(ValueError):
    """Two trace signatures cannot be compared (mode, length or quiver differ)."""


class BudgetExceeded(RuntimeError):
    """Cycle enumeration would exceed the configured class-count budget."""

    def __init__(self, estimate, budget):
        self.estimate = estimate
        self.budget = budget
        super().__init__(
            f"cycle enumeration needs up to ~{estimate:.3g} classes, "
            f"budget is {budget:.3g}; lower the length or raise the budget"
        )
