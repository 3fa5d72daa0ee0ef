"""Exception types shared across the toolkit."""


class DomainError(ValueError):
    """An argument lies outside the mathematical domain of the operation."""


class ConstructionError(DomainError):
    """The growth inequality of a layered construction fails at some level."""

    def __init__(self, level: int, lhs, rhs):
        self.level = level
        self.lhs = lhs
        self.rhs = rhs
        super().__init__(
            f"growth inequality fails at n={level}: {lhs} <= {rhs}"
        )


class AtomicityUnknownError(DomainError):
    """The atom set of the monoid is not covered by a known closed form."""


class ScanCapError(RuntimeError):
    """A scan hit its caller-imposed cap before reaching a conclusion.

    Diagnostic only: raising the cap and retrying is the intended reaction.
    """
