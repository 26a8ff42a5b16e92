"""Error types shared across the package.

Plain ``ValueError`` is used for argument validation; the classes here mark
failure modes callers may want to handle separately.
"""


class DegenerateInputError(ValueError):
    """Input is structurally valid but degenerate (e.g. all points identical)."""


class NumericalFailureError(ArithmeticError):
    """A computation produced values that theory rules out (broken pairing, divergence)."""


class CapacityError(RuntimeError):
    """A resource or attempt limit was exceeded; the message states the limit."""


class MemoryBudgetError(CapacityError):
    """The requested dense matrix does not fit the configured memory budget."""
