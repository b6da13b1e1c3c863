"""Exception types shared across the package.

The CLI maps these onto exit codes: definition/input problems are exit 2,
violated preconditions and size guards are exit 3.
"""


class MetricDefinitionError(ValueError):
    """A metric definition (file or constructor arguments) is malformed."""


class UnknownLetterError(ValueError):
    """A letter does not belong to the metric's alphabet."""


class DomainError(ValueError):
    """An operation was called outside its documented domain."""


class GuardError(ValueError):
    """A brute-force size guard was exceeded."""
