"""Exception types shared across the package."""


class InvalidInputError(ValueError):
    """Input violates a documented precondition (maps to CLI exit code 2)."""


class InconclusiveError(RuntimeError):
    """A computation could not reach a verdict, e.g. an empty point count."""
