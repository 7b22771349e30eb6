"""Exception types shared across the package."""


class DomainError(ValueError):
    """An argument lies outside the domain of an operation."""


class StructuralError(RuntimeError):
    """A structural guarantee that an operation relies on did not hold.

    ``payload`` carries the object that exposes the failure, for example the
    path query that had no shortening witness, or the instance on which the
    certificate loop stalled.
    """

    def __init__(self, message, payload=None):
        super().__init__(message)
        self.payload = payload


class InstanceParseError(ValueError):
    """Malformed instance text; ``line`` and ``column`` are 1-based."""

    def __init__(self, message, line, column=1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column
