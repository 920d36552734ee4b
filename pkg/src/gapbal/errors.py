"""Exception types shared across the package."""


class GapBalError(Exception):
    """Base class for package errors."""


class DomainError(GapBalError, ValueError):
    """An argument lies outside the domain of an operation."""


class InvariantError(GapBalError, RuntimeError):
    """An internal arithmetic invariant was violated.

    Seeing one of these means a bug, not bad input.
    """


class UnsupportedInputError(GapBalError, ValueError):
    """The input is well formed but outside what the routine handles."""


class BFileParseError(GapBalError, ValueError):
    def __init__(self, message: str, line: int | None = None):
        self.line = line
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
