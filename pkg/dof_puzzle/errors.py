"""Exception hierarchy shared by every dof_puzzle module."""
from typing import List, Optional, Sequence


class DofPuzzleError(Exception):
    """Base class for all errors raised by the toolkit."""


class InvalidArgumentError(DofPuzzleError, ValueError):
    """Raised when an argument is out of range or has the wrong shape."""


class ParseError(DofPuzzleError):
    """Raised when a spec or matrix file cannot be parsed."""
    def __init__(self, message: str, line: int, column: int = 1):
        self.message = message
        self.line = line
        self.column = column
        super().__init__(f"line {line}, column {column}: {message}")


class DomainError(DofPuzzleError):
    """Raised when a value is well-formed but outside the puzzle's domain."""
    def __init__(self, message: str, line: Optional[int] = None, column: Optional[int] = None):
        self.message = message
        self.line = line
        self.column = column
        if line is not None:
            message = f"line {line}, column {column}: {message}"
        super().__init__(message)


class PreconditionError(DofPuzzleError):
    """Raised when an operation receives an invalid precoding index matrix."""
    def __init__(self, message: str, violations: Sequence = ()):
        self.message = message
        self.violations: List = list(violations)
        super().__init__(f"{message} ({len(self.violations)} violation(s))")


class RefusedError(DofPuzzleError):
    """Raised when an instance exceeds a configured size cap."""
    def __init__(self, message: str, size: int, cap: int):
        self.message = message
        self.size = size
        self.cap = cap
        super().__init__(f"{message}: {size} exceeds cap {cap}")
