import logging

from pydantic import ValidationError

from dof_puzzle.errors import (
    DomainError,
    InvalidArgumentError,
    ParseError,
    PreconditionError,
    RefusedError,
)

logger = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_FAILURE = 1
EXIT_USAGE = 2


def error_handler(error: Exception) -> int:
    """Log an error raised by a command and return its exit code."""
    if isinstance(error, RefusedError):
        logger.error(f"Refused: {error}")
        return EXIT_FAILURE
    if isinstance(error, ParseError):
        logger.error(f"Parse error at line {error.line}, column {error.column}: {error.message}")
        return EXIT_USAGE
    if isinstance(error, PreconditionError):
        logger.error(f"{error.message}: {error.violations}")
        return EXIT_USAGE
    if isinstance(error, (DomainError, InvalidArgumentError, ValidationError)):
        logger.error(f"Invalid input: {error}")
        return EXIT_USAGE
    logger.exception(f"Unexpected error: {error}")
    return EXIT_FAILURE
