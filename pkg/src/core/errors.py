"""Custom application exception classes."""

from src.core.constants import EXIT_INTERNAL_ERROR
from src.core.constants import EXIT_MALFORMED_INPUT
from src.core.constants import EXIT_REFUTED
from src.core.constants import EXIT_USAGE


class AppError(Exception):
    """Base application error."""

    def __init__(self, message: str, exit_code: int = EXIT_INTERNAL_ERROR):
        """Initialize application error.

        Args:
            message: Error message.
            exit_code: Process exit code when the error ends a CLI command.
        """
        self.message = message
        self.exit_code = exit_code
        super().__init__(self.message)


class IgnoredError(AppError):
    """Expected errors that do not need monitoring."""

    def __init__(self, message: str, exit_code: int):
        """Initialize ignored error.

        Args:
            message: Error message.
            exit_code: Process exit code.
        """
        super().__init__(message, exit_code)


# Expected errors - caller mistakes, don't need monitoring
class InvalidArgumentError(IgnoredError):
    """Argument outside an operation's domain."""

    def __init__(self, message: str):
        """Initialize invalid argument error.

        Args:
            message: Description of the rejected argument.
        """
        super().__init__(message, EXIT_USAGE)


class InvalidDimensionsError(InvalidArgumentError):
    """Party dimensions the construction is undefined for."""


class NonOrthogonalError(InvalidArgumentError):
    """Input state set is not pairwise orthogonal."""

    def __init__(self, message: str):
        """Initialize non-orthogonal input error.

        Args:
            message: Description including the first violating pair.
        """
        super().__init__(message)
        self.exit_code = EXIT_REFUTED


class PreconditionError(IgnoredError):
    """Operation precondition does not hold."""

    def __init__(self, message: str):
        """Initialize precondition error.

        Args:
            message: Failed precondition.
        """
        super().__init__(message, EXIT_USAGE)


class UsageError(IgnoredError):
    """Command-line usage error."""

    def __init__(self, message: str):
        """Initialize usage error.

        Args:
            message: Usage problem.
        """
        super().__init__(message, EXIT_USAGE)


class MalformedInputError(IgnoredError):
    """Input document cannot be parsed or validated."""

    def __init__(self, message: str):
        """Initialize malformed input error.

        Args:
            message: Parse or validation problem.
        """
        super().__init__(message, EXIT_MALFORMED_INPUT)


# System errors - unexpected and need monitoring
class CertificationError(AppError):
    """Internal soundness check failed."""

    def __init__(self, message: str):
        """Initialize certification error.

        Args:
            message: Which internal assertion failed.
        """
        super().__init__(message, EXIT_INTERNAL_ERROR)
