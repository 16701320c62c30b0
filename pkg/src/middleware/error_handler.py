"""Global error handling for commands."""

import functools
from collections.abc import Callable

import sentry_sdk
from loguru import logger

from src.core.config import settings
from src.core.constants import EXIT_INTERNAL_ERROR
from src.core.errors import AppError
from src.core.errors import IgnoredError


def handle_errors[**P](func: Callable[P, int]) -> Callable[P, int]:
    """Run a command and turn any error into its exit code.

    Expected errors are logged. Anything else is logged with its traceback
    and reported to Sentry when configured.

    Args:
        func: Command returning an exit code.

    Returns:
        Wrapped command that never raises.
    """

    @functools.wraps(func)
    def wrapper(*args: P.args, **kwargs: P.kwargs) -> int:
        try:
            return func(*args, **kwargs)
        except IgnoredError as e:
            logger.error(f"{e.__class__.__name__}: {e.message}")
            return e.exit_code
        except Exception as e:
            logger.opt(exception=e).error(f"Unhandled error: {e}")

            if settings.SENTRY_DSN:
                sentry_sdk.capture_exception(e)

            # App errors carry their own exit code
            if isinstance(e, AppError):
                return e.exit_code
            return EXIT_INTERNAL_ERROR

    return wrapper
