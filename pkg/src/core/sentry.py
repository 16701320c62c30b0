"""Error monitoring with Sentry."""

from collections.abc import Sequence
from typing import Any

import sentry_sdk
from loguru import logger

from src import __version__
from src.core.config import settings
from src.core.constants import APP_NAME
from src.core.errors import IgnoredError


def before_send(event: Any, hint: Any) -> Any | None:
    """Drop caller mistakes; keep failures of the tool itself.

    Args:
        event: Sentry event.
        hint: Event context, with ``exc_info`` for exceptions.

    Returns:
        The event, or None for an ``IgnoredError``.
    """
    exc_info = hint.get("exc_info") if isinstance(hint, dict) else None
    if exc_info and isinstance(exc_info[1], IgnoredError):
        return None
    return event


def tag_command(command: str, dims: Sequence[int] | None = None) -> None:
    """Attach the running command and grid to later events."""
    if not settings.SENTRY_DSN:
        return
    sentry_sdk.set_tag("command", command)
    if dims:
        sentry_sdk.set_tag("dims", "x".join(str(d) for d in dims))


def setup_sentry() -> None:
    """Initialize Sentry when a DSN is configured."""
    if not settings.SENTRY_DSN:
        logger.debug("Sentry not configured, skipping initialization.")
        return

    sentry_sdk.init(
        dsn=settings.SENTRY_DSN,
        release=f"{APP_NAME}@{__version__}",
        sample_rate=settings.SENTRY_SAMPLE_RATE,
        traces_sample_rate=settings.SENTRY_TRACES_SAMPLE_RATE,
        before_send=before_send,
        # Events never carry input documents or locals
        max_request_body_size="never",
        include_local_variables=False,
    )
    logger.info(f"Sentry initialized for {APP_NAME} {__version__}")
