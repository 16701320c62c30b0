"""Command-line entry point."""

import sys
from collections.abc import Sequence

from loguru import logger

from src import __version__
from src.cli import COMMANDS
from src.cli import build_parser
from src.cli import to_config
from src.core.constants import APP_NAME
from src.core.logging import setup_logging
from src.core.sentry import setup_sentry
from src.core.sentry import tag_command
from src.middleware import handle_errors


@handle_errors
def run(argv: Sequence[str] | None = None) -> int:
    """Parse arguments and dispatch to a command.

    Args:
        argv: Arguments without the program name; defaults to sys.argv.

    Returns:
        Process exit code.
    """
    args = build_parser().parse_args(argv)
    if args.verbose:
        setup_logging("DEBUG")
    logger.debug(f"{APP_NAME} {__version__}: {args.command}")
    tag_command(args.command, getattr(args, "dims", None))
    return COMMANDS[args.command](to_config(args))


def main(argv: Sequence[str] | None = None) -> int:
    """Set up monitoring and logging, then run a command."""
    setup_sentry()
    setup_logging()
    return run(argv)


if __name__ == "__main__":
    sys.exit(main())
