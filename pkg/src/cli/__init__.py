"""Command-line commands."""

from collections.abc import Callable

from src.cli.construct import cmd_construct
from src.cli.parser import build_parser
from src.cli.parser import to_config
from src.cli.render import cmd_render
from src.cli.verify import cmd_verify
from src.schemas.requests import RunConfig


COMMANDS: dict[str, Callable[[RunConfig], int]] = {
    "construct": cmd_construct,
    "verify": cmd_verify,
    "render": cmd_render,
}

__all__ = ["COMMANDS", "build_parser", "to_config"]
