"""Argument parser of the command line."""

import argparse
from pathlib import Path
from typing import NoReturn

from src import __version__
from src.core.constants import APP_NAME
from src.core.enums import ArtifactKind
from src.core.enums import Backend
from src.core.enums import Check
from src.core.enums import RenderStyle
from src.core.enums import TraceVerbosity
from src.core.errors import UsageError
from src.schemas.requests import RunConfig
from src.utils.common import parse_dims


class ArgumentParser(argparse.ArgumentParser):
    """Parser raising UsageError instead of exiting."""

    def error(self, message: str) -> NoReturn:
        """Report a usage problem.

        Raises:
            UsageError: Always.
        """
        raise UsageError(f"{self.prog}: {message}")


def _dims(text: str) -> tuple[int, ...]:
    try:
        return parse_dims(text)
    except ValueError as e:
        raise argparse.ArgumentTypeError(f"invalid dimensions {text!r}: {e}") from e


def _add_dims(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "--dims",
        type=_dims,
        required=True,
        help="comma-separated local dimensions, e.g. 3,3,3",
    )


def _add_output(parser: argparse.ArgumentParser) -> None:
    parser.add_argument(
        "-o", "--output", type=Path, help="output file (default: stdout)"
    )


def build_parser() -> ArgumentParser:
    """Parser with the construct, verify and render commands."""
    parser = ArgumentParser(
        prog=APP_NAME,
        description="Build and certify strongly nonlocal product bases and UPBs.",
    )
    parser.add_argument("--version", action="version", version=__version__)
    parser.add_argument(
        "-v", "--verbose", action="store_true", help="log at DEBUG level"
    )
    commands = parser.add_subparsers(dest="command", required=True)

    construct = commands.add_parser(
        "construct", help="write a decomposition or state set as JSON"
    )
    _add_dims(construct)
    construct.add_argument(
        "--kind",
        choices=[e.value for e in ArtifactKind],
        default=ArtifactKind.DECOMPOSITION.value,
        help="artifact to build",
    )
    _add_output(construct)

    verify = commands.add_parser("verify", help="run checks on a JSON document")
    verify.add_argument(
        "--in", dest="input_path", type=Path, required=True, help="input document"
    )
    verify.add_argument(
        "--check",
        dest="checks",
        choices=[e.value for e in Check],
        action="append",
        help="check to run; repeat for several (default depends on the input)",
    )
    verify.add_argument(
        "--backend", choices=[e.value for e in Backend], default=Backend.EXACT.value
    )
    verify.add_argument("--float-tolerance", type=float, help="float zero threshold")
    verify.add_argument("--node-budget", type=int, help="cover-search node budget")
    verify.add_argument(
        "--trace",
        dest="trace_verbosity",
        choices=[e.value for e in TraceVerbosity],
        default=TraceVerbosity.SUMMARY.value,
        help="deduction trace detail in nonlocality reports",
    )
    _add_output(verify)

    render = commands.add_parser("render", help="draw a decomposition as text")
    _add_dims(render)
    render.add_argument(
        "--style",
        choices=[e.value for e in RenderStyle],
        default=RenderStyle.TABLE.value,
    )
    _add_output(render)

    return parser


def to_config(args: argparse.Namespace) -> RunConfig:
    """Collect parsed flags into a RunConfig; unset flags keep defaults.

    Raises:
        UsageError: If the flags are inconsistent.
    """
    values = {
        "dims": getattr(args, "dims", None),
        "kind": getattr(args, "kind", None),
        "checks": tuple(dict.fromkeys(getattr(args, "checks", None) or ())),
        "backend": getattr(args, "backend", None),
        "float_tolerance": getattr(args, "float_tolerance", None),
        "node_budget": getattr(args, "node_budget", None),
        "trace_verbosity": getattr(args, "trace_verbosity", None),
        "style": getattr(args, "style", None),
        "input_path": getattr(args, "input_path", None),
        "output": getattr(args, "output", None),
    }
    try:
        return RunConfig(**{k: v for k, v in values.items() if v is not None})
    except ValueError as e:
        raise UsageError(str(e)) from e
