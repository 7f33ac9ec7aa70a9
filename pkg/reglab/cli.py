"""Command-line entry point."""

from __future__ import annotations

import argparse
from collections.abc import Sequence
import io
import logging
from pathlib import Path
import sys
from typing import Any

from .codec import dumps, load_options
from .config import Config
from .const import EXIT_CAPACITY, EXIT_CONTRACT, EXIT_INPUT, EXIT_OK, NAME, VERSION
from .commands import COMMANDS
from .exceptions import CapacityError, ContractError, DomainError, InputError
from .experiments import SweepReport, write_csv

_LOGGER = logging.getLogger(__package__)

LOG_FORMAT = "%(levelname)s %(name)s: %(message)s"


class ArgumentParser(argparse.ArgumentParser):
    """Parser that reports usage errors as InputError instead of exiting."""

    def error(self, message: str):
        """Raise instead of printing usage and exiting with 2."""
        raise InputError(message, self.prog)


def build_parser() -> ArgumentParser:
    """Top-level parser with one subparser per entry of COMMANDS."""
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--verbose", "-v", action="store_true", help="debug logging on stderr")
    common.add_argument("--config", metavar="FILE", help="JSON options file")
    common.add_argument("--out", metavar="FILE", help="write the result here instead of stdout")

    parser = ArgumentParser(prog=NAME, description="Weak hypergraph regularity toolkit.")
    parser.add_argument("--version", action="version", version=f"{NAME} {VERSION}")
    subparsers = parser.add_subparsers(dest="name", required=True, metavar="COMMAND")
    for command in COMMANDS.values():
        command.register(subparsers, parents=(common,))
    return parser


def _setup_logging(verbose: bool) -> None:
    logging.basicConfig(
        level=logging.DEBUG if verbose else logging.WARNING,
        format=LOG_FORMAT,
        stream=sys.stderr,
        force=True,
    )


def _render(payload: Any, args: argparse.Namespace, config: Config) -> str:
    as_csv = config.output_format == "csv" or (args.out or "").endswith(".csv")
    if isinstance(payload, SweepReport) and as_csv:
        stream = io.StringIO()
        write_csv(payload.records, stream)
        return stream.getvalue()
    return dumps(payload)


def _emit(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    try:
        Path(out).write_text(text, encoding="utf-8")
    except OSError as err:
        raise InputError(f"cannot write file: {err.strerror}", out) from err


def run(argv: Sequence[str] | None = None) -> int:
    """Parse argv, run one subcommand and return its exit code."""
    try:
        args = build_parser().parse_args(argv)
    except InputError as err:
        _setup_logging(False)
        _LOGGER.error("%s", err)
        return EXIT_INPUT
    except SystemExit as err:
        # --help and --version
        return EXIT_OK if err.code is None else int(err.code)

    _setup_logging(args.verbose)
    try:
        config = Config.from_env(load_options(args.config) if args.config else None)
        payload, code = args.command(args, config)
        _emit(_render(payload, args, config), args.out)
    except (InputError, DomainError) as err:
        _LOGGER.error("%s", err)
        return EXIT_INPUT
    except ContractError as err:
        _LOGGER.error("%s", err)
        if err.detail is not None:
            _LOGGER.debug("Detail: %s", err.detail)
        return EXIT_CONTRACT
    except CapacityError as err:
        _LOGGER.error("%s", err)
        return EXIT_CAPACITY
    if code != EXIT_OK:
        _LOGGER.warning("%s finished with exit code %s", args.name, code)
    return code


def main() -> None:
    """Console script entry point."""
    sys.exit(run())
