"""
Command-line entry point.

Subcommand modules register themselves on the parser the way routers are
included in an application. stdout carries JSON (or --human tables) only;
diagnostics go to stderr.
"""
import argparse
import logging
import sys
from typing import Optional, Sequence

from edfkit import __version__
from edfkit.commands import bound, catalog, construct, cyclotomy, rho, search, verify
from edfkit.commands.common import add_common_options, to_human, to_json
from edfkit.config import get_settings
from edfkit.core.errors import EXIT_OK, EXIT_USAGE, EdfkitError

COMMANDS = (construct, verify, bound, rho, search, catalog, cyclotomy)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="edfkit",
        description="Weighted external difference families and weak AMD codes: "
                    "constructions, verifiers, bounds and exhaustive search.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    add_common_options(parser)
    subparsers = parser.add_subparsers(dest="command", required=True)
    for command in COMMANDS:
        command.register(subparsers)
    return parser


def configure_logging(verbosity: int) -> None:
    if verbosity >= 2:
        level = logging.DEBUG
    elif verbosity == 1:
        level = logging.INFO
    else:
        level = getattr(logging, get_settings().log_level.upper(), logging.WARNING)
    logging.basicConfig(
        stream=sys.stderr,
        level=level,
        format="%(levelname)s %(name)s: %(message)s",
        force=True,
    )


def run_cli(argv: Optional[Sequence[str]] = None) -> int:
    """Run one command and return its exit code."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code not in (0, None) else EXIT_OK

    configure_logging(getattr(args, "verbose", 0))
    args.flatten = getattr(args, "flatten", get_settings().flatten)
    human = getattr(args, "human", False)

    try:
        outcome = args.handler(args)
    except EdfkitError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code

    print(to_human(outcome.payload) if human else to_json(outcome.payload))
    return outcome.exit_code


def main() -> None:
    sys.exit(run_cli())


if __name__ == "__main__":
    main()
