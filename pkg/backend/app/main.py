"""Command-line entry point."""

import argparse
import logging
import sys
import time
from collections.abc import Sequence

from pydantic import ValidationError

from . import __version__
from .commands import common_parser, register_figure1, register_limits, register_verify, register_xsec
from .config import get_settings
from .errors import UsageError, XsecError

logger = logging.getLogger(__name__)


class CliParser(argparse.ArgumentParser):
    """ArgumentParser that raises UsageError instead of exiting."""

    def error(self, message: str):
        raise UsageError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    parser = CliParser(
        prog="solenoid-xsec",
        description="Born-approximation cross sections for Dirac particles scattered by a solenoid.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    subparsers = parser.add_subparsers(dest="group", metavar="COMMAND", required=True)

    common = common_parser()
    register_xsec(subparsers, common)
    register_limits(subparsers, common)
    register_figure1(subparsers, common)
    register_verify(subparsers, common)
    return parser


def _configure_logging(level: str) -> None:
    logging.basicConfig(
        level=getattr(logging, level.upper(), logging.INFO),
        format="%(asctime)s - %(levelname)s - %(message)s",
        stream=sys.stderr,
        force=True,
    )


def _one_line(error: ValidationError) -> str:
    first = error.errors()[0]
    field = ".".join(str(p) for p in first["loc"]) or error.title
    return f"invalid {field}: {first['msg']}"


def cli_dispatch(argv: Sequence[str] | None = None) -> int:
    """Run one command and return its exit status."""
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except UsageError as e:
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except SystemExit as e:
        # --help and --version
        return int(e.code or 0)

    _configure_logging(getattr(args, "log_level", None) or get_settings().log_level)
    name = " ".join(part for part in (args.group, getattr(args, "command", None)) if part)
    start = time.time()
    logger.debug(f"Running {name}")

    try:
        status = args.handler(args)
    except XsecError as e:
        logger.debug(f"{name} failed: {e}")
        print(f"error: {e}", file=sys.stderr)
        return e.exit_code
    except ValidationError as e:
        logger.debug(f"{name} failed: {e.error_count()} validation error(s)")
        print(f"error: {_one_line(e)}", file=sys.stderr)
        return 2

    logger.info(f"{name} finished in {(time.time() - start) * 1000:.0f} ms")
    return status


def main() -> None:
    sys.exit(cli_dispatch())


if __name__ == "__main__":
    main()
