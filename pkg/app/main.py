"""
Command-line application entry point.

This module creates the argument parser with every command registered,
configures logging, and maps raised exceptions to exit codes.
"""

import argparse
import logging
import sys
import traceback
from typing import Callable, List, Optional, Sequence, Tuple, Type

from pydantic import ValidationError

from app.config import settings
from app.exceptions import FracOpsError
from app.routes import COMMAND_MODULES
from app.routes.output import FORMATS

logger = logging.getLogger("app")


def create_app() -> argparse.ArgumentParser:
    """
    Create and configure the command-line parser.

    Returns:
        argparse.ArgumentParser: Parser with every command registered
    """
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default="plain", help="output format")
    common.add_argument("--verbose", "-v", action="store_true", help="log at DEBUG level")

    parser = argparse.ArgumentParser(
        prog=settings.PROJECT_NAME,
        description="Fractional integrals and derivatives, exact and numeric",
    )
    parser.add_argument("--version", action="version", version=settings.VERSION)
    subparsers = parser.add_subparsers(dest="command", required=True)

    for module in COMMAND_MODULES:
        module.register(subparsers, common)

    return parser


def configure_logging(verbose: bool = False) -> None:
    """Send log records to stderr so stdout carries only results."""
    logging.basicConfig(
        level=logging.DEBUG if verbose else settings.LOG_LEVEL,
        format='%(asctime)s - %(name)s - %(levelname)s - %(message)s',
        stream=sys.stderr,
    )


def handle_engine_error(exc: FracOpsError) -> int:
    """Handle errors the engine raises on purpose."""
    print(f"error: {exc}", file=sys.stderr)
    return exc.exit_code


def handle_validation_error(exc: ValidationError) -> int:
    """Handle invalid model input with one line per field."""
    for error in exc.errors():
        field_path = ".".join(str(part) for part in error.get("loc", ())) or "input"
        print(f"error: {field_path}: {error.get('msg', 'Invalid value')}", file=sys.stderr)
    return 2


def handle_value_error(exc: ValueError) -> int:
    """Handle bad argument values that reach the engine."""
    print(f"error: {exc}", file=sys.stderr)
    return 2


def handle_unexpected_error(exc: Exception) -> int:
    """Handle all other unhandled exceptions."""
    logger.error(f"Unhandled exception: {type(exc).__name__}: {exc}")
    logger.error(traceback.format_exc())
    print(f"error: unexpected {type(exc).__name__}: {exc}", file=sys.stderr)
    return 1


# First match wins, so subclasses come before their bases.
EXCEPTION_HANDLERS: List[Tuple[Type[Exception], Callable[..., int]]] = [
    (FracOpsError, handle_engine_error),
    (ValidationError, handle_validation_error),
    (ValueError, handle_value_error),
    (Exception, handle_unexpected_error),
]


def run(argv: Optional[Sequence[str]] = None) -> int:
    """
    Parse the arguments, run the selected command and return its exit code.

    Args:
        argv: Arguments without the program name (defaults to sys.argv[1:])

    Returns:
        int: 0 on success, 1 on a failed check or numeric failure, 2 on bad input
    """
    parser = create_app()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)

    configure_logging(args.verbose)
    logger.debug("running %s", args.command)
    try:
        return args.handler(args)
    except Exception as exc:
        for exc_type, handler in EXCEPTION_HANDLERS:
            if isinstance(exc, exc_type):
                return handler(exc)
        raise


def main() -> None:
    """Console script entry point."""
    sys.exit(run())


if __name__ == "__main__":
    main()
