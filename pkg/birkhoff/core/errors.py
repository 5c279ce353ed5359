"""
This module centralizes error handling. For more details, have a look at
doc/dev/error-handling.md.

Two kinds of exceptions live here:

- `_ExitError` subclasses are click exceptions carrying an `ExitCode`. Commands raise
  them directly.
- `BirkhoffError` subclasses are raised by the algebra and the engines. They know
  nothing about click; `handle_exception()` decides which exit code they map to.
"""

import json
import logging
import traceback
from enum import IntEnum
from typing import Any, Dict

import click
from marshmallow import ValidationError

from birkhoff.core import ui


logger = logging.getLogger(__name__)


class ExitCode(IntEnum):
    """
    Define constant exit codes based on their type
    """

    # Everything went well
    SUCCESS = 0
    # The computation ran, and a verdict failed (non-commuting family, failed audit...)
    VERDICT_FAILED = 1
    # Error on the command-line or in an input file
    USAGE_ERROR = 2

    # Add new exit codes here.
    # If you add a new exit code, make sure you also add it to the documentation.

    # Catch all for other failures
    UNEXPECTED_ERROR = 128


class _ExitError(click.ClickException):
    """
    Base class for exceptions which must exit with an exit code as defined in ExitCode.

    This class is internal, inherit from it to create public exception classes.
    """

    def __init__(self, exit_code: ExitCode, message: str) -> None:
        super().__init__(message)
        self.exit_code = exit_code


class UnexpectedError(_ExitError):
    def __init__(self, message: str) -> None:
        super().__init__(ExitCode.UNEXPECTED_ERROR, message)


class ParseError(_ExitError):
    """
    Failed to load a family file or a configuration file
    """

    def __init__(self, message: str):
        super().__init__(ExitCode.USAGE_ERROR, message)


class VerdictFailedError(_ExitError):
    """
    A check ran to completion and its verdict is negative
    """

    def __init__(self, message: str):
        super().__init__(ExitCode.VERDICT_FAILED, message)


class BirkhoffError(Exception):
    """
    Base class for errors raised by the computation layers
    """


class AlgebraError(BirkhoffError):
    """
    Operands do not fit together: mismatched variable counts, out of range indices,
    generators which would make a Lie series infinite...
    """


class TruncationError(BirkhoffError):
    """
    A result was requested beyond the degree up to which it is exact
    """


class ResonanceError(BirkhoffError):
    """
    Resonant content was found where only nonresonant terms are allowed
    """


class CohomologyError(BirkhoffError):
    """
    A cohomological equation has no solution: the right-hand side is not a cocycle.
    This usually means the input family does not commute.
    """


class IntegrabilityError(BirkhoffError):
    """
    A normal form could not be written as a combination of the E^j with coefficients
    depending on the actions only
    """


class ConstantsError(BirkhoffError):
    """
    Scheme constants violate their constraints
    """


def format_validation_error(exc: ValidationError) -> str:
    """
    Take a Marshmallow ValidationError and turn it into a more user-friendly message
    """
    message_dct = exc.normalized_messages()
    lines = []

    def format_items(dct: Dict[str, Any], indent: int) -> None:
        for key, value in dct.items():
            message = " " * indent + f"{key}: "
            if isinstance(value, dict):
                lines.append(message)
                format_items(value, indent + 2)
            else:
                message += str(value)
                lines.append(message)

    format_items(message_dct, 0)

    return "\n".join(lines)


def get_exit_code(exc: Exception) -> ExitCode:
    if isinstance(exc, _ExitError):
        return exc.exit_code
    if isinstance(exc, IntegrabilityError):
        return ExitCode.VERDICT_FAILED
    if isinstance(exc, (BirkhoffError, click.UsageError)):
        return ExitCode.USAGE_ERROR
    return ExitCode.UNEXPECTED_ERROR


def format_error_json(exc: Exception) -> str:
    return json.dumps(
        {
            "error": {
                "type": type(exc).__name__,
                "message": str(exc),
                "exit_code": int(get_exit_code(exc)),
            }
        }
    )


def handle_exception(exc: Exception, *, use_json: bool = False) -> int:
    """
    Take an exception, print information about it and return the exit code to use
    """
    if isinstance(exc, click.exceptions.Abort):
        return ExitCode.SUCCESS

    exit_code = get_exit_code(exc)
    logger.debug("exception=%s exit_code=%d", type(exc).__name__, exit_code)

    if use_json:
        click.echo(format_error_json(exc))

    ui.display_error(str(exc))

    if not isinstance(exc, (click.ClickException, BirkhoffError)):
        click.echo(err=True)
        if ui.is_verbose():
            traceback.print_exc()
        else:
            ui.display_info("Re-run the command with --verbose to get a stack trace.")

    return exit_code
