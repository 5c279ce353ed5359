import json

import click
import jsonschema
import pytest
from marshmallow import Schema, ValidationError, fields

from birkhoff.core.errors import (
    AlgebraError,
    CohomologyError,
    ExitCode,
    IntegrabilityError,
    ParseError,
    ResonanceError,
    UnexpectedError,
    VerdictFailedError,
    format_error_json,
    format_validation_error,
    get_exit_code,
    handle_exception,
)


@pytest.mark.parametrize(
    ("exc", "expected"),
    [
        (ParseError("line 1: bad header"), ExitCode.USAGE_ERROR),
        (VerdictFailedError("no"), ExitCode.VERDICT_FAILED),
        (UnexpectedError("boom"), ExitCode.UNEXPECTED_ERROR),
        (IntegrabilityError("a_11 is not an action function"), ExitCode.VERDICT_FAILED),
        (AlgebraError("n mismatch"), ExitCode.USAGE_ERROR),
        (ResonanceError("resonant"), ExitCode.USAGE_ERROR),
        (CohomologyError("not a cocycle"), ExitCode.USAGE_ERROR),
        (click.UsageError("no such option"), ExitCode.USAGE_ERROR),
        (ValueError("oops"), ExitCode.UNEXPECTED_ERROR),
    ],
)
def test_get_exit_code(exc, expected):
    assert get_exit_code(exc) == expected


def test_format_error_json(error_json_schema):
    dct = json.loads(format_error_json(CohomologyError("not a cocycle")))
    jsonschema.validate(dct, error_json_schema)
    assert dct == {
        "error": {"type": "CohomologyError", "message": "not a cocycle", "exit_code": 2}
    }


def test_handle_exception_json(capsys, error_json_schema):
    exit_code = handle_exception(ResonanceError("resonant term"), use_json=True)
    assert exit_code == ExitCode.USAGE_ERROR
    captured = capsys.readouterr()
    jsonschema.validate(json.loads(captured.out), error_json_schema)
    assert "Error: resonant term" in captured.err


def test_handle_unexpected_exception(capsys):
    exit_code = handle_exception(KeyError("x"))
    assert exit_code == ExitCode.UNEXPECTED_ERROR
    assert "--verbose" in capsys.readouterr().err


def test_handle_abort():
    assert handle_exception(click.exceptions.Abort()) == ExitCode.SUCCESS


class _RunSchema(Schema):
    steps = fields.Int(required=True)


class _ConfigSchema(Schema):
    run = fields.Nested(_RunSchema, required=True)


def test_format_validation_error():
    with pytest.raises(ValidationError) as exc_info:
        _ConfigSchema().load({"run": {"steps": "many"}})
    assert format_validation_error(exc_info.value) == (
        "run: \n  steps: ['Not a valid integer.']"
    )
