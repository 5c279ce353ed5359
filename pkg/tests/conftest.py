import json
from pathlib import Path
from typing import Any, Dict

import pytest


# The directory holding the birkhoff repository checkout
ROOT_DIR = Path(__file__).parent.parent

JSON_SCHEMAS_DIR = ROOT_DIR / "doc/schemas"


@pytest.fixture(autouse=True)
def do_not_use_real_user_dirs(monkeypatch, tmp_path):
    """
    This fixture ensures we do not use real user directories.
    Overridden directories are:
    - the platform configuration directory
    - the home directory, where the global .birkhoff.yaml lives
    """
    monkeypatch.setenv("BIRKHOFF_CONFIG_DIR", str(tmp_path / "config"))
    monkeypatch.setenv("BIRKHOFF_USER_HOME_DIR", str(tmp_path / "home"))


@pytest.fixture(autouse=True)
def do_not_load_dot_env(monkeypatch):
    """
    A .env file in the checkout must not leak into the tests
    """
    monkeypatch.setenv("BIRKHOFF_DONT_LOAD_ENV", "1")


@pytest.fixture(autouse=True)
def do_not_use_colors(monkeypatch):
    """
    This fixture ensures we do not print colors for easier testing.
    """
    monkeypatch.setenv("NO_COLOR", "1")


@pytest.fixture(scope="session")
def normalize_json_schema() -> Dict[str, Any]:
    return _load_json_schema("normalize.json")


@pytest.fixture(scope="session")
def ledger_row_json_schema() -> Dict[str, Any]:
    return _load_json_schema("ledger_row.json")


@pytest.fixture(scope="session")
def check_commute_json_schema() -> Dict[str, Any]:
    return _load_json_schema("check_commute.json")


@pytest.fixture(scope="session")
def kp_json_schema() -> Dict[str, Any]:
    return _load_json_schema("kp.json")


@pytest.fixture(scope="session")
def audit_sequences_json_schema() -> Dict[str, Any]:
    return _load_json_schema("audit_sequences.json")


@pytest.fixture(scope="session")
def split_json_schema() -> Dict[str, Any]:
    return _load_json_schema("split.json")


@pytest.fixture(scope="session")
def solve_cohom_json_schema() -> Dict[str, Any]:
    return _load_json_schema("solve_cohom.json")


@pytest.fixture(scope="session")
def config_list_json_schema() -> Dict[str, Any]:
    """Load the JSON schema for `config list` command."""
    return _load_json_schema("config_list.json")


@pytest.fixture(scope="session")
def error_json_schema() -> Dict[str, Any]:
    return _load_json_schema("error.json")


def _load_json_schema(name: str) -> Dict[str, Any]:
    """Load a JSON schema and patch it to reject additional properties. We patch it this
    way to ensure all fields of birkhoff JSON output are documented in the JSON schema.
    """
    with (JSON_SCHEMAS_DIR / name).open() as fp:
        dct = json.load(fp)
    _reject_additional_properties(dct)
    return dct


def _reject_additional_properties(dct: Dict[str, Any]):
    """Helper for JSON Schema fixtures: adds `"additionalProperties": false` to all
    objects of the JSON schema which do not say otherwise, ensuring we do not add
    fields without updating the schema.
    """
    type_ = dct.get("type")
    if type_ == "object":
        dct.setdefault("additionalProperties", False)
        for child in dct.get("properties", {}).values():
            _reject_additional_properties(child)
    elif type_ == "array":
        _reject_additional_properties(dct["items"])
