import json
from pathlib import Path

import jsonschema
import pytest

from birkhoff.__main__ import cli
from birkhoff.core.algebra.vector_field import VectorField
from birkhoff.core.errors import ExitCode
from birkhoff.core.family_file import read_family_file
from birkhoff.verticals.kp.near_identity import (
    NearIdentityMap,
    canonical_near_identity,
    kp_fields,
)
from tests.factories import TriangularHamiltonianFactory
from tests.unit.conftest import (
    NO_AUDIT_CONFIG,
    assert_invoke_exited_with,
    assert_invoke_ok,
    write_family,
    write_text,
)


@pytest.fixture()
def psi() -> NearIdentityMap:
    return canonical_near_identity(TriangularHamiltonianFactory(), 8)


def test_canonical_map(cli_fs_runner, psi):
    write_family("map.vfam", psi.to_family())
    result = cli_fs_runner.invoke(cli, ["kp", "map.vfam", "--out", "psi"])
    assert_invoke_ok(result)
    assert "KP1 up to degree 9: pass" in result.output
    assert "vector fields cross-check: pass" in result.output
    assert "wrote psi.fields.vfam" in result.output
    assert read_family_file(Path("psi.fields.vfam")).family == kp_fields(psi)


def test_canonical_map_normalized(cli_fs_runner, psi, kp_json_schema):
    """
    GIVEN a canonical near-identity map
    WHEN normalizing the family of its actions
    THEN every action passes the Birkhoff check
    """
    write_text(".birkhoff.yaml", NO_AUDIT_CONFIG)
    write_family("map.vfam", psi.to_family())
    cli_fs_runner.mix_stderr = False
    result = cli_fs_runner.invoke(
        cli, ["kp", "map.vfam", "--normalize", "-K", "2", "--json"]
    )
    assert_invoke_ok(result)
    dct = json.loads(result.output)
    jsonschema.validate(dct, kp_json_schema)
    assert dct["kp1"]["ok"]
    assert dct["cross_path_ok"]
    assert dct["ledger_ok"]
    assert [(check["action"], check["degree"]) for check in dct["birkhoff"]] == [
        (1, 5),
        (2, 5),
    ]
    assert all(check["violations"] == [] for check in dct["birkhoff"])
    assert dct["ok"]


def test_non_commuting_actions(cli_fs_runner, kp_json_schema):
    """
    GIVEN Ψ_1 = z_1 + z_2^2
    THEN {I_1, I_2} has a term of degree 3
    """
    psi = NearIdentityMap(VectorField.monomial({2: 2}, 1, 2, 6))
    write_family("map.vfam", psi.to_family())
    result = cli_fs_runner.invoke(cli, ["kp", "map.vfam"])
    assert_invoke_exited_with(result, ExitCode.VERDICT_FAILED)
    assert "{I_1, I_2} has a term of degree 3" in result.output

    cli_fs_runner.mix_stderr = False
    result = cli_fs_runner.invoke(cli, ["kp", "map.vfam", "--json"])
    assert_invoke_exited_with(result, ExitCode.VERDICT_FAILED)
    dct = json.loads(result.output)
    jsonschema.validate(dct, kp_json_schema)
    assert dct["kp1"]["pairs"] == [{"j": 1, "k": 2, "lowest_degree": 3}]
    assert not dct["ok"]


def test_map_with_linear_terms(cli_fs_runner):
    write_text(
        "map.vfam",
        "VFAM/1 n=1 N=1 trunc=4 mode=rational\n1  1  1^1  1  0\n",
    )
    result = cli_fs_runner.invoke(cli, ["kp", "map.vfam"])
    assert_invoke_exited_with(result, ExitCode.USAGE_ERROR)
    assert "G must vanish to second order" in result.output
