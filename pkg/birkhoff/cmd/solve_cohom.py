import json
from pathlib import Path
from typing import Any, Dict, Optional

import click

from birkhoff.cmd.utils.common_decorators import exception_wrapper
from birkhoff.cmd.utils.common_options import (
    add_common_options,
    json_option,
    text_json_format_option,
)
from birkhoff.cmd.utils.context_obj import ContextObj
from birkhoff.cmd.utils.files import load_family_file
from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.vector_field import VectorField
from birkhoff.core.errors import CohomologyError, ExitCode, TruncationError
from birkhoff.core.family_file import serialize_family, write_family_file
from birkhoff.core.text_utils import format_verdict
from birkhoff.verticals.normal_form.cohomology import forward_instance
from birkhoff.verticals.normal_form.newton import SOLVERS
from birkhoff.verticals.normal_form.normal_form_family import NormalFormFamily


def load_normal_form(nf_family: Family, m: int) -> NormalFormFamily:
    """Factor a family NF^i = E^i + N^i with N^i of degrees 2..m"""
    E = Family.fundamental(
        nf_family.n, nf_family.trunc_degree, nf_family.arithmetic, nf_family.N
    )
    corrections = nf_family - E
    for i, member in enumerate(corrections, start=1):
        if member and (member.min_degree < 2 or member.max_degree > m):
            raise CohomologyError(
                f"NF^{i} - E^{i} must live in degrees 2..{m},"
                f" got {member.min_degree}..{member.max_degree}"
            )
    return NormalFormFamily.from_corrections(corrections).with_trunc(2 * m)


@click.command()
@click.argument(
    "nf_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    metavar="NF_FILE",
)
@click.argument(
    "b_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    metavar="B_FILE",
)
@click.option(
    "--m",
    "m",
    type=click.IntRange(min=1),
    required=True,
    help="Degree up to which NF is normalized.",
)
@click.option(
    "--method",
    type=click.Choice(["recursive", "spectral", "both"]),
    default="spectral",
    show_default=True,
    help="Solver to use. `both` runs the two solvers and compares their solutions.",
)
@click.option(
    "--out",
    "out_path",
    type=click.Path(dir_okay=False, path_type=Path),
    default=None,
    help="Write the solution U to this file instead of printing it.",
)
@json_option
@text_json_format_option
@add_common_options()
@click.pass_context
@exception_wrapper
def solve_cohom_cmd(
    ctx: click.Context,
    nf_path: Path,
    b_path: Path,
    m: int,
    method: str,
    out_path: Optional[Path],
    **kwargs: Any,
) -> int:
    """
    Solve J^{2m}([NF^i, U]) = B^i, i = 1..N, for a normalized U.

    NF_FILE holds the completely integrable normal form NF^i = E^i + N^i, B_FILE the
    nonresonant right-hand side, of degrees m+1..2m.
    """
    ctx_obj = ContextObj.get(ctx)
    run_config = ctx_obj.config.run
    nf_file = load_family_file(nf_path, run_config)
    b_file = load_family_file(b_path, run_config)
    if b_file.family.trunc_degree < 2 * m:
        raise TruncationError(
            f"B is known up to degree {b_file.family.trunc_degree},"
            f" the equation needs {2 * m}"
        )
    nf = load_normal_form(nf_file.family, m)
    B = b_file.family.jet(2 * m)

    methods = ["recursive", "spectral"] if method == "both" else [method]
    solutions = {name: SOLVERS[name](nf, B, m) for name in methods}
    U = solutions[methods[-1]]
    agree: Optional[bool] = None
    if method == "both":
        agree = solutions["recursive"] == solutions["spectral"]
    bracket_back_ok = forward_instance(nf, U, m) == B

    solution = Family([U], nf.n, 2 * m, nf.arithmetic)
    if out_path is not None:
        write_family_file(out_path, solution, nf_file.weights)

    ok = bracket_back_ok and agree is not False
    if ctx_obj.use_json:
        dct: Dict[str, Any] = {
            "m": m,
            "method": method,
            "terms": len(U),
            "bracket_back_ok": bracket_back_ok,
        }
        if agree is not None:
            dct["solvers_agree"] = agree
        if out_path is None:
            dct["solution"] = serialize_family(solution, nf_file.weights)
        else:
            dct["output"] = str(out_path)
        dct["ok"] = ok
        click.echo(json.dumps(dct))
    else:
        if agree is not None:
            click.echo(f"solvers agree: {str(agree).lower()}")
        click.echo(f"bracket back: {format_verdict(bracket_back_ok)}")
        click.echo(_solution_text(solution, out_path))
    return ExitCode.SUCCESS if ok else ExitCode.VERDICT_FAILED


def _solution_text(solution: Family, out_path: Optional[Path]) -> str:
    if out_path is not None:
        return f"wrote {out_path}"
    U: VectorField = solution.member(1)
    return f"U has {len(U)} terms\n" + serialize_family(solution).rstrip()
