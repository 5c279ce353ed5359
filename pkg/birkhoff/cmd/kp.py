import json
from pathlib import Path
from typing import Any, Dict, List, Optional

import click

from birkhoff.cmd.utils.common_decorators import exception_wrapper
from birkhoff.cmd.utils.common_options import (
    add_common_options,
    add_constant_options,
    add_run_options,
    json_option,
    text_json_format_option,
)
from birkhoff.cmd.utils.context_obj import ContextObj
from birkhoff.cmd.utils.files import load_family_file
from birkhoff.cmd.utils.run_settings import constants_for, run_options_for, weights_for
from birkhoff.core import ui
from birkhoff.core.errors import ExitCode
from birkhoff.core.family_file import write_family_file
from birkhoff.core.text_utils import format_verdict
from birkhoff.verticals.kp.near_identity import (
    KPReport,
    NearIdentityMap,
    actions,
    hamiltonian_kp_fields,
    kp_fields,
    kp_hypothesis_check,
)
from birkhoff.verticals.normal_form.birkhoff import BirkhoffReport, birkhoff_check
from birkhoff.verticals.normal_form.newton import RunResult, run
from birkhoff.verticals.normal_form.output import write_run_outputs


def _kp_report_dict(report: KPReport) -> Dict[str, Any]:
    return {
        "degree": report.degree,
        "min_degree_ok": report.min_degree_ok,
        "pairs": [
            {"j": j, "k": k, "lowest_degree": lowest} for j, k, lowest in report.pairs
        ],
        "kp2": report.kp2,
        "ok": report.ok,
    }


def _birkhoff_dict(j: int, report: BirkhoffReport) -> Dict[str, Any]:
    return {
        "action": j,
        "degree": report.degree,
        "violations": [str(index) for index, _ in report.violations],
        "ok": report.ok,
    }


def _format_text(
    report: KPReport,
    cross_path_ok: bool,
    result: Optional[RunResult],
    checks: List[BirkhoffReport],
    outputs: List[Path],
) -> str:
    lines = [f"KP1 up to degree {report.degree}: {format_verdict(report.ok)}"]
    if not report.min_degree_ok:
        lines.append("  G has terms of degree < 2")
    failure = report.first_failure
    if failure is not None:
        j, k, lowest = failure
        lines.append(f"  {{I_{j}, I_{k}}} has a term of degree {lowest}")
    lines.append(f"KP2: {report.kp2}")
    lines.append(f"vector fields cross-check: {format_verdict(cross_path_ok)}")
    if result is not None:
        lines.append(
            f"normalize: {result.state.k} steps, ledger {format_verdict(result.ok)}"
        )
        for j, check in enumerate(checks, start=1):
            lines.append(
                f"birkhoff check of I_{j} up to degree {check.degree}:"
                f" {format_verdict(check.ok)}"
            )
            for index, _ in check.violations[:5]:
                lines.append(f"  non-action monomial {index}")
    lines.extend(f"wrote {path}" for path in outputs)
    return "\n".join(lines)


@click.command()
@click.argument(
    "map_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    metavar="MAP",
)
@click.option(
    "--deg",
    "degree",
    type=click.IntRange(min=1),
    default=None,
    help="Check the Poisson brackets of the actions up to this degree.",
)
@click.option(
    "--normalize",
    "normalize",
    is_flag=True,
    default=False,
    help="Normalize the family of the actions and run the Birkhoff check on each"
    " action.",
)
@click.option(
    "--out",
    "prefix",
    metavar="PREFIX",
    help="Write PREFIX.fields.vfam, and the normalize outputs with --normalize.",
)
@add_run_options()
@add_constant_options()
@json_option
@text_json_format_option
@add_common_options()
@click.pass_context
@exception_wrapper
def kp_cmd(
    ctx: click.Context,
    map_path: Path,
    degree: Optional[int],
    normalize: bool,
    prefix: Optional[str],
    **kwargs: Any,
) -> int:
    """
    Check a near-identity map Ψ = 1 + G stored in MAP.

    MAP holds one member whose e_k component is G^k. The actions I_j = Ψ_j Ψ_{-j}
    must pairwise Poisson-commute; the family i·X_{I_j} is then built and, with
    --normalize, brought to normal form.
    """
    ctx_obj = ContextObj.get(ctx)
    run_config = ctx_obj.config.run
    map_file = load_family_file(map_path, run_config)
    psi = NearIdentityMap.from_family(map_file.family)

    report = kp_hypothesis_check(psi, degree)
    family = kp_fields(psi)
    cross_path_ok = family == hamiltonian_kp_fields(psi)
    ok = report.ok and cross_path_ok

    outputs: List[Path] = []
    if prefix:
        fields_path = Path(f"{prefix}.fields.vfam")
        write_family_file(fields_path, family, map_file.weights)
        outputs.append(fields_path)

    result: Optional[RunResult] = None
    checks: List[BirkhoffReport] = []
    if normalize:
        if not report.ok:
            ui.display_warning("the actions do not commute, normalizing anyway")
        weights = weights_for(family.n, run_config, map_file.weights)
        constants = constants_for(family, run_config, weights)
        options = run_options_for(run_config)
        with ui.create_progress(options.steps) as progress:
            options.on_step = lambda state: progress.step_done(state.m)
            result = run(family, options, constants, weights)
        checks = [
            birkhoff_check(action, result.generators, family=family)
            for action in actions(psi)
        ]
        ok = ok and result.ok and all(check.ok for check in checks)
        if prefix:
            outputs.extend(
                write_run_outputs(
                    prefix, result, samples=run_config.samples, seed=run_config.seed
                )
            )

    if ctx_obj.use_json:
        dct: Dict[str, Any] = {
            "kp1": _kp_report_dict(report),
            "cross_path_ok": cross_path_ok,
        }
        if result is not None:
            dct["ledger_ok"] = result.ok
            dct["birkhoff"] = [
                _birkhoff_dict(j, check) for j, check in enumerate(checks, start=1)
            ]
        if outputs:
            dct["outputs"] = [str(path) for path in outputs]
        dct["ok"] = ok
        click.echo(json.dumps(dct))
    else:
        click.echo(_format_text(report, cross_path_ok, result, checks, outputs))
    return ExitCode.SUCCESS if ok else ExitCode.VERDICT_FAILED
