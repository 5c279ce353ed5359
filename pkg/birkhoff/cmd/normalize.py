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
from birkhoff.cmd.utils.run_settings import (
    constants_for,
    run_options_for,
    weights_for,
)
from birkhoff.core import ui
from birkhoff.core.errors import ExitCode
from birkhoff.core.family_file import serialize_family
from birkhoff.core.text_utils import STYLE, format_table, format_text, format_verdict
from birkhoff.verticals.normal_form.newton import IterationState, RunResult, run
from birkhoff.verticals.normal_form.output import ledger_dicts, write_run_outputs


LEDGER_HEADERS = ("k", "m", "norm_R", "norm_N", "norm_DN", "eps_k", "r_k", "i.1-3")


def _verdicts(row: Dict[str, Any]) -> str:
    values = (row["i1_ok"], row["i2_ok"], row["i3_ok"])
    if all(value is None for value in values):
        return "-"
    return " ".join(format_verdict(bool(value)) for value in values)


def format_run_text(result: RunResult, outputs: List[Path]) -> str:
    rows = ledger_dicts(result.ledger)
    lines = [
        format_text("Ledger", STYLE["heading"]),
        format_table(
            LEDGER_HEADERS,
            [
                [row[key] for key in LEDGER_HEADERS[:-1]] + [_verdicts(row)]
                for row in rows
            ],
        ),
        "",
        format_text("Normal form", STYLE["heading"]),
    ]
    if outputs:
        lines.extend(f"wrote {path}" for path in outputs)
    else:
        lines.append(serialize_family(result.nf.fields(), result.weights).rstrip())
    lines.append(
        f"remainder min degree: {result.state.remainder.min_degree}"
        f" (normalized up to degree {result.state.m})"
    )
    return "\n".join(lines)


def format_run_json(result: RunResult, outputs: List[Path]) -> str:
    constants = result.constants
    dct: Dict[str, Any] = {
        "steps": result.state.k,
        "trunc_degree": result.state.trunc_degree,
        "constants": {
            "b": constants.b,
            "c0": constants.c0,
            "c1": constants.c1,
            "r0": constants.r0,
        },
        "ledger": ledger_dicts(result.ledger),
        "remainder_min_degree": result.state.remainder.min_degree,
        "ok": result.ok,
    }
    if outputs:
        dct["outputs"] = [str(path) for path in outputs]
    else:
        dct["normal_form"] = serialize_family(result.nf.fields(), result.weights)
    return json.dumps(dct)


@click.command()
@click.argument(
    "family_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    metavar="FAMILY",
)
@click.option(
    "--out",
    "prefix",
    metavar="PREFIX",
    help="Write PREFIX.nf.vfam, PREFIX.generators.vfam, PREFIX.ledger.jsonl and"
    " PREFIX.norms.csv.",
)
@click.option(
    "--method",
    type=click.Choice(["spectral", "recursive"]),
    default="spectral",
    show_default=True,
    help="Solver of the cohomological equations.",
)
@add_run_options()
@add_constant_options()
@json_option
@text_json_format_option
@add_common_options()
@click.pass_context
@exception_wrapper
def normalize_cmd(
    ctx: click.Context,
    family_path: Path,
    prefix: Optional[str],
    method: str,
    **kwargs: Any,
) -> int:
    """
    Normalize the commuting family stored in FAMILY.

    The family must be X^i = E^i + F^i, i = 1..n, with F^i of degree ≥ 2. Exits with 1
    when one of the step inequalities fails.
    """
    ctx_obj = ContextObj.get(ctx)
    run_config = ctx_obj.config.run
    family_file = load_family_file(family_path, run_config)
    family = family_file.family
    weights = weights_for(family.n, run_config, family_file.weights)
    constants = constants_for(family, run_config, weights)
    options = run_options_for(run_config, method)

    with ui.create_progress(options.steps) as progress:

        def on_step(state: IterationState) -> None:
            ui.display_verbose(f"step {state.k}: normalized up to degree {state.m}")
            progress.step_done(state.m)

        options.on_step = on_step
        result = run(family, options, constants, weights)

    outputs: List[Path] = []
    if prefix:
        outputs = write_run_outputs(
            prefix, result, samples=run_config.samples, seed=run_config.seed
        )

    if ctx_obj.use_json:
        click.echo(format_run_json(result, outputs))
    else:
        click.echo(format_run_text(result, outputs))
    return ExitCode.SUCCESS if result.ok else ExitCode.VERDICT_FAILED
