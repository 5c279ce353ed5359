import json
from dataclasses import asdict
from typing import Any, Dict, List, Optional

import click

from birkhoff.cmd.utils.common_decorators import exception_wrapper
from birkhoff.cmd.utils.common_options import (
    add_common_options,
    json_option,
    text_json_format_option,
)
from birkhoff.cmd.utils.context_obj import ContextObj
from birkhoff.core.errors import ExitCode
from birkhoff.core.norms import InequalityCheck, InequalityReport
from birkhoff.core.text_utils import STYLE, format_table, format_text, format_verdict
from birkhoff.verticals.normal_form.scheme import (
    SchemeConstants,
    SequenceRow,
    sequence_lemma_audit,
    sequences,
)


SEQUENCE_HEADERS = ("k", "m", "q_m", "eps_k", "delta_k", "r_k", "d_k")
CHECK_HEADERS = ("check", "lhs", "rhs", "verdict")


def _check_dict(check: InequalityCheck) -> Dict[str, Any]:
    return {
        "name": check.name,
        "lhs": check.lhs,
        "rhs": check.rhs,
        "holds": check.holds,
    }


def format_audit_json(
    constants: SchemeConstants,
    rows: List[SequenceRow],
    report: InequalityReport,
    violations: List[str],
) -> str:
    return json.dumps(
        {
            "constants": {
                "b": constants.b,
                "c0": constants.c0,
                "c1": constants.c1,
                "r0": constants.r0,
                "r_infinity": constants.r_infinity,
            },
            "sequences": [asdict(row) for row in rows],
            "checks": [_check_dict(check) for check in report.checks],
            "radius_clauses": constants.radius_clauses(),
            "violations": violations,
            "ok": report.ok,
        }
    )


def format_audit_text(
    constants: SchemeConstants,
    rows: List[SequenceRow],
    report: InequalityReport,
    violations: List[str],
) -> str:
    lines = [
        f"b={constants.b!r} c0={constants.c0!r} c1={constants.c1!r}"
        f" r0={constants.r0!r} r_inf={constants.r_infinity!r}",
        "",
        format_text("Sequences", STYLE["heading"]),
        format_table(
            SEQUENCE_HEADERS,
            [[getattr(row, name) for name in SEQUENCE_HEADERS] for row in rows],
        ),
        "",
        format_text("Checks", STYLE["heading"]),
        format_table(
            CHECK_HEADERS,
            [
                [check.name, check.lhs, check.rhs, format_verdict(bool(check.holds))]
                for check in report.checks
            ],
        ),
    ]
    if violations:
        lines.append("")
        lines.append(format_text("Constraints on the constants", STYLE["heading"]))
        lines.extend(f"- {violation}" for violation in violations)
    return "\n".join(lines)


@click.command()
@click.option("--b", "b", type=float, default=20.0, show_default=True, help="b.")
@click.option("--c0", "c0", type=float, default=1.0, show_default=True, help="c0.")
@click.option(
    "--c1", "c1", type=float, default=None, help="c1. Defaults to 4^(b+2)/3."
)
@click.option(
    "--r0",
    "r0",
    type=float,
    default=None,
    help="r0. Defaults to half the smallest radius clause.",
)
@click.option(
    "--K",
    "K",
    type=click.IntRange(min=2),
    default=10,
    show_default=True,
    help="Last index of the table.",
)
@json_option
@text_json_format_option
@add_common_options()
@click.pass_context
@exception_wrapper
def audit_sequences_cmd(
    ctx: click.Context,
    b: float,
    c0: float,
    c1: Optional[float],
    r0: Optional[float],
    K: int,
    **kwargs: Any,
) -> int:
    """
    Print the sequences q_m, eps_k, delta_k, r_k and d_k of the degree-doubling scheme
    and check their closed forms and bounds.

    The constraints on b, c1 and r0 are listed but do not change the exit code: only
    the checks do.
    """
    if r0 is None:
        unit_radius = SchemeConstants(b=b, c0=c0, r0=1.0, c1=c1)
        r0 = min(1.0, 0.5 * min(unit_radius.radius_clauses().values()))
    constants = SchemeConstants(b=b, c0=c0, r0=r0, c1=c1)
    rows = sequences(K, constants)
    report = sequence_lemma_audit(K, constants)
    violations = constants.violations()

    if ContextObj.get(ctx).use_json:
        click.echo(format_audit_json(constants, rows, report, violations))
    else:
        click.echo(format_audit_text(constants, rows, report, violations))
    return ExitCode.SUCCESS if report.ok else ExitCode.VERDICT_FAILED
