import json
from pathlib import Path
from typing import Any, List, Optional, Tuple

import click

from birkhoff.cmd.utils.common_decorators import exception_wrapper
from birkhoff.cmd.utils.common_options import (
    add_common_options,
    json_option,
    text_json_format_option,
)
from birkhoff.cmd.utils.context_obj import ContextObj
from birkhoff.cmd.utils.files import load_family_file
from birkhoff.core.algebra.lie import commutator_degrees
from birkhoff.core.errors import ExitCode
from birkhoff.core.text_utils import STYLE, format_text, format_verdict, pluralize


Pair = Tuple[int, int, Optional[int]]


def first_failure(pairs: List[Pair]) -> Optional[Pair]:
    return next((pair for pair in pairs if pair[2] is not None), None)


@click.command()
@click.argument(
    "family_path",
    type=click.Path(exists=True, dir_okay=False, path_type=Path),
    metavar="FAMILY",
)
@click.option(
    "--deg",
    "degree",
    type=click.IntRange(min=1),
    default=None,
    help="Check the brackets up to this degree. Defaults to the truncation degree.",
)
@json_option
@text_json_format_option
@add_common_options()
@click.pass_context
@exception_wrapper
def check_commute_cmd(
    ctx: click.Context, family_path: Path, degree: Optional[int], **kwargs: Any
) -> int:
    """
    Check that the members of the family stored in FAMILY pairwise commute.

    Reports the first pair whose bracket does not vanish, with the lowest degree of
    the bracket.
    """
    ctx_obj = ContextObj.get(ctx)
    family = load_family_file(family_path, ctx_obj.config.run).family
    pairs = commutator_degrees(family, degree)
    failure = first_failure(pairs)
    checked_degree = family.trunc_degree if degree is None else degree

    if ctx_obj.use_json:
        click.echo(
            json.dumps(
                {
                    "degree": checked_degree,
                    "pairs": [
                        {"i": i, "j": j, "lowest_degree": lowest}
                        for i, j, lowest in pairs
                    ],
                    "first_failure": None
                    if failure is None
                    else {"i": failure[0], "j": failure[1], "degree": failure[2]},
                    "ok": failure is None,
                }
            )
        )
    else:
        click.echo(
            f"{len(pairs)} {pluralize('pair', len(pairs))} checked up to degree"
            f" {checked_degree}: {format_verdict(failure is None)}"
        )
        if failure is not None:
            i, j, lowest = failure
            click.echo(
                f"[X^{i}, X^{j}] has a term of degree "
                + format_text(str(lowest), STYLE["degree"])
            )
    return ExitCode.SUCCESS if failure is None else ExitCode.VERDICT_FAILED
