import json
from pathlib import Path
from typing import Any, List, Optional

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
from birkhoff.core.errors import ExitCode
from birkhoff.core.family_file import write_family_file
from birkhoff.core.resonance import split
from birkhoff.core.text_utils import format_table


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
    help="Write PREFIX.res.vfam and PREFIX.nres.vfam.",
)
@json_option
@text_json_format_option
@add_common_options()
@click.pass_context
@exception_wrapper
def split_cmd(
    ctx: click.Context, family_path: Path, prefix: Optional[str], **kwargs: Any
) -> int:
    """
    Split every member of the family stored in FAMILY into its resonant and
    nonresonant parts, with respect to E^1..E^N.
    """
    ctx_obj = ContextObj.get(ctx)
    family_file = load_family_file(family_path, ctx_obj.config.run)
    family = family_file.family
    parts = [split(member, family.N) for member in family]
    res = Family([p[0] for p in parts], family.n, family.trunc_degree, family.arithmetic)
    nres = Family(
        [p[1] for p in parts], family.n, family.trunc_degree, family.arithmetic
    )

    outputs: List[Path] = []
    if prefix:
        outputs = [Path(f"{prefix}.res.vfam"), Path(f"{prefix}.nres.vfam")]
        write_family_file(outputs[0], res, family_file.weights)
        write_family_file(outputs[1], nres, family_file.weights)

    counts = [
        (i, len(res_part), len(nres_part))
        for i, (res_part, nres_part) in enumerate(zip(res, nres), start=1)
    ]
    if ctx_obj.use_json:
        click.echo(
            json.dumps(
                {
                    "members": [
                        {"i": i, "res_terms": res_count, "nres_terms": nres_count}
                        for i, res_count, nres_count in counts
                    ],
                    "outputs": [str(path) for path in outputs],
                }
            )
        )
    else:
        click.echo(format_table(("i", "res terms", "nres terms"), counts))
        for path in outputs:
            click.echo(f"wrote {path}")
    return ExitCode.SUCCESS
