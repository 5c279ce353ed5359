from typing import Any

import click

from birkhoff.cmd.utils.common_options import add_common_options
from birkhoff.cmd.utils.context_obj import ContextObj

from .constants import FIELD_NAMES, FIELD_NAMES_DOC, FIELDS


@click.command(
    help=f"""
Print the value of the given configuration key, as seen by the current directory.

{FIELD_NAMES_DOC}"""
)
@click.argument(
    "field_name",
    nargs=1,
    type=click.Choice(FIELD_NAMES),
    required=True,
    metavar="KEY",
)
@add_common_options()
@click.pass_context
def config_get_cmd(ctx: click.Context, field_name: str, **kwargs: Any) -> int:
    value: Any = ContextObj.get(ctx).config.user_config
    for name in FIELDS[field_name].path:
        value = getattr(value, name)

    if value is None:
        value = "not set"
    click.echo(f"{field_name}: {value}")
    return 0
