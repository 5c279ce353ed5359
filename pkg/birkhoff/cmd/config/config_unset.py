from typing import Any

import click

from birkhoff.cmd.utils.common_decorators import exception_wrapper
from birkhoff.cmd.utils.common_options import add_common_options

from .config_set import set_user_config_field
from .constants import FIELD_NAMES, FIELD_NAMES_DOC, FIELDS


@click.command(
    help=f"""Remove the value of the given configuration key from the global
configuration file, restoring its default.

{FIELD_NAMES_DOC}
"""
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
@exception_wrapper
def config_unset_cmd(ctx: click.Context, field_name: str, **kwargs: Any) -> int:
    set_user_config_field(FIELDS[field_name], None)
    return 0
