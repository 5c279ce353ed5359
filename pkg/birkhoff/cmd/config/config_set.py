from typing import Any, Dict, Optional

import click

from birkhoff.cmd.utils.common_decorators import exception_wrapper
from birkhoff.cmd.utils.common_options import add_common_options
from birkhoff.core.config.user_config import UserConfig
from birkhoff.core.config.utils import find_global_config_path

from .constants import FIELD_NAMES, FIELD_NAMES_DOC, FIELDS, ConfigField


def set_user_config_field(field: ConfigField, value: Optional[str]) -> None:
    """
    Store `value` in the global config file. The value goes through the config
    schema, so "3" becomes 3 for an int field and invalid values raise ParseError.
    """
    config_path = find_global_config_path(to_write=True)
    user_config, _ = UserConfig.load(config_path)
    dct = user_config.to_config_dict()
    dct.pop("version")
    target: Dict[str, Any] = dct
    for name in field.path[:-1]:
        target = target.setdefault(name, {})
    if value is None:
        target.pop(field.path[-1], None)
    else:
        target[field.path[-1]] = value
    UserConfig.from_config_dict(dct).save(config_path)


@click.command(
    help=f"""Update the value of the given configuration key in the global
configuration file.

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
@click.argument("value", nargs=1, type=click.STRING, required=True)
@add_common_options()
@click.pass_context
@exception_wrapper
def config_set_cmd(
    ctx: click.Context,
    field_name: str,
    value: str,
    **kwargs: Any,
) -> int:
    set_user_config_field(FIELDS[field_name], value)
    return 0
