import json
from typing import Any, Dict

import click

from birkhoff.cmd.utils.common_options import (
    add_common_options,
    json_option,
    text_json_format_option,
)
from birkhoff.cmd.utils.context_obj import ContextObj

from .constants import FIELDS


@click.command()
@click.pass_context
@json_option
@text_json_format_option
@add_common_options()
def config_list_cmd(ctx: click.Context, **kwargs: Any) -> int:
    """
    Print the list of configuration keys and values.
    """
    ctx_obj = ContextObj.get(ctx)
    config = ctx_obj.config

    values: Dict[str, Any] = {}
    for config_field in FIELDS.values():
        value: Any = config.user_config
        for name in config_field.path:
            value = getattr(value, name)
        values[config_field.name] = value

    if ctx_obj.use_json:
        click.echo(
            json.dumps({"config_path": str(config.config_path), "values": values})
        )
    else:
        message_lines = [
            f"{key}: {'not set' if value is None else value}"
            for key, value in values.items()
        ]
        click.echo("\n".join(message_lines))

    return 0
