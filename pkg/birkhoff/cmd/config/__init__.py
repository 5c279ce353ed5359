"""
`birkhoff config`: read and write the global configuration file.
"""

from typing import Any

import click

from birkhoff.cmd.utils.common_options import add_common_options

from .config_get import config_get_cmd
from .config_list import config_list_cmd
from .config_set import config_set_cmd
from .config_unset import config_unset_cmd


@click.group()
@add_common_options()
def config_group(**kwargs: Any) -> None:
    """Show or change the configuration.

    Keys are the fields of the `run` section and `verbose`. Dashes and underscores
    can be used interchangeably in key names.
    """


for name, command in (
    ("list", config_list_cmd),
    ("get", config_get_cmd),
    ("set", config_set_cmd),
    ("unset", config_unset_cmd),
):
    config_group.add_command(command, name=name)
