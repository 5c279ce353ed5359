#!/usr/bin/python3
import logging
import os
import sys
from io import TextIOWrapper
from pathlib import Path
from typing import Any, List, Optional

import click

from birkhoff import __version__
from birkhoff.cmd.audit_sequences import audit_sequences_cmd
from birkhoff.cmd.check_commute import check_commute_cmd
from birkhoff.cmd.config import config_group
from birkhoff.cmd.kp import kp_cmd
from birkhoff.cmd.normalize import normalize_cmd
from birkhoff.cmd.solve_cohom import solve_cohom_cmd
from birkhoff.cmd.split import split_cmd
from birkhoff.cmd.utils.common_options import add_common_options
from birkhoff.cmd.utils.context_obj import ContextObj
from birkhoff.cmd.utils.debug import setup_debug_mode
from birkhoff.core import ui
from birkhoff.core.config import Config
from birkhoff.core.env_utils import load_dot_env
from birkhoff.core.ui import ensure_level, log_utils
from birkhoff.core.ui.rich import RichEngineUI
from birkhoff.utils.os import getenv_bool


logger = logging.getLogger(__name__)


@click.group(
    context_settings={"help_option_names": ["-h", "--help"]},
    commands={
        "normalize": normalize_cmd,
        "check-commute": check_commute_cmd,
        "kp": kp_cmd,
        "audit-sequences": audit_sequences_cmd,
        "split": split_cmd,
        "solve-cohom": solve_cohom_cmd,
        "config": config_group,
    },
)
@click.option(
    "-c",
    "--config-path",
    type=click.Path(exists=True, dir_okay=False, resolve_path=True, path_type=Path),
    is_eager=True,
    help="Set a custom config file. Ignores local and global config files.",
)
@add_common_options()
@click.version_option(version=__version__)
@click.pass_context
def cli(
    ctx: click.Context,
    *,
    config_path: Optional[Path],
    **kwargs: Any,
) -> None:
    """Normalize commuting families of polynomial vector fields."""
    load_dot_env()

    # Create ContextObj, load config
    ctx.obj = ctx_obj = ContextObj()
    ctx_obj.config = Config(config_path)
    user_config = ctx_obj.config.user_config

    # If the config wants a higher UI level, set it now
    if user_config.debug and ui.get_level() < ui.Level.DEBUG:
        setup_debug_mode()
    elif user_config.verbose and ui.get_level() < ui.Level.VERBOSE:
        ensure_level(ui.Level.VERBOSE)

    _set_color(ctx)


def _set_color(ctx: click.Context):
    """
    Override the default click color setting: NO_COLOR disables colors (see
    https://no-color.org/), a CI environment enables them.
    """
    ci_env_vars = [
        "CI",
        "GITLAB_CI",
        "GITHUB_ACTIONS",
    ]

    if os.getenv("NO_COLOR"):
        ctx.color = False
    elif any(os.getenv(env) for env in ci_env_vars):
        ctx.color = True


@cli.result_callback()
@click.pass_context
def before_exit(ctx: click.Context, exit_code: int, *args: Any, **kwargs: Any) -> None:
    """
    Launched once the subcommand has run. The argument exit_code is the result of
    the subcommand.
    """
    logger.debug("exit_code=%d", exit_code)
    sys.exit(exit_code)


def force_utf8_output():
    """
    Force stdout and stderr to UTF-8: reports contain non-ASCII characters, and
    Windows does not use UTF-8 when they are not the console.
    """
    for out in sys.stdout, sys.stderr:
        # pyright is not sure sys.stdout and stderr are TextIOWrapper
        if isinstance(out, TextIOWrapper):
            out.reconfigure(encoding="utf-8")


def main(args: Optional[List[str]] = None) -> Any:
    """
    Wrapper around cli.main() to handle the BIRKHOFF_CRASH_LOG variable.

    `args` is only used by unit-tests.
    """
    log_utils.disable_logs()
    if sys.stderr.isatty():
        ui.set_ui(RichEngineUI())

    force_utf8_output()

    show_crash_log = getenv_bool("BIRKHOFF_CRASH_LOG")
    return cli.main(args, prog_name="birkhoff", standalone_mode=not show_crash_log)


if __name__ == "__main__":
    sys.exit(main())
