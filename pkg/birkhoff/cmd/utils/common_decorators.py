from functools import wraps
from typing import Callable, TypeVar

import click
from typing_extensions import Concatenate, ParamSpec

from birkhoff.cmd.utils.context_obj import ContextObj
from birkhoff.core.errors import handle_exception


T = TypeVar("T")
P = ParamSpec("P")


def exception_wrapper(
    func: Callable[Concatenate[click.Context, P], int]
) -> Callable[Concatenate[click.Context, P], int]:
    """
    Turn the exceptions raised by a command into an error message and an exit code.
    The command must take the click context as first argument: with `--json` the
    error is also printed as a JSON object.
    """

    @wraps(func)
    def wrapper(ctx: click.Context, *args: P.args, **kwargs: P.kwargs) -> int:
        try:
            return func(ctx, *args, **kwargs)
        except Exception as error:
            use_json = ctx.obj is not None and ContextObj.get(ctx).use_json
            return handle_exception(error, use_json=use_json)

    return wrapper
