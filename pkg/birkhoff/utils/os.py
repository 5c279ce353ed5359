import os
from typing import Callable, Optional, TypeVar


T = TypeVar("T")

FALSY_VALUES = frozenset({"", "0", "false", "no", "off"})


def _getenv(key: str, convert: Callable[[str], T]) -> Optional[T]:
    value = os.getenv(key)
    if value is None:
        return None
    try:
        return convert(value.strip())
    except ValueError:
        raise ValueError(f"invalid value for {key}: '{value}'") from None


def getenv_int(key: str, default: Optional[int] = None) -> Optional[int]:
    value = _getenv(key, int)
    return default if value is None else value


def getenv_bool(key: str, default: Optional[bool] = None) -> Optional[bool]:
    """An unset variable gives `default`. Any value but a falsy one is true."""
    value = _getenv(key, lambda text: text.lower() not in FALSY_VALUES)
    return default if value is None else value
