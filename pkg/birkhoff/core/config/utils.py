from pathlib import Path
from typing import Any, Dict, Literal, Optional, Union, overload

import yaml
import yaml.parser
import yaml.scanner

from birkhoff.core.constants import DEFAULT_CONFIG_FILENAME, USER_CONFIG_FILENAMES
from birkhoff.core.dirs import get_config_dir, get_user_home_dir
from birkhoff.core.errors import UnexpectedError


def replace_dash_in_keys(data: Dict[str, Any]) -> None:
    """Accept `trunc-degree` as a spelling of `trunc_degree`, recursively. The
    underscore version wins when both are present."""
    for key, value in list(data.items()):
        if isinstance(value, dict):
            replace_dash_in_keys(value)
        if "-" in key:
            dash_value = data.pop(key)
            data.setdefault(key.replace("-", "_"), dash_value)


def load_yaml_dict(path: Union[str, Path]) -> Optional[Dict[str, Any]]:
    path = Path(path)
    if not path.exists():
        return None

    with path.open() as f:
        try:
            data = yaml.safe_load(f) or {}
        except (yaml.parser.ParserError, yaml.scanner.ScannerError) as e:
            message = f"{path} is not a valid YAML file:\n{str(e)}"
            raise ValueError(message)

    if not isinstance(data, dict):
        raise ValueError(f"{path} should be a dictionary.")

    return data


def save_yaml_dict(data: Dict[str, Any], path: Union[str, Path]) -> None:
    p = Path(path)
    p.parent.mkdir(parents=True, exist_ok=True)
    try:
        with p.open("w") as f:
            f.write(yaml.dump(data, indent=2, default_flow_style=False))
    except Exception as e:
        raise UnexpectedError(f"Failed to save config to {path}:\n{str(e)}") from e


def _global_candidates():
    home = get_user_home_dir()
    for filename in USER_CONFIG_FILENAMES:
        yield home / filename
    yield get_config_dir() / "config.yaml"


@overload
def find_global_config_path(*, to_write: Literal[False] = False) -> Optional[Path]: ...


@overload
def find_global_config_path(*, to_write: Literal[True]) -> Path: ...


def find_global_config_path(*, to_write: bool = False) -> Optional[Path]:
    """
    Returns the path to the user global config file: one of the dot files in the
    home directory, or `config.yaml` in the platform config directory.
    If there is no such file, returns None, or the default home file if `to_write`
    is True.
    """
    for path in _global_candidates():
        if path.exists():
            return path
    return get_user_home_dir() / DEFAULT_CONFIG_FILENAME if to_write else None


def find_local_config_path() -> Optional[Path]:
    for filename in USER_CONFIG_FILENAMES:
        path = Path(filename)
        if path.exists():
            return path
    return None


def update_dict_from_other(dct: Dict[str, Any], other: Dict[str, Any]) -> None:
    """
    Merge values from `other` dict into `dct`, in place. Nested dicts are merged,
    None values are ignored.
    """
    for key, value in other.items():
        if value is None:
            continue
        if isinstance(value, dict):
            target = dct.setdefault(key, {})
            if not isinstance(target, dict):
                raise UnexpectedError(f"Failed to load configuration on key '{key}'")
            update_dict_from_other(target, value)
        else:
            dct[key] = value


def remove_common_dict_items(
    dct: Dict[str, Any], reference_dct: Dict[str, Any]
) -> Dict[str, Any]:
    """
    Returns a copy of `dct` with all items already in `reference_dct` removed.
    """
    result_dct = dict()
    for key, value in dct.items():
        reference_value = reference_dct.get(key)

        if isinstance(value, dict):
            value = remove_common_dict_items(value, reference_value or {})
            if not value:
                continue
        elif value == reference_value:
            continue

        result_dct[key] = value

    return result_dct
