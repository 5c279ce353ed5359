import logging
from dataclasses import field
from pathlib import Path
from typing import Any, Dict, Optional, Tuple

import marshmallow_dataclass
from marshmallow import ValidationError, validate

from birkhoff.core.config.utils import (
    find_global_config_path,
    find_local_config_path,
    load_yaml_dict,
    remove_common_dict_items,
    replace_dash_in_keys,
    save_yaml_dict,
    update_dict_from_other,
)
from birkhoff.core.constants import DEFAULT_LOCAL_CONFIG_PATH, DEFAULT_ZERO_THRESHOLD
from birkhoff.core.errors import ParseError, format_validation_error
from birkhoff.core.types import FilteredConfig


logger = logging.getLogger(__name__)
CURRENT_CONFIG_VERSION = 1

MODES = ("rational", "float")


@marshmallow_dataclass.dataclass
class RunConfig(FilteredConfig):
    """
    Settings of a normalization run. `None` constants are derived from the input
    family (see SchemeConstants.for_instance()).
    """

    steps: int = field(default=3, metadata={"validate": validate.Range(min=1)})
    trunc_degree: Optional[int] = field(
        default=None, metadata={"validate": validate.Range(min=1)}
    )
    mode: str = field(default="rational", metadata={"validate": validate.OneOf(MODES)})
    zero_threshold: float = field(
        default=DEFAULT_ZERO_THRESHOLD, metadata={"validate": validate.Range(min=0)}
    )
    seed: int = 0
    samples: int = field(default=64, metadata={"validate": validate.Range(min=1)})
    b: float = 20.0
    c0: Optional[float] = None
    c1: Optional[float] = None
    r0: Optional[float] = None
    # w1_j = w2_j = weight_ratio ** j when set, unit weights otherwise
    weight_ratio: Optional[float] = field(
        default=None, metadata={"validate": validate.Range(min=0, min_inclusive=False)}
    )
    audit_inequalities: bool = True
    audit_remainder: bool = True

    @property
    def effective_trunc_degree(self) -> int:
        return self.trunc_degree or 2 ** (self.steps + 1)


RunConfig.SCHEMA = marshmallow_dataclass.class_schema(RunConfig)()


@marshmallow_dataclass.dataclass
class UserConfig(FilteredConfig):
    """
    Holds all the settings defined in the .birkhoff.yaml files (local and global).
    """

    verbose: bool = False
    debug: bool = False
    run: RunConfig = field(default_factory=RunConfig)

    def save(self, config_path: Path) -> None:
        save_yaml_dict(self.to_config_dict(), config_path)

    def to_config_dict(self) -> Dict[str, Any]:
        dct = remove_common_dict_items(
            self.to_dict(), UserConfig.from_dict({}).to_dict()
        )
        dct["version"] = CURRENT_CONFIG_VERSION
        return dct

    @classmethod
    def load(cls, config_path: Optional[Path] = None) -> Tuple["UserConfig", Path]:
        """
        Load the user config files:
        - global configuration file (in the home or the platform config directory)
        - local configuration file (in the current directory)

        Returns a UserConfig instance, and the path where updates should be saved
        """
        if config_path:
            logger.debug("Loading custom config from %s", config_path)
            dct = _load_config_dict(config_path)
            return UserConfig.from_config_dict(dct), config_path

        user_config_dict: Dict[str, Any] = {}
        global_config_path = find_global_config_path()
        if global_config_path:
            update_dict_from_other(
                user_config_dict, _load_config_dict(global_config_path)
            )
            logger.debug("Loaded global config from %s", global_config_path)
        else:
            logger.debug("No global config")

        local_config_path = find_local_config_path()
        if local_config_path:
            update_dict_from_other(
                user_config_dict, _load_config_dict(local_config_path)
            )
            config_path = local_config_path
            logger.debug("Loaded local config from %s", local_config_path)
        else:
            logger.debug("No local config")

        user_config = UserConfig.from_config_dict(user_config_dict)
        if config_path is None:
            config_path = Path(DEFAULT_LOCAL_CONFIG_PATH)
        return user_config, config_path

    @staticmethod
    def from_config_dict(data: Dict[str, Any]) -> "UserConfig":
        """Create a UserConfig instance. In case of error, format it and raise
        ParseError."""
        try:
            return UserConfig.from_dict(data)
        except ValidationError as exc:
            message = format_validation_error(exc)
            raise ParseError(message) from exc


UserConfig.SCHEMA = marshmallow_dataclass.class_schema(UserConfig)()


def _load_config_dict(config_path: Path) -> Dict[str, Any]:
    try:
        dct = load_yaml_dict(config_path) or {"version": CURRENT_CONFIG_VERSION}
    except ValueError as exc:
        raise ParseError(str(exc)) from exc

    replace_dash_in_keys(dct)

    config_version = dct.pop("version", CURRENT_CONFIG_VERSION)
    if config_version != CURRENT_CONFIG_VERSION:
        raise ParseError(
            f"{config_path}: don't know how to load config version {config_version}"
        )
    return dct
