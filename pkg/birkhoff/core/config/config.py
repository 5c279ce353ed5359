import logging
from pathlib import Path
from typing import Optional

from birkhoff.core.config.user_config import RunConfig, UserConfig


logger = logging.getLogger(__name__)


class Config:
    """
    Top-level config class: the merged UserConfig and where to save it.
    """

    __slots__ = ["user_config", "_config_path"]

    user_config: UserConfig
    _config_path: Path

    def __init__(self, config_path: Optional[Path] = None):
        self.user_config, self._config_path = UserConfig.load(config_path=config_path)

    def save(self) -> None:
        self.user_config.save(self._config_path)

    @property
    def config_path(self) -> Path:
        return self._config_path

    @property
    def run(self) -> RunConfig:
        return self.user_config.run
