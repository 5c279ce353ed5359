from .config import Config
from .user_config import RunConfig, UserConfig


__all__ = ["Config", "RunConfig", "UserConfig"]
