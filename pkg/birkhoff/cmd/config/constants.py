from dataclasses import dataclass, fields
from typing import Tuple

from birkhoff.core.config.user_config import RunConfig


@dataclass
class ConfigField:
    """Meta-information about a config field, used by `birkhoff config` commands to
    manipulate configuration files.
    """

    # The name of the field on the command line
    name: str

    # Attribute names leading to the field from UserConfig
    path: Tuple[str, ...]


# All editable config fields: the top-level flags, then the run settings
_FIELDS = (
    ConfigField("verbose", ("verbose",)),
    ConfigField("debug", ("debug",)),
) + tuple(ConfigField(x.name, ("run", x.name)) for x in fields(RunConfig))

FIELDS = {x.name: x for x in _FIELDS}

FIELD_NAMES = sorted(FIELDS.keys())

FIELD_NAMES_DOC = "Supported keys:\n" + "\n".join(f"- `{x}`" for x in FIELD_NAMES)
