import os

from birkhoff.utils.os import getenv_int


CPU_COUNT = os.cpu_count() or 1


def _get_max_workers() -> int:
    return getenv_int("BIRKHOFF_MAX_WORKERS") or 32


MAX_WORKERS = max(1, min(CPU_COUNT, _get_max_workers()))

DEFAULT_CONFIG_FILENAME = ".birkhoff.yaml"
USER_CONFIG_FILENAMES = [".birkhoff", ".birkhoff.yml", DEFAULT_CONFIG_FILENAME]
DEFAULT_LOCAL_CONFIG_PATH = os.path.join(".", DEFAULT_CONFIG_FILENAME)

FAMILY_FORMAT_TAG = "VFAM/1"
FAMILY_FILE_SUFFIX = ".vfam"

# Coefficients whose modulus is at or below this value are dropped in float mode
DEFAULT_ZERO_THRESHOLD = 1e-12

# Relative slack granted to every norm inequality check
NORM_RELATIVE_SLACK = 1e-9

# In float mode, two coefficients a and b agree when
# |a - b| ≤ FLOAT_RELATIVE_TOLERANCE · max(1, |a|, |b|)
FLOAT_RELATIVE_TOLERANCE = 1e-9
