import logging
from pathlib import Path

from birkhoff.core.algebra.coefficients import Arithmetic, Mode
from birkhoff.core.algebra.family import Family
from birkhoff.core.config.user_config import RunConfig
from birkhoff.core.family_file import FamilyFile, read_family_file


logger = logging.getLogger(__name__)


def load_family_file(path: Path, run_config: RunConfig) -> FamilyFile:
    """
    Read a VFAM/1 file. The `mode` setting wins over the mode of the file when they
    differ: rational coefficients are then converted to floats, the other way round
    is refused.
    """
    family_file = read_family_file(path, run_config.zero_threshold)
    family = family_file.family
    mode = Mode(run_config.mode)
    if mode == Mode.FLOAT and family.arithmetic.exact:
        logger.debug("converting %s to float mode", path)
        arithmetic = Arithmetic(mode, run_config.zero_threshold)
        family_file.family = Family(
            [member.to_float(arithmetic) for member in family],
            family.n,
            family.trunc_degree,
            arithmetic,
        )
    return family_file
