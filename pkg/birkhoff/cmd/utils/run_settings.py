"""
Turn the `run` section of the configuration into the objects the engine takes.
"""

from typing import Optional

from birkhoff.core.algebra.family import Family
from birkhoff.core.config.user_config import RunConfig
from birkhoff.core.norms import WeightTable
from birkhoff.verticals.normal_form.newton import RunOptions
from birkhoff.verticals.normal_form.scheme import SchemeConstants


def weights_for(
    n: int, run_config: RunConfig, file_weights: Optional[WeightTable] = None
) -> Optional[WeightTable]:
    """Weights stored in the input file win over `weight_ratio`"""
    if file_weights is not None:
        file_weights.check(n)
        return file_weights
    if run_config.weight_ratio is None:
        return None
    return WeightTable.geometric(n, run_config.weight_ratio)


def constants_for(
    family: Family, run_config: RunConfig, weights: Optional[WeightTable] = None
) -> SchemeConstants:
    E = Family.fundamental(family.n, family.trunc_degree, family.arithmetic, family.N)
    return SchemeConstants.for_instance(
        family - E,
        b=run_config.b,
        c0=run_config.c0,
        c1=run_config.c1,
        r0=run_config.r0,
        weights=weights,
    )


def run_options_for(run_config: RunConfig, method: str = "spectral") -> RunOptions:
    return RunOptions(
        steps=run_config.steps,
        trunc_degree=run_config.effective_trunc_degree,
        method=method,
        audit_inequalities=run_config.audit_inequalities,
        audit_remainder=run_config.audit_remainder,
    )
