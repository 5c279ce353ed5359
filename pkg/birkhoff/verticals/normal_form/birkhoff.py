import logging
from dataclasses import dataclass, field
from typing import List, Optional, Sequence, Tuple

from birkhoff.core.algebra.coefficients import Coefficient
from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.lie import apply_transform, lie_derivative
from birkhoff.core.algebra.multi_index import MultiIndex
from birkhoff.core.algebra.scalar_function import ScalarFunction
from birkhoff.core.algebra.vector_field import VectorField
from birkhoff.core.errors import CohomologyError, TruncationError


logger = logging.getLogger(__name__)


@dataclass
class BirkhoffReport:
    degree: int
    transformed: ScalarFunction
    violations: List[Tuple[MultiIndex, Coefficient]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def default_check_degree(generator_count: int) -> int:
    """2^K + 1 after K steps"""
    return 2**generator_count + 1


def birkhoff_check(
    H: ScalarFunction,
    generators: Sequence[VectorField],
    degree: Optional[int] = None,
    family: Optional[Family] = None,
) -> BirkhoffReport:
    """
    Pull H through the flows of `generators` and list the monomials of the result
    which are not products of actions z_j z_{-j}. When `family` is given, H must be
    a first integral of every member up to `degree`.
    """
    if degree is None:
        degree = default_check_degree(len(generators))
    if H.trunc_degree < degree:
        raise TruncationError(
            f"H is known up to degree {H.trunc_degree}, the check needs {degree}"
        )
    if family is not None:
        for i, member in enumerate(family, start=1):
            derivative = lie_derivative(member, H, max_degree=degree)
            if not derivative.is_zero():
                raise CohomologyError(
                    f"H is not a first integral of X^{i}: X^{i}(H) has a term of"
                    f" degree {derivative.min_degree}"
                )

    lifted = [U.with_trunc(max(U.trunc_degree, degree)) for U in generators]
    transformed = apply_transform(H, lifted, degree)
    violations = [
        (index, value)
        for index, value in transformed.sorted_terms()
        if not index.is_action()
    ]
    logger.debug(
        "birkhoff check degree=%d terms=%d violations=%d",
        degree,
        len(transformed),
        len(violations),
    )
    return BirkhoffReport(degree=degree, transformed=transformed, violations=violations)
