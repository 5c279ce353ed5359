"""
Majorants and weighted norms.

A majorant replaces every coefficient by its modulus. The canonical norm of a
field on the ball ‖z‖_{w1} ≤ r is the box bound: each variable is replaced by its
largest possible modulus r/√w1_l, and the resulting component values are combined
with the w2 weights. It is an upper bound of the weighted sup-norm, and the sampled
norm is a lower estimate of it.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Dict, List, Optional, Sequence, Tuple

import numpy as np

from birkhoff.core.algebra.coefficients import Arithmetic, Coefficient, Mode
from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.lie import bracket, lie_conjugate
from birkhoff.core.algebra.multi_index import MultiIndex
from birkhoff.core.algebra.scalar_function import position
from birkhoff.core.algebra.sparse import accumulate
from birkhoff.core.algebra.vector_field import TermKey, VectorField
from birkhoff.core.constants import NORM_RELATIVE_SLACK
from birkhoff.core.errors import AlgebraError


logger = logging.getLogger(__name__)

MAJORANT_ARITHMETIC = Arithmetic(Mode.FLOAT, 0.0)


@dataclass(frozen=True)
class WeightTable:
    """Weights w1_j ≤ w2_j for the variable pairs j = 1..n"""

    w1: Tuple[float, ...]
    w2: Tuple[float, ...]

    def __post_init__(self) -> None:
        if len(self.w1) != len(self.w2):
            raise AlgebraError("weight tables must have the same length")
        for j, (a, b) in enumerate(zip(self.w1, self.w2), start=1):
            if not 0 < a <= b:
                raise AlgebraError(
                    f"invalid weights for j={j}: need 0 < w1 ≤ w2, got {a} and {b}"
                )

    @classmethod
    def unit(cls, n: int) -> "WeightTable":
        return cls((1.0,) * n, (1.0,) * n)

    @classmethod
    def geometric(cls, n: int, ratio: float) -> "WeightTable":
        """w1_j = w2_j = ratio ** j"""
        weights = tuple(ratio**j for j in range(1, n + 1))
        return cls(weights, weights)

    @classmethod
    def for_ratio(cls, n: int, ratio: Optional[float]) -> "WeightTable":
        return cls.unit(n) if ratio is None else cls.geometric(n, ratio)

    @property
    def n(self) -> int:
        return len(self.w1)

    def inner(self, var: int) -> float:
        return self.w1[abs(var) - 1]

    def outer(self, var: int) -> float:
        return self.w2[abs(var) - 1]

    def check(self, n: int) -> None:
        if self.n < n:
            raise AlgebraError(f"weight tables cover {self.n} pairs, {n} needed")


def within(lhs: float, rhs: float) -> bool:
    """lhs ≤ rhs, with the relative slack granted to norm inequalities"""
    return lhs <= rhs + NORM_RELATIVE_SLACK * max(abs(lhs), abs(rhs))


def majorant(X: VectorField) -> VectorField:
    """The field with coefficients |X_{Q,j}|, in float arithmetic"""
    return VectorField._build(
        {key: complex(abs(value)) for key, value in X.terms.items()},
        X.n,
        X.trunc_degree,
        MAJORANT_ARITHMETIC,
    )


def family_majorant(F: Family) -> VectorField:
    """Σ_i majorant(F^i)"""
    terms: Dict[TermKey, Coefficient] = {}
    for member in F:
        for key, value in member.terms.items():
            accumulate(terms, key, complex(abs(value)))
    return VectorField._build(terms, F.n, F.trunc_degree, MAJORANT_ARITHMETIC)


def _radii(n: int, r: float, weights: WeightTable) -> np.ndarray:
    """Largest modulus of each variable on the ball, ordered like the variables"""
    weights.check(n)
    result = np.empty(2 * n)
    for var in list(range(-n, 0)) + list(range(1, n + 1)):
        result[position(var, n)] = r / math.sqrt(weights.inner(var))
    return result


def _monomial_bound(index: MultiIndex, radii: np.ndarray, n: int) -> float:
    value = 1.0
    for var, exp in index.items():
        value *= radii[position(var, n)] ** exp
    return value


def _outer_weights(n: int, weights: WeightTable) -> np.ndarray:
    result = np.empty(2 * n)
    for var in list(range(-n, 0)) + list(range(1, n + 1)):
        result[position(var, n)] = weights.outer(var)
    return result


def box_norm(X: VectorField, r: float, weights: Optional[WeightTable] = None) -> float:
    """
    √(Σ_j w2_j (Σ_Q |X_{Q,j}| Π_l (r/√w1_l)^{q_l})²), an upper bound of
    sup_{‖z‖_{w1} ≤ r} ‖majorant(X)(z)‖_{w2}
    """
    if r <= 0:
        raise AlgebraError(f"invalid radius {r}")
    n = X.n
    weights = weights or WeightTable.unit(n)
    radii = _radii(n, r, weights)
    sums = np.zeros(2 * n)
    for (index, component), value in X.terms.items():
        sums[position(component, n)] += abs(value) * _monomial_bound(index, radii, n)
    return float(math.sqrt(float(np.dot(_outer_weights(n, weights), sums**2))))


def derivative_box_norm(
    X: VectorField, r: float, weights: Optional[WeightTable] = None
) -> float:
    """
    √(Σ_j Σ_l (w2_j/w1_l) (∂_l majorant(X)_j)_box²), an upper bound of the
    operator norm of D majorant(X)(z) from the w1 to the w2 norm on the ball of radius r
    """
    if r <= 0:
        raise AlgebraError(f"invalid radius {r}")
    n = X.n
    weights = weights or WeightTable.unit(n)
    radii = _radii(n, r, weights)
    matrix = np.zeros((2 * n, 2 * n))
    for (index, component), value in X.terms.items():
        row = position(component, n)
        for var, exp, lowered in index.derivatives():
            matrix[row, position(var, n)] += (
                abs(value) * exp * _monomial_bound(lowered, radii, n)
            )
    outer = _outer_weights(n, weights)
    inner = 1.0 / (radii / r) ** 2
    scaled = matrix**2 * outer[:, None] / inner[None, :]
    return float(math.sqrt(float(scaled.sum())))


def sample_norm(
    X: VectorField,
    r: float,
    weights: Optional[WeightTable] = None,
    samples: int = 64,
    seed: int = 0,
) -> float:
    """
    max of ‖majorant(X)(z)‖_{w2} over `samples` nonnegative real points z with
    ‖z‖_{w1} = r, drawn from a generator seeded with `seed`
    """
    if samples < 1:
        raise AlgebraError(f"invalid sample count {samples}")
    if r <= 0:
        raise AlgebraError(f"invalid radius {r}")
    n = X.n
    if n == 0 or X.is_zero():
        return 0.0
    weights = weights or WeightTable.unit(n)
    weights.check(n)
    rng = np.random.default_rng(seed)
    inner = (r / _radii(n, r, weights)) ** 2
    points = np.abs(rng.standard_normal((samples, 2 * n)))
    scale = np.sqrt((points**2 * inner[None, :]).sum(axis=1))
    points = points * (r / scale)[:, None]

    values = np.zeros((samples, 2 * n))
    for (index, component), value in X.terms.items():
        monomial = np.ones(samples)
        for var, exp in index.items():
            monomial = monomial * points[:, position(var, n)] ** exp
        values[:, position(component, n)] += abs(value) * monomial
    norms = np.sqrt((values**2 * _outer_weights(n, weights)[None, :]).sum(axis=1))
    return float(norms.max())


def dominates(X: VectorField, Y: VectorField) -> bool:
    """True if |X_{Q,j}| ≤ |Y_{Q,j}| for every (Q, j): X ≺ Y"""
    if X.n != Y.n:
        raise AlgebraError(f"mismatched variable counts: n={X.n} and n={Y.n}")
    for key, value in X.terms.items():
        other = Y.terms.get(key)
        if other is None or abs(value) > abs(other):
            return False
    return True


def scaling_check(X: VectorField, r: float, alpha: float, m: int) -> bool:
    """box_norm(X, αr) ≤ α^m box_norm(X, r) for a field with a zero of order m"""
    if not 0 < alpha <= 1:
        raise AlgebraError(f"invalid scaling factor {alpha}")
    if not X.is_zero() and X.min_degree < m:
        raise AlgebraError(f"field has min degree {X.min_degree} < {m}")
    return within(box_norm(X, alpha * r), alpha**m * box_norm(X, r))


@dataclass
class NormReport:
    field: str
    radius: float
    box_norm: float
    sample_norm: float
    mode: str


def norm_report(
    name: str,
    X: VectorField,
    r: float,
    weights: Optional[WeightTable] = None,
    samples: int = 64,
    seed: int = 0,
) -> NormReport:
    return NormReport(
        field=name,
        radius=r,
        box_norm=box_norm(X, r, weights),
        sample_norm=sample_norm(X, r, weights, samples, seed),
        mode=X.arithmetic.mode.value,
    )


@dataclass
class InequalityCheck:
    """One inequality lhs ≤ rhs. When its hypothesis is unmet, nothing is asserted
    and `holds` is None."""

    name: str
    lhs: float
    rhs: float
    hypothesis_met: bool = True
    holds: Optional[bool] = None
    note: str = ""

    def __post_init__(self) -> None:
        if self.hypothesis_met and self.holds is None:
            self.holds = within(self.lhs, self.rhs)


@dataclass
class InequalityReport:
    epsilon: float
    checks: List[InequalityCheck] = field(default_factory=list)

    @property
    def hypothesis_met(self) -> bool:
        return all(check.hypothesis_met for check in self.checks)

    @property
    def ok(self) -> bool:
        """False only if an inequality was asserted and failed"""
        return all(check.holds is not False for check in self.checks)


def _unmet(names: Sequence[str], epsilon: float, note: str) -> InequalityReport:
    return InequalityReport(
        epsilon=epsilon,
        checks=[
            InequalityCheck(name, math.nan, math.nan, hypothesis_met=False, note=note)
            for name in names
        ],
    )


def flow_remainder_check(
    U: VectorField,
    F: Family,
    r: float,
    delta: float,
    degree: int,
    weights: Optional[WeightTable] = None,
) -> InequalityReport:
    """
    With ε = box_norm(U, r) < δ/(4e), S^i = Φ*F^i - F^i and
    S̃^i = S^i - [U, F^i] satisfy, on the radius r - δ:
    ‖S‖ ≤ (4/δ)‖F‖_r ε and ‖S̃‖ ≤ (8e/δ²)‖F‖_r ε²
    """
    epsilon = box_norm(U, r, weights)
    names = ("flow_remainder", "flow_quadratic_remainder")
    if not 0 < delta < r:
        return _unmet(names, epsilon, f"need 0 < δ < r, got δ={delta}, r={r}")
    gate = delta / (4 * math.e)
    if not epsilon < gate:
        return _unmet(names, epsilon, f"ε={epsilon!r} is not below δ/(4e)={gate!r}")

    first: List[VectorField] = []
    second: List[VectorField] = []
    for member in F:
        moved = lie_conjugate(member, U, degree) - member.jet(degree)
        first.append(moved)
        second.append(moved - bracket(U, member, max_degree=degree))
    f_norm = box_norm(family_majorant(F), r, weights)
    inner_r = r - delta
    return InequalityReport(
        epsilon=epsilon,
        checks=[
            InequalityCheck(
                names[0],
                box_norm(family_majorant(Family(first, F.n, degree)), inner_r, weights),
                4 / delta * f_norm * epsilon,
            ),
            InequalityCheck(
                names[1],
                box_norm(
                    family_majorant(Family(second, F.n, degree)), inner_r, weights
                ),
                8 * math.e / delta**2 * f_norm * epsilon**2,
            ),
        ],
    )


def flow_linear_remainder_check(
    U: VectorField,
    r: float,
    delta: float,
    degree: int,
    N: Optional[int] = None,
    weights: Optional[WeightTable] = None,
) -> InequalityReport:
    """
    With ε = box_norm(U, r) < δ/(8e), T^i = Φ*E^i - E^i - [U, E^i] satisfies
    ‖T‖_{r-δ} ≤ (8r/(eδ))(4eε/δ)ε
    """
    epsilon = box_norm(U, r, weights)
    names = ("flow_linear_remainder",)
    if not 0 < delta < r:
        return _unmet(names, epsilon, f"need 0 < δ < r, got δ={delta}, r={r}")
    gate = delta / (8 * math.e)
    if not epsilon < gate:
        return _unmet(names, epsilon, f"ε={epsilon!r} is not below δ/(8e)={gate!r}")

    E = Family.fundamental(U.n, degree, U.arithmetic, count=N or U.n)
    remainders = [
        lie_conjugate(member, U, degree) - member - bracket(U, member, degree)
        for member in E
    ]
    lhs = box_norm(
        family_majorant(Family(remainders, U.n, degree)), r - delta, weights
    )
    rhs = 8 * r / (math.e * delta) * (4 * math.e * epsilon / delta) * epsilon
    return InequalityReport(
        epsilon=epsilon, checks=[InequalityCheck(names[0], lhs, rhs)]
    )


def commutator_linear_check(
    U: VectorField,
    r: float,
    delta: float,
    N: Optional[int] = None,
    weights: Optional[WeightTable] = None,
) -> InequalityReport:
    """‖Σ_i majorant([U, E^i])‖_{r-δ} ≤ (r/δ + 1) box_norm(U, r)"""
    epsilon = box_norm(U, r, weights)
    names = ("commutator_linear",)
    if not 0 < delta < r:
        return _unmet(names, epsilon, f"need 0 < δ < r, got δ={delta}, r={r}")
    E = Family.fundamental(U.n, U.trunc_degree, U.arithmetic, count=N or U.n)
    commutators = [bracket(U, member) for member in E]
    lhs = box_norm(
        family_majorant(Family(commutators, U.n, U.trunc_degree)), r - delta, weights
    )
    return InequalityReport(
        epsilon=epsilon,
        checks=[InequalityCheck(names[0], lhs, (r / delta + 1) * epsilon)],
    )
