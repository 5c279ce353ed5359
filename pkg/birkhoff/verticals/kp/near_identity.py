"""
Families coming from a near-identity change of coordinates Ψ = 1 + G.

The actions I_j = Ψ_j Ψ_{-j} of such a map, when they pairwise commute, give the
commuting family i·X_{I_j} whose linear part is E. Normalizing that family is
equivalent to finding coordinates in which every I_j depends on the actions only.
"""

import logging
from dataclasses import dataclass, field
from typing import List, Optional, Tuple

from birkhoff.core.algebra.family import Family, parallel_map
from birkhoff.core.algebra.lie import apply_transform, hamiltonian_vf, poisson
from birkhoff.core.algebra.scalar_function import ScalarFunction
from birkhoff.core.algebra.vector_field import VectorField, all_components
from birkhoff.core.errors import AlgebraError


logger = logging.getLogger(__name__)

KP2_NOTE = "holds trivially (finite dimension)"


@dataclass(frozen=True)
class NearIdentityMap:
    """Ψ_k = z_k + G^k, G being stored as a field whose e_k component is G^k"""

    G: VectorField

    def __post_init__(self) -> None:
        if not self.G.is_zero() and self.G.min_degree < 2:
            raise AlgebraError(
                f"G must vanish to second order, it has terms of degree"
                f" {self.G.min_degree}"
            )

    @classmethod
    def from_family(cls, family: Family) -> "NearIdentityMap":
        if family.N != 1:
            raise AlgebraError(
                f"a near-identity map file holds one member, got {family.N}"
            )
        return cls(family.member(1))

    def to_family(self) -> Family:
        return Family([self.G])

    @property
    def n(self) -> int:
        return self.G.n

    @property
    def trunc_degree(self) -> int:
        return self.G.trunc_degree

    def coordinate(self, k: int) -> ScalarFunction:
        """Ψ_k"""
        return (
            ScalarFunction.variable(k, self.n, self.trunc_degree, self.G.arithmetic)
            + self.G.component(k)
        )


def actions(psi: NearIdentityMap) -> List[ScalarFunction]:
    """I_j = Ψ_j Ψ_{-j}, j = 1..n, exact up to the degree of G plus one"""
    return [psi.coordinate(j) * psi.coordinate(-j) for j in range(1, psi.n + 1)]


def _sign(k: int) -> int:
    return 1 if k > 0 else -1


def kp_field(psi: NearIdentityMap, j: int) -> VectorField:
    """
    i·X_{I_j}, assembled from G directly: its e_k component is
    sgn(k) ∂I_j/∂z_{-k} = sgn(k) (∂Ψ_j/∂z_{-k} Ψ_{-j} + Ψ_j ∂Ψ_{-j}/∂z_{-k})
    """
    n = psi.n
    trunc = psi.trunc_degree
    arithmetic = psi.G.arithmetic
    G_plus = psi.G.component(j)
    G_minus = psi.G.component(-j)
    z_plus = ScalarFunction.variable(j, n, trunc, arithmetic)
    z_minus = ScalarFunction.variable(-j, n, trunc, arithmetic)

    components = {}
    for k in all_components(n):
        total = ScalarFunction.zero(n, trunc, arithmetic)
        if k == -j:
            total = total + z_minus + G_minus
        if k == j:
            total = total + z_plus + G_plus
        dG_minus = G_minus.derivative(-k)
        dG_plus = G_plus.derivative(-k)
        for product in (
            z_plus * dG_minus,
            G_plus * dG_minus,
            z_minus * dG_plus,
            G_minus * dG_plus,
        ):
            total = total + product.jet(trunc)
        components[k] = total.scale(_sign(k)).with_trunc(trunc)
    return VectorField.from_components(components, n, trunc, arithmetic)


def kp_fields(psi: NearIdentityMap) -> Family:
    """The family i·X_{I_j}, j = 1..n; its linear part is E"""
    return Family(
        [kp_field(psi, j) for j in range(1, psi.n + 1)],
        psi.n,
        psi.trunc_degree,
        psi.G.arithmetic,
    )


def hamiltonian_kp_fields(psi: NearIdentityMap) -> Family:
    """i·hamiltonian_vf(I_j), computed from the actions"""
    i = psi.G.arithmetic.i
    return Family(
        [hamiltonian_vf(action).scale(i) for action in actions(psi)],
        psi.n,
        psi.trunc_degree,
        psi.G.arithmetic,
    )


@dataclass
class KPReport:
    degree: int
    min_degree_ok: bool
    # (j, k, lowest degree of {I_j, I_k} or None when it vanishes)
    pairs: List[Tuple[int, int, Optional[int]]] = field(default_factory=list)
    kp2: str = KP2_NOTE

    @property
    def first_failure(self) -> Optional[Tuple[int, int, int]]:
        for j, k, lowest in self.pairs:
            if lowest is not None:
                return j, k, lowest
        return None

    @property
    def ok(self) -> bool:
        return self.min_degree_ok and self.first_failure is None


def kp_hypothesis_check(
    psi: NearIdentityMap, degree: Optional[int] = None
) -> KPReport:
    """
    The actions must pairwise Poisson-commute up to `degree` (default: the degree up
    to which they are known)
    """
    action_list = actions(psi)
    if degree is None:
        degree = psi.trunc_degree + 1
    pairs = [(j, k) for j in range(1, psi.n + 1) for k in range(j + 1, psi.n + 1)]

    def lowest(pair: Tuple[int, int]) -> Optional[int]:
        j, k = pair
        bracket = poisson(action_list[j - 1], action_list[k - 1], degree)
        return None if bracket.is_zero() else bracket.min_degree

    degrees = parallel_map(lowest, pairs)
    report = KPReport(
        degree=degree,
        min_degree_ok=psi.G.is_zero() or psi.G.min_degree >= 2,
        pairs=[(j, k, low) for (j, k), low in zip(pairs, degrees)],
    )
    logger.debug("kp hypotheses degree=%d ok=%s", degree, report.ok)
    return report


def canonical_near_identity(h: ScalarFunction, degree: int) -> NearIdentityMap:
    """
    Ψ_k = z_k pulled through the time-1 flow of X_h, up to `degree`. Such maps
    preserve Poisson brackets, so their actions commute.
    """
    if not h.is_zero() and h.min_degree < 3:
        raise AlgebraError(f"h must have min degree ≥ 3, got {h.min_degree}")
    n = h.n
    arithmetic = h.arithmetic
    X_h = hamiltonian_vf(h)
    X_h = X_h.with_trunc(max(X_h.trunc_degree, degree))
    components = {}
    for k in all_components(n):
        z_k = ScalarFunction.variable(k, n, degree, arithmetic)
        components[k] = apply_transform(z_k, [X_h], degree) - z_k
    G = VectorField.from_components(components, n, degree, arithmetic)
    return NearIdentityMap(G)
