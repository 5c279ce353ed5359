"""
Cohomological equations.

Linear: find U with [E^i, U] = F^i for all i, given a nonresonant cocycle F.
Nonlinear: find a normalized U with J^{2m}([NF^i, U]) = B^i for all i, given a
completely integrable normal form NF of degree ≤ m and B of degrees m+1..2m.

The nonlinear equation is solved twice, independently: degree by degree, and by
inverting the equation on each joint eigenspace of the E^i.
"""

import logging
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Set

from birkhoff.core.algebra.coefficients import Coefficient
from birkhoff.core.algebra.family import Family, parallel_map
from birkhoff.core.algebra.lie import bracket, lie_derivative
from birkhoff.core.algebra.multi_index import MultiIndex
from birkhoff.core.algebra.scalar_function import ScalarFunction
from birkhoff.core.algebra.vector_field import TermKey, VectorField
from birkhoff.core.errors import CohomologyError, ResonanceError
from birkhoff.core.norms import (
    InequalityCheck,
    InequalityReport,
    WeightTable,
    box_norm,
    derivative_box_norm,
    family_majorant,
    majorant,
)
from birkhoff.core.resonance import (
    GeneralizedEigenvalue,
    divisors,
    eigen_decompose,
    nonresonant_part,
)
from birkhoff.verticals.normal_form.normal_form_family import NormalFormFamily


logger = logging.getLogger(__name__)


def cocycle_check(F: Family) -> bool:
    """[E^i, F^j] = [E^j, F^i] for every pair"""
    E = Family.fundamental(F.n, F.trunc_degree, F.arithmetic, count=F.N)
    for i in range(1, F.N + 1):
        for j in range(i + 1, F.N + 1):
            lhs = bracket(E.member(i), F.member(j))
            rhs = bracket(E.member(j), F.member(i))
            scale = max(lhs.max_modulus(), rhs.max_modulus())
            if not (lhs - rhs).is_negligible(scale):
                logger.debug("cocycle identity fails for the pair (%d, %d)", i, j)
                return False
    return True


@dataclass(frozen=True)
class Cocycle:
    """A family satisfying the cocycle identity, checked on construction in exact
    mode"""

    family: Family

    def __post_init__(self) -> None:
        if self.family.arithmetic.exact and not cocycle_check(self.family):
            raise CohomologyError("the family is not a cocycle")


def choose_witness(index: MultiIndex, component: int, N: int) -> int:
    """Index i maximizing |divisor(Q, l, i)|, the smallest one on ties"""
    values = divisors(index, component, N)
    best = max(abs(value) for value in values) if values else 0
    if not best:
        raise ResonanceError(f"z^[{index}] e_{component} is resonant")
    return next(i for i, value in enumerate(values, start=1) if abs(value) == best)


def solve_linear(F: Family) -> VectorField:
    """
    Solve [E^i, U] = F^i, i = 1..N, for a nonresonant cocycle F. The solution is
    checked by bracketing it back.
    """
    N = F.N
    n = F.n
    support: Set[TermKey] = set()
    for member in F:
        support.update(member.terms)

    terms: Dict[TermKey, Coefficient] = {}
    for key in support:
        index, component = key
        try:
            witness = choose_witness(index, component, N)
        except ResonanceError:
            raise ResonanceError(
                f"resonant content on z^[{index}] e_{component}: no solution"
            )
        value = F.member(witness).terms.get(key)
        if value is None:
            continue
        terms[key] = value / divisors(index, component, N)[witness - 1]
    U = VectorField._build(terms, n, F.trunc_degree, F.arithmetic)

    E = Family.fundamental(n, F.trunc_degree, F.arithmetic, count=N)
    for i in range(1, N + 1):
        residual = bracket(E.member(i), U) - F.member(i)
        if not residual.is_negligible(F.member(i).max_modulus()):
            index, component = next(residual.sorted_terms())[0]
            raise CohomologyError(
                f"[E^{i}, U] differs from F^{i} on z^[{index}] e_{component}:"
                " the right-hand side is not a cocycle"
            )
    return U


def _check_rhs(nf: NormalFormFamily, B: Family, m: int) -> None:
    if B.N != nf.N:
        raise CohomologyError(
            f"right-hand side has {B.N} members, the normal form {nf.N}"
        )
    for i, member in enumerate(B, start=1):
        if member and (member.min_degree <= m or member.max_degree > 2 * m):
            raise CohomologyError(
                f"B^{i} must live in degrees {m + 1}..{2 * m},"
                f" got {member.min_degree}..{member.max_degree}"
            )


def solve_nonlinear_recursive(
    nf: NormalFormFamily, B: Family, m: int
) -> VectorField:
    """
    U = V_{m+1} + ... + V_{2m} with
    [E^i, V_k] = B^i_k + Σ_{p=2}^{k-m} [V_{k-p+1}, NF^i_p]
    """
    _check_rhs(nf, B, m)
    trunc = 2 * m
    n = nf.n
    nf_parts = {
        (i, p): nf.homogeneous_part(i, p).with_trunc(trunc)
        for i in range(1, nf.N + 1)
        for p in range(2, m + 1)
    }
    pieces: Dict[int, VectorField] = {}
    for k in range(m + 1, 2 * m + 1):
        rhs: List[VectorField] = []
        for i in range(1, nf.N + 1):
            total = B.member(i).with_trunc(trunc).homogeneous(k)
            for p in range(2, k - m + 1):
                total = total + bracket(
                    pieces[k - p + 1], nf_parts[(i, p)], max_degree=trunc
                ).homogeneous(k)
            rhs.append(total.with_trunc(trunc))
        try:
            pieces[k] = solve_linear(Family(rhs, n, trunc, nf.arithmetic))
        except (ResonanceError, CohomologyError) as exc:
            raise CohomologyError(f"degree {k} stage: {exc}") from exc
        logger.debug("m=%d stage=%d terms=%d", m, k, len(pieces[k]))

    U = VectorField.zero(n, trunc, nf.arithmetic)
    for piece in pieces.values():
        U = U + piece
    return U.with_trunc(trunc)


def correction_coefficient(
    nf: NormalFormFamily, eigenvalue: GeneralizedEigenvalue, trunc: int
) -> ScalarFunction:
    """c_λ = Σ_j Σ_{i ∈ Supp λ} ε_i a_{i,j} λ_j"""
    result = ScalarFunction.zero(nf.n, trunc, nf.arithmetic)
    for i in eigenvalue.support:
        for j in range(1, nf.n + 1):
            lam_j = eigenvalue.entries[j - 1] if j <= len(eigenvalue.entries) else 0
            if lam_j:
                result = result + nf.a(i, j).with_trunc(trunc).scale(
                    eigenvalue.sign(i) * lam_j
                )
    return result


def inverse_divisor(
    nf: NormalFormFamily, eigenvalue: GeneralizedEigenvalue, trunc: int
) -> ScalarFunction:
    """1/b_λ = 1/(|λ| + c_λ) = Σ_k (-c_λ)^k / |λ|^{k+1}, up to `trunc`"""
    norm = eigenvalue.norm
    if not norm:
        raise CohomologyError("nonresonant block with |λ| = 0")
    c = correction_coefficient(nf, eigenvalue, trunc)
    result = ScalarFunction.constant(Fraction(1, norm), nf.n, trunc, nf.arithmetic)
    power = ScalarFunction.constant(1, nf.n, trunc, nf.arithmetic)
    k = 0
    while True:
        k += 1
        power = (power * c.scale(-1)).jet(trunc)
        if power.is_zero():
            break
        result = result + power.scale(Fraction(1, norm ** (k + 1)))
    return result.with_trunc(trunc)


def spectral_projection(
    nf: NormalFormFamily, eigenvalue: GeneralizedEigenvalue, V: VectorField
) -> VectorField:
    """P_λ(V) = Σ_j Σ_{i ∈ Supp λ} ε_i V(a_{i,j}) E^j"""
    trunc = V.trunc_degree
    result = VectorField.zero(nf.n, trunc, nf.arithmetic)
    for j in range(1, nf.n + 1):
        coefficient = ScalarFunction.zero(nf.n, trunc, nf.arithmetic)
        for i in eigenvalue.support:
            a = nf.a(i, j)
            if a:
                coefficient = coefficient + lie_derivative(
                    V, a.with_trunc(trunc), max_degree=trunc
                ).scale(eigenvalue.sign(i))
        if coefficient:
            E_j = VectorField.fundamental(j, nf.n, trunc, nf.arithmetic)
            result = result + E_j.times_scalar(coefficient.with_trunc(trunc))
    return result.with_trunc(trunc)


def _solve_block(
    nf: NormalFormFamily,
    eigenvalue: GeneralizedEigenvalue,
    blocks: List[VectorField],
    trunc: int,
) -> VectorField:
    combined = VectorField.zero(nf.n, trunc, nf.arithmetic)
    for i in eigenvalue.support:
        combined = combined + blocks[i - 1].scale(eigenvalue.sign(i))
    inverse = inverse_divisor(nf, eigenvalue, trunc)
    W = combined.times_scalar(inverse).jet(trunc)
    correction = spectral_projection(nf, eigenvalue, W).times_scalar(inverse)
    return (W + correction.jet(trunc)).with_trunc(trunc)


def solve_nonlinear_spectral(
    nf: NormalFormFamily, B: Family, m: int, parallel: bool = True
) -> VectorField:
    """
    U = J^{2m} Σ_λ (W_λ + (1/b_λ) P_λ(W_λ)), W_λ = B̃_λ / b_λ, where
    B̃_λ = Σ_{i ∈ Supp λ} ε_i B^i_λ
    """
    _check_rhs(nf, B, m)
    trunc = 2 * m
    n = nf.n
    zero = VectorField.zero(n, trunc, nf.arithmetic)
    per_member = [eigen_decompose(member.with_trunc(trunc), nf.N) for member in B]
    eigenvalues: List[GeneralizedEigenvalue] = []
    for blocks in per_member:
        for eigenvalue in blocks:
            if eigenvalue.is_zero():
                raise ResonanceError("right-hand side has resonant content")
            if eigenvalue not in eigenvalues:
                eigenvalues.append(eigenvalue)
    logger.debug("m=%d blocks=%d", m, len(eigenvalues))

    def solve(eigenvalue: GeneralizedEigenvalue) -> VectorField:
        members = [blocks.get(eigenvalue, zero) for blocks in per_member]
        return _solve_block(nf, eigenvalue, members, trunc)

    U = zero
    for piece in parallel_map(solve, eigenvalues, None if parallel else 1):
        U = U + piece
    return U.jet(trunc)


def forward_instance(nf: NormalFormFamily, W: VectorField, m: int) -> Family:
    """B^i = J^{2m}([NF^i, W])_nres, an instance whose solution is W when W is
    normalized and lives in degrees m+1..2m"""
    trunc = 2 * m
    members = []
    for i in range(1, nf.N + 1):
        image = bracket(nf.field(i).with_trunc(trunc), W.with_trunc(trunc), trunc)
        members.append(nonresonant_part(image.jet(trunc), nf.N))
    return Family(members, nf.n, trunc, nf.arithmetic)


def solution_bound_check(
    nf: NormalFormFamily,
    B: Family,
    U: VectorField,
    r: float,
    weights: Optional[WeightTable] = None,
) -> InequalityReport:
    """
    If ‖D majorant(N)‖ ≤ 1/2 on the ball of radius r, then
    box_norm(U, r) ≤ 4 box_norm(B, r)
    """
    epsilon = box_norm(family_majorant(B), r, weights)
    derivative = derivative_box_norm(family_majorant(nf.corrections()), r, weights)
    lhs = box_norm(majorant(U), r, weights)
    if derivative > 0.5:
        return InequalityReport(
            epsilon=epsilon,
            checks=[
                InequalityCheck(
                    "cohomology_solution",
                    lhs,
                    4 * epsilon,
                    hypothesis_met=False,
                    note=f"derivative bound {derivative!r} exceeds 1/2",
                )
            ],
        )
    return InequalityReport(
        epsilon=epsilon,
        checks=[InequalityCheck("cohomology_solution", lhs, 4 * epsilon)],
    )
