"""
Degree-doubling normalization.

A state at step k holds a family X^i = E^i + N^i + R^i normalized up to m = 2^k: N
is a completely integrable normal form of degree ≤ m and R has min degree ≥ m + 1.
One step moves the resonant part of J^{2m}(R) into N, solves the nonlinear
cohomological equation for the rest, and conjugates the family by the time-1 flow
of the solution. After K steps the family is normalized up to 2^K.
"""

import logging
from dataclasses import dataclass, field, replace
from typing import Callable, List, Optional, Tuple

from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.lie import bracket, commutator_degrees, lie_conjugate
from birkhoff.core.algebra.vector_field import VectorField
from birkhoff.core.errors import AlgebraError, CohomologyError, TruncationError
from birkhoff.core.norms import (
    InequalityCheck,
    InequalityReport,
    WeightTable,
    box_norm,
    derivative_box_norm,
    family_majorant,
)
from birkhoff.core.resonance import split
from birkhoff.verticals.normal_form.cohomology import (
    solve_nonlinear_recursive,
    solve_nonlinear_spectral,
)
from birkhoff.verticals.normal_form.normal_form_family import NormalFormFamily
from birkhoff.verticals.normal_form.scheme import (
    SchemeConstants,
    radius_gap,
    sequences,
)


logger = logging.getLogger(__name__)

SOLVERS = {
    "spectral": solve_nonlinear_spectral,
    "recursive": solve_nonlinear_recursive,
}


@dataclass(frozen=True)
class RemainderDecomposition:
    """
    Norms of the four parts of the new remainder, on the radius of the new state:
    Φ*E - E - [U, E], Φ*N - N - [U, N], Φ*R - R and (id - J^{2m})([U, E] + R + [U, N])
    """

    r11: float
    r12: float
    r2: float
    r3: float


@dataclass(frozen=True)
class LedgerRow:
    k: int
    m: int
    norm_R: float
    norm_N: float
    norm_DN: float
    eps_k: float
    r_k: float
    i1_ok: Optional[bool] = None
    i2_ok: Optional[bool] = None
    i3_ok: Optional[bool] = None
    r11_norm: Optional[float] = None
    r12_norm: Optional[float] = None
    r2_norm: Optional[float] = None
    r3_norm: Optional[float] = None

    @property
    def ok(self) -> bool:
        return all(
            verdict is not False for verdict in (self.i1_ok, self.i2_ok, self.i3_ok)
        )


@dataclass(frozen=True)
class IterationState:
    k: int
    nf: NormalFormFamily
    remainder: Family
    generators: Tuple[VectorField, ...] = ()
    ledger: Tuple[LedgerRow, ...] = ()

    @property
    def m(self) -> int:
        return 2**self.k

    @property
    def trunc_degree(self) -> int:
        return self.remainder.trunc_degree

    def family(self) -> Family:
        """X^i = NF^i + R^i"""
        return self.nf.fields() + self.remainder


@dataclass
class RunResult:
    state: IterationState
    constants: SchemeConstants
    weights: Optional[WeightTable] = None
    history: Tuple[IterationState, ...] = ()

    @property
    def nf(self) -> NormalFormFamily:
        return self.state.nf

    @property
    def family(self) -> Family:
        return self.state.family()

    @property
    def generators(self) -> Tuple[VectorField, ...]:
        return self.state.generators

    @property
    def ledger(self) -> Tuple[LedgerRow, ...]:
        return self.state.ledger

    @property
    def ok(self) -> bool:
        return all(row.ok for row in self.ledger)


def _sum_to(values: List[float], k: int) -> float:
    return sum(values[:k])


def step_inequality_audit(
    state: IterationState,
    constants: SchemeConstants,
    weights: Optional[WeightTable] = None,
) -> InequalityReport:
    """
    On the radius r_k of the state:
    ‖R‖ ≤ ε_k, ‖N‖ ≤ Σ_{l<k} ε_l and ‖DN‖ ≤ Σ_{l<k} ε_l / (r_l - r_{l+1})
    """
    k = state.k
    rows = sequences(max(k, 1), constants)
    r_k = rows[k].r_k
    corrections = state.nf.corrections()
    norm_R = box_norm(family_majorant(state.remainder), r_k, weights)
    norm_N = box_norm(family_majorant(corrections), r_k, weights)
    norm_DN = derivative_box_norm(family_majorant(corrections), r_k, weights)
    eps = [row.eps_k for row in rows]
    weighted = [row.eps_k / radius_gap(row, constants) for row in rows]
    return InequalityReport(
        epsilon=rows[k].eps_k,
        checks=[
            InequalityCheck("remainder", norm_R, rows[k].eps_k),
            InequalityCheck("normal_form", norm_N, _sum_to(eps, k)),
            InequalityCheck("normal_form_derivative", norm_DN, _sum_to(weighted, k)),
        ],
    )


def ledger_row(
    state: IterationState,
    constants: SchemeConstants,
    weights: Optional[WeightTable] = None,
    decomposition: Optional[RemainderDecomposition] = None,
    verdicts: bool = True,
) -> LedgerRow:
    report = step_inequality_audit(state, constants, weights)
    remainder, normal_form, derivative = report.checks
    rows = sequences(max(state.k, 1), constants)
    return LedgerRow(
        k=state.k,
        m=state.m,
        norm_R=remainder.lhs,
        norm_N=normal_form.lhs,
        norm_DN=derivative.lhs,
        eps_k=rows[state.k].eps_k,
        r_k=rows[state.k].r_k,
        i1_ok=remainder.holds if verdicts else None,
        i2_ok=normal_form.holds if verdicts else None,
        i3_ok=derivative.holds if verdicts else None,
        r11_norm=decomposition.r11 if decomposition else None,
        r12_norm=decomposition.r12 if decomposition else None,
        r2_norm=decomposition.r2 if decomposition else None,
        r3_norm=decomposition.r3 if decomposition else None,
    )


def remainder_decomposition(
    state: IterationState,
    U: VectorField,
    r: float,
    weights: Optional[WeightTable] = None,
) -> RemainderDecomposition:
    d = state.trunc_degree
    two_m = 2 * state.m
    E = Family.fundamental(state.nf.n, d, state.nf.arithmetic, count=state.nf.N)
    corrections = state.nf.corrections()
    r11: List[VectorField] = []
    r12: List[VectorField] = []
    r2: List[VectorField] = []
    r3: List[VectorField] = []
    for E_i, N_i, R_i in zip(E, corrections, state.remainder):
        UE = bracket(U, E_i, d)
        UN = bracket(U, N_i, d)
        r11.append(lie_conjugate(E_i, U, d) - E_i - UE)
        r12.append(lie_conjugate(N_i, U, d) - N_i - UN)
        r2.append(lie_conjugate(R_i, U, d) - R_i)
        r3.append((UE + R_i + UN).higher(two_m))

    def norm(members: List[VectorField]) -> float:
        return box_norm(family_majorant(Family(members, E.n, d)), r, weights)

    return RemainderDecomposition(
        r11=norm(r11), r12=norm(r12), r2=norm(r2), r3=norm(r3)
    )


def newton_step(
    state: IterationState,
    constants: SchemeConstants,
    weights: Optional[WeightTable] = None,
    method: str = "spectral",
    audit_inequalities: bool = True,
    audit_remainder: bool = True,
) -> IterationState:
    m = state.m
    d = state.trunc_degree
    nf = state.nf
    if d < 2 * m:
        raise TruncationError(
            f"step {state.k} needs the family up to degree {2 * m}, it is known up to"
            f" {d} only"
        )
    logger.debug("step k=%d m=%d trunc=%d", state.k, m, d)

    resonant: List[VectorField] = []
    nonresonant: List[VectorField] = []
    for member in state.remainder.jet(2 * m):
        res, nres = split(member, nf.N)
        resonant.append(res.with_trunc(d))
        nonresonant.append(nres)
    new_nf = NormalFormFamily.from_corrections(
        nf.corrections() + Family(resonant, nf.n, d, nf.arithmetic)
    )

    B = Family(nonresonant, nf.n, 2 * m, nf.arithmetic)
    U = SOLVERS[method](nf.with_trunc(2 * m), B, m).with_trunc(d)
    logger.debug("step k=%d generator terms=%d", state.k, len(U))

    conjugated = state.family().map(lambda X: lie_conjugate(X, U, d), parallel=True)
    E = Family.fundamental(nf.n, d, nf.arithmetic, count=nf.N)
    remainder = conjugated - E - new_nf.corrections()
    for i, (member, image) in enumerate(zip(remainder, conjugated), start=1):
        low = member.jet(2 * m)
        if not low.is_negligible(image.max_modulus()):
            (index, j), _ = next(low.sorted_terms())
            raise CohomologyError(
                f"step {state.k}: the conjugated member {i} keeps the term"
                f" z^[{index}] e_{j} of degree ≤ {2 * m}; the family does not commute"
            )
    # float roundoff left below degree 2m
    remainder = remainder.map(lambda X: X.higher(2 * m))

    new_state = IterationState(
        k=state.k + 1,
        nf=new_nf,
        remainder=remainder,
        generators=state.generators + (U,),
        ledger=state.ledger,
    )
    decomposition = None
    if audit_remainder:
        r_next = sequences(state.k + 1, constants)[state.k + 1].r_k
        decomposition = remainder_decomposition(state, U, r_next, weights)
    row = ledger_row(
        new_state, constants, weights, decomposition, verdicts=audit_inequalities
    )
    return replace(new_state, ledger=state.ledger + (row,))


def initial_state(
    family: Family,
    constants: SchemeConstants,
    weights: Optional[WeightTable] = None,
    audit_inequalities: bool = True,
) -> IterationState:
    """k = 0: N = 0 and R = X - E"""
    E = Family.fundamental(family.n, family.trunc_degree, family.arithmetic, family.N)
    perturbation = family - E
    if not perturbation.is_zero() and perturbation.min_degree < 2:
        raise AlgebraError(
            "the family must be E plus terms of degree ≥ 2, found terms of degree"
            f" {perturbation.min_degree}"
        )
    state = IterationState(
        k=0,
        nf=NormalFormFamily.trivial(
            family.N, family.n, family.trunc_degree, family.arithmetic
        ),
        remainder=perturbation,
    )
    row = ledger_row(state, constants, weights, verdicts=audit_inequalities)
    return replace(state, ledger=(row,))


def check_commutation(family: Family, degree: Optional[int] = None) -> None:
    for i, j, lowest in commutator_degrees(family, degree):
        if lowest is not None:
            raise CohomologyError(
                f"X^{i} and X^{j} do not commute: their bracket has a term of degree"
                f" {lowest}"
            )


@dataclass
class RunOptions:
    steps: int = 3
    trunc_degree: Optional[int] = None
    method: str = "spectral"
    audit_inequalities: bool = True
    audit_remainder: bool = True
    on_step: Optional[Callable[[IterationState], None]] = field(
        default=None, repr=False
    )

    @property
    def effective_trunc_degree(self) -> int:
        return self.trunc_degree or 2 ** (self.steps + 1)


def run(
    family: Family,
    options: Optional[RunOptions] = None,
    constants: Optional[SchemeConstants] = None,
    weights: Optional[WeightTable] = None,
) -> RunResult:
    """
    Normalize a commuting family X^i = E^i + F^i up to degree 2^K. The normal form
    is certified completely integrable on the way: IntegrabilityError is raised
    when it is not.
    """
    options = options or RunOptions()
    K = options.steps
    trunc = options.effective_trunc_degree
    if family.N != family.n:
        raise AlgebraError(
            f"a run needs one field per variable pair: N={family.N}, n={family.n}"
        )
    if trunc < 2 ** (K + 1):
        raise TruncationError(
            f"{K} steps need a truncation degree ≥ {2 ** (K + 1)}, got {trunc}"
        )
    if family.trunc_degree < trunc:
        raise TruncationError(
            f"the family is known up to degree {family.trunc_degree}, the run needs"
            f" {trunc}"
        )
    if options.method not in SOLVERS:
        raise AlgebraError(f"unknown cohomology method '{options.method}'")
    family = family.jet(trunc)
    check_commutation(family)

    if constants is None:
        E = Family.fundamental(family.n, trunc, family.arithmetic, family.N)
        constants = SchemeConstants.for_instance(family - E, weights=weights)
    if options.audit_inequalities:
        constants.validate()

    state = initial_state(family, constants, weights, options.audit_inequalities)
    history = [state]
    for _ in range(K):
        state = newton_step(
            state,
            constants,
            weights,
            method=options.method,
            audit_inequalities=options.audit_inequalities,
            audit_remainder=options.audit_remainder,
        )
        history.append(state)
        if options.on_step:
            options.on_step(state)
    logger.debug(
        "run done: K=%d remainder min degree=%s", K, state.remainder.min_degree
    )
    return RunResult(
        state=state, constants=constants, weights=weights, history=tuple(history)
    )
