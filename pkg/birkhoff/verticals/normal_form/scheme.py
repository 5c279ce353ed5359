"""
Constants and sequences of the degree-doubling scheme.

The algebra of a run does not depend on them: they only feed the inequality audits.
"""

import logging
import math
from dataclasses import dataclass
from typing import Dict, List, Optional

import numpy as np

from birkhoff.core.algebra.family import Family
from birkhoff.core.errors import ConstantsError
from birkhoff.core.norms import (
    InequalityCheck,
    InequalityReport,
    WeightTable,
    box_norm,
    family_majorant,
)


logger = logging.getLogger(__name__)

MIN_B = 8 + 2 * math.log(48) / math.log(2)
CLOSED_FORM_TOLERANCE = 1e-12


def default_c1(b: float) -> float:
    return 4 ** (b + 2) / 3


@dataclass(frozen=True)
class SchemeConstants:
    b: float
    c0: float
    r0: float
    c1: Optional[float] = None

    def __post_init__(self) -> None:
        for name in ("b", "c0", "r0"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ConstantsError(f"{name} must be positive, got {value!r}")
        if self.c1 is None:
            object.__setattr__(self, "c1", default_c1(self.b))
        elif not (math.isfinite(self.c1) and self.c1 > 0):
            raise ConstantsError(f"c1 must be positive, got {self.c1!r}")

    @property
    def C1(self) -> float:
        assert self.c1 is not None
        return self.c1

    @property
    def eps0(self) -> float:
        return self.c0 * self.r0**2

    @property
    def delta0(self) -> float:
        return self.r0 / 2

    @property
    def delta(self) -> float:
        return self.r0 / self.C1

    @property
    def r_infinity(self) -> float:
        """4^{-b}(1/8 - 4^b/(3c1)) r0, a lower bound of every r_k"""
        b = self.b
        return 4 ** (-b) * (1 / 8 - 4**b / (3 * self.C1)) * self.r0

    def radius_clauses(self) -> Dict[str, float]:
        """Upper bounds r0 has to stay below, each one reported on its own"""
        b, c0, c1 = self.b, self.c0, self.C1
        return {
            "sqrt(3/(8c0))": math.sqrt(3 / (8 * c0)),
            "3/(136c0)": 3 / (136 * c0),
            "1/(32e c0 c1)": 1 / (32 * math.e * c0 * c1),
            "1/(7 2^9 c0 c1^2)": 1 / (7 * 2**9 * c0 * c1**2),
            "(c1-1/4)/(c0(...))": (c1 - 1 / 4)
            / (
                c0
                * (
                    2**4 * c1
                    + 2**9 * c1**2
                    + 4 * 9 / 7
                    + 4 * 2 ** (b / 2) * 4 ** (b + 2)
                )
            ),
        }

    def violations(self) -> List[str]:
        result = []
        if self.b < MIN_B:
            result.append(f"b={self.b!r} is below 8 + 2 ln(48)/ln(2) = {MIN_B!r}")
        if self.C1 < default_c1(self.b) * (1 - CLOSED_FORM_TOLERANCE):
            result.append(f"c1={self.C1!r} is below 4^(b+2)/3={default_c1(self.b)!r}")
        for name, bound in self.radius_clauses().items():
            if self.r0 > bound:
                result.append(f"r0={self.r0!r} exceeds {name}={bound!r}")
        return result

    def validate(self) -> None:
        violations = self.violations()
        if violations:
            raise ConstantsError("invalid scheme constants: " + "; ".join(violations))

    @classmethod
    def for_instance(
        cls,
        perturbation: Family,
        b: float = 20.0,
        c0: Optional[float] = None,
        c1: Optional[float] = None,
        r0: Optional[float] = None,
        weights: Optional[WeightTable] = None,
    ) -> "SchemeConstants":
        """
        Fill the constants missing from the arguments: c0 bounds the perturbation
        on the unit ball, r0 is half the smallest radius clause. For a perturbation
        of min degree 2 this gives box_norm(F, r0) ≤ c0 r0².
        """
        if c0 is None:
            c0 = max(
                box_norm(family_majorant(perturbation), 1.0, weights),
                float(np.finfo(float).tiny),
            )
        if r0 is None:
            unit_radius = cls(b=b, c0=c0, r0=1.0, c1=c1)
            r0 = min(1.0, 0.5 * min(unit_radius.radius_clauses().values()))
        constants = cls(b=b, c0=c0, r0=r0, c1=c1)
        logger.debug(
            "scheme constants b=%r c0=%r c1=%r r0=%r",
            constants.b,
            constants.c0,
            constants.c1,
            constants.r0,
        )
        return constants


def q(m: int, b: float) -> float:
    """q_m = m^{-b/m}"""
    return math.exp(-(b / m) * math.log(m))


def one_minus_q(m: int, b: float) -> float:
    return -math.expm1(-(b / m) * math.log(m))


@dataclass(frozen=True)
class SequenceRow:
    k: int
    m: int
    q_m: float
    eps_k: float
    delta_k: float
    r_k: float
    d_k: float


def epsilon(k: int, constants: SchemeConstants) -> float:
    return constants.eps0 / 4**k


def delta(k: int, constants: SchemeConstants) -> float:
    if k == 0:
        return constants.delta0
    return constants.delta / 4**k


def sequences(K: int, constants: SchemeConstants) -> List[SequenceRow]:
    """Rows k = 0..K: r_1 = r0/8, r_{k+1} = q_{2^k}(r_k - δ_k), d_k = Π_{l<k} q_{2^l}"""
    if K < 1:
        raise ConstantsError(f"the sequence table needs K ≥ 1, got {K}")
    b = constants.b
    rows: List[SequenceRow] = []
    r = constants.r0
    d = 1.0
    for k in range(K + 1):
        m = 2**k
        rows.append(
            SequenceRow(
                k=k,
                m=m,
                q_m=q(m, b),
                eps_k=epsilon(k, constants),
                delta_k=delta(k, constants),
                r_k=r,
                d_k=d,
            )
        )
        r = constants.r0 / 8 if k == 0 else q(m, b) * (r - delta(k, constants))
        d *= q(m, b)
    return rows


def radius_gap(row: SequenceRow, constants: SchemeConstants) -> float:
    """r_k - r_{k+1}, without cancellation"""
    if row.k == 0:
        return 7 * constants.r0 / 8
    b = constants.b
    return row.r_k * one_minus_q(row.m, b) + q(row.m, b) * row.delta_k


def closed_form_d(k: int, b: float) -> float:
    """4^{-b(1 - (k+1)/2^k)}"""
    return 4 ** (-b * (1 - (k + 1) / 2**k))


def sequence_lemma_audit(K: int, constants: SchemeConstants) -> InequalityReport:
    """Check the closed forms and the bounds of the sequence table up to K"""
    if K < 2:
        raise ConstantsError(f"the sequence audit needs K ≥ 2, got {K}")
    b = constants.b
    eps0 = constants.eps0
    r_infinity = constants.r_infinity
    rows = sequences(K, constants)
    checks: List[InequalityCheck] = []

    for row in rows:
        closed = closed_form_d(row.k, b)
        checks.append(
            InequalityCheck(
                f"d_{row.k}_closed_form",
                abs(row.d_k - closed),
                CLOSED_FORM_TOLERANCE * closed,
            )
        )
    floor = constants.r0 / 4 ** (b + 2)
    for row in rows:
        checks.append(
            InequalityCheck(f"r_{row.k}_above_r_infinity", r_infinity, row.r_k)
        )
        checks.append(InequalityCheck(f"r_{row.k}_above_floor", floor, row.r_k))

    eps_sum = sum(row.eps_k for row in rows)
    checks.append(InequalityCheck("eps_sum", eps_sum, 4 / 3 * eps0))
    weighted_sum = sum(row.eps_k / radius_gap(row, constants) for row in rows[:-1])
    checks.append(
        InequalityCheck(
            "eps_over_gap_sum",
            weighted_sum,
            8 / 7 * eps0 / constants.r0 + eps0 / r_infinity * 2 ** (b / 2),
        )
    )

    partial = sum(1 / (k * 2**k) for k in range(1, K + 1))
    checks.append(InequalityCheck("ln2_partial_sum", partial, math.log(2)))
    checks.append(
        InequalityCheck(
            "ln2_partial_sum_tail", math.log(2) - partial, 1 / ((K + 1) * 2**K)
        )
    )
    report = InequalityReport(epsilon=eps0, checks=checks)
    logger.debug("sequence audit K=%d b=%r ok=%s", K, b, report.ok)
    return report
