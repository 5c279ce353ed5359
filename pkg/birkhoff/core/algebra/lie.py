"""
Lie-algebraic operations on truncated fields and functions.

Conventions:

- [X, Y] = DY·X - DX·Y, so that [E^i, z^Q e_j] = ((Q, μ^i) - μ^i_j) z^Q e_j.
- (X_H)_k = -i sgn(k) ∂H/∂z_{-k} and {H, K} = dH·X_K.
- `lie_conjugate(X, U, d)` is the pull-back of X by the time-1 flow of U, and
  `apply_transform(H, [U], d)` the composition H∘Φ_U. Both preserve first integrals:
  if X(H) = 0, the transformed field annihilates the transformed function.

Every result carries the degree up to which it is exact as its `trunc_degree`.
"""

import logging
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple, TypeVar

from birkhoff.core.algebra.coefficients import Coefficient
from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.multi_index import MultiIndex
from birkhoff.core.algebra.scalar_function import ScalarFunction
from birkhoff.core.algebra.sparse import SparseTerms, accumulate
from birkhoff.core.algebra.vector_field import TermKey, VectorField
from birkhoff.core.errors import AlgebraError


logger = logging.getLogger(__name__)

P = TypeVar("P", bound=SparseTerms)  # type: ignore[type-arg]


def add(X: P, Y: P) -> P:
    return X + Y


def jet(X: P, degree: int) -> P:
    return X.jet(degree)


def _cap(trunc: int, max_degree: Optional[int]) -> int:
    if max_degree is not None:
        trunc = min(trunc, max_degree)
    return max(trunc, 0)


def bracket(
    X: VectorField, Y: VectorField, max_degree: Optional[int] = None
) -> VectorField:
    """
    [X, Y] = DY·X - DX·Y, exact up to min(t_X, t_Y, t_X + m_Y - 1, t_Y + m_X - 1).
    Terms above `max_degree` are not computed.
    """
    X.check_compatible(Y)
    trunc = _cap(
        min(
            X.trunc_degree,
            Y.trunc_degree,
            X.trunc_degree + Y.min_degree - 1,
            Y.trunc_degree + X.min_degree - 1,
        ),
        max_degree,
    )
    terms: Dict[TermKey, Coefficient] = {}
    _accumulate_derivative(terms, Y, X, trunc, negate=False)
    _accumulate_derivative(terms, X, Y, trunc, negate=True)
    return VectorField._build(terms, X.n, trunc, X.arithmetic)


def _accumulate_derivative(
    terms: Dict[TermKey, Coefficient],
    A: VectorField,
    B: VectorField,
    trunc: int,
    negate: bool,
) -> None:
    """Add ±DA·B to `terms`"""
    by_component = B.by_component()
    b_min = B.min_degree
    for (index, component), a in A.terms.items():
        if index.degree - 1 + b_min > trunc:
            continue
        for var, exp, lowered in index.derivatives():
            for p, b in by_component.get(var, ()):
                if lowered.degree + p.degree > trunc:
                    continue
                value = a * b * exp
                accumulate(terms, (lowered * p, component), -value if negate else value)


def lie_conjugate(X: VectorField, U: VectorField, degree: int) -> VectorField:
    """
    Σ_k ad_U^k X / k! with ad_U X = [U, X], up to `degree`. This is the pull-back
    of X by the time-1 flow of U.
    """
    X.check_compatible(U)
    _check_generator(U)
    result = X.jet(degree)
    term = result
    k = 0
    while True:
        k += 1
        term = bracket(U, term, max_degree=degree)
        if term.is_zero():
            result = result.with_trunc(min(result.trunc_degree, term.trunc_degree))
            break
        term = term.scale(Fraction(1, k))
        result = result + term
    return result


def lie_conjugate_family(
    family: Family, U: VectorField, degree: int, parallel: bool = True
) -> Family:
    return family.map(lambda X: lie_conjugate(X, U, degree), parallel=parallel)


def _check_generator(U: VectorField) -> None:
    if not U.is_zero() and U.min_degree < 2:
        raise AlgebraError(
            f"generator has min degree {U.min_degree}: its Lie series does not"
            " terminate"
        )


def hamiltonian_vf(H: ScalarFunction) -> VectorField:
    """(X_H)_k = -i sgn(k) ∂H/∂z_{-k}, exact up to t_H - 1"""
    minus_i = -H.arithmetic.i
    terms: Dict[TermKey, Coefficient] = {}
    for index, value in H.terms.items():
        for var, exp, lowered in index.derivatives():
            k = -var
            factor = minus_i if k > 0 else -minus_i
            accumulate(terms, (lowered, k), factor * value * exp)
    return VectorField._build(terms, H.n, max(H.trunc_degree - 1, 0), H.arithmetic)


def _derivatives_by_variable(
    K: ScalarFunction,
) -> Dict[int, List[Tuple[MultiIndex, Coefficient]]]:
    result: Dict[int, List[Tuple[MultiIndex, Coefficient]]] = {}
    for index, value in K.terms.items():
        for var, exp, lowered in index.derivatives():
            result.setdefault(var, []).append((lowered, value * exp))
    return result


def poisson(
    H: ScalarFunction, K: ScalarFunction, max_degree: Optional[int] = None
) -> ScalarFunction:
    """
    {H, K} = dH·X_K = Σ_l -i sgn(l) ∂H/∂z_l ∂K/∂z_{-l}, exact up to
    min(t_H, t_K, t_H + m_K - 2, t_K + m_H - 2)
    """
    H.check_compatible(K)
    trunc = _cap(
        min(
            H.trunc_degree,
            K.trunc_degree,
            H.trunc_degree + K.min_degree - 2,
            K.trunc_degree + H.min_degree - 2,
        ),
        max_degree,
    )
    minus_i = -H.arithmetic.i
    dK = _derivatives_by_variable(K)
    terms: Dict[MultiIndex, Coefficient] = {}
    for index, a in H.terms.items():
        for var, exp, lowered in index.derivatives():
            factor = minus_i if var > 0 else -minus_i
            for p, b in dK.get(-var, ()):
                if lowered.degree + p.degree > trunc:
                    continue
                accumulate(terms, lowered * p, factor * a * b * exp)
    return ScalarFunction._build(terms, H.n, trunc, H.arithmetic)


def lie_derivative(
    U: VectorField, H: ScalarFunction, max_degree: Optional[int] = None
) -> ScalarFunction:
    """
    U(H) = Σ_l U_l ∂H/∂z_l, exact up to
    min(t_H, t_U, t_H + m_U - 1, t_U + m_H - 1)
    """
    U.check_compatible(H)
    trunc = _cap(
        min(
            H.trunc_degree,
            U.trunc_degree,
            H.trunc_degree + U.min_degree - 1,
            U.trunc_degree + H.min_degree - 1,
        ),
        max_degree,
    )
    by_component = U.by_component()
    terms: Dict[MultiIndex, Coefficient] = {}
    for index, a in H.terms.items():
        for var, exp, lowered in index.derivatives():
            for p, b in by_component.get(var, ()):
                if lowered.degree + p.degree > trunc:
                    continue
                accumulate(terms, lowered * p, a * b * exp)
    return ScalarFunction._build(terms, H.n, trunc, H.arithmetic)


def apply_transform(
    H: ScalarFunction, generators: Sequence[VectorField], degree: int
) -> ScalarFunction:
    """
    Pull H through the time-1 flows of `generators`, the first generator first:
    the result is H∘Φ_1∘...∘Φ_k up to `degree`.
    """
    result = H.jet(degree)
    for U in generators:
        H.check_compatible(U)
        _check_generator(U)
        term = result
        k = 0
        while True:
            k += 1
            term = lie_derivative(U, term, max_degree=degree)
            if term.is_zero():
                result = result.with_trunc(min(result.trunc_degree, term.trunc_degree))
                break
            term = term.scale(Fraction(1, k))
            result = result + term
    return result


def commutator_degrees(
    family: Family, degree: Optional[int] = None
) -> List[Tuple[int, int, Optional[int]]]:
    """
    For every pair i < j, the lowest degree at which [X^i, X^j] does not vanish
    (None when it vanishes up to its truncation degree)
    """
    result: List[Tuple[int, int, Optional[int]]] = []
    for i in range(1, family.N + 1):
        for j in range(i + 1, family.N + 1):
            commutator = bracket(family.member(i), family.member(j), max_degree=degree)
            lowest = None if commutator.is_zero() else commutator.min_degree
            logger.debug("pair=(%d, %d) lowest_degree=%s", i, j, lowest)
            result.append((i, j, lowest))
    return result
