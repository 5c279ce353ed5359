"""
Spectral data of the fundamental family E^i = z_i e_i - z_{-i} e_{-i}.

The adjoint action of E^i is diagonal on monomial fields:
[E^i, z^Q e_j] = divisor(Q, j, i)·z^Q e_j, with integer divisors. Monomials whose
divisors all vanish are resonant. Grouping monomials by their whole divisor vector
gives the joint eigenspaces used by the cohomological solvers.
"""

import logging
from dataclasses import dataclass
from typing import Dict, Iterator, Optional, Tuple

from birkhoff.core.algebra.coefficients import Coefficient
from birkhoff.core.algebra.multi_index import MultiIndex, monomials, variable_range
from birkhoff.core.algebra.vector_field import TermKey, VectorField
from birkhoff.core.errors import AlgebraError, ResonanceError


logger = logging.getLogger(__name__)


def mu(i: int, j: int) -> int:
    """μ^i_j = δ^i_j - δ^i_{-j}"""
    if i < 1 or j == 0:
        raise AlgebraError(f"invalid eigenvalue indices i={i}, j={j}")
    if j == i:
        return 1
    if j == -i:
        return -1
    return 0


def divisor(index: MultiIndex, j: int, i: int) -> int:
    """(Q, μ^i) - μ^i_j = q_i - q_{-i} - μ^i_j"""
    return index[i] - index[-i] - mu(i, j)


def divisors(index: MultiIndex, j: int, N: int) -> Tuple[int, ...]:
    return tuple(divisor(index, j, i) for i in range(1, N + 1))


def is_resonant(index: MultiIndex, j: int, N: int) -> bool:
    if N < 1:
        raise AlgebraError(f"invalid family size N={N}")
    return not any(divisors(index, j, N))


def split(X: VectorField, N: int) -> Tuple[VectorField, VectorField]:
    """Return (X_res, X_nres) with X = X_res + X_nres"""
    res: Dict[TermKey, Coefficient] = {}
    nres: Dict[TermKey, Coefficient] = {}
    for key, value in X.terms.items():
        index, j = key
        (res if is_resonant(index, j, N) else nres)[key] = value
    return (
        VectorField._build(res, X.n, X.trunc_degree, X.arithmetic),
        VectorField._build(nres, X.n, X.trunc_degree, X.arithmetic),
    )


def resonant_part(X: VectorField, N: int) -> VectorField:
    return split(X, N)[0]


def nonresonant_part(X: VectorField, N: int) -> VectorField:
    return split(X, N)[1]


def first_resonant_term(X: VectorField, N: int) -> Optional[TermKey]:
    for key, _ in X.sorted_terms():
        if is_resonant(key[0], key[1], N):
            return key
    return None


def require_nonresonant(X: VectorField, N: int, what: str = "field") -> None:
    key = first_resonant_term(X, N)
    if key is not None:
        index, j = key
        raise ResonanceError(
            f"{what} has resonant content on the monomial z^[{index}] e_{j}"
        )


def iter_monomial_fields(n: int, max_degree: int) -> Iterator[TermKey]:
    """All (Q, j) with |Q| ≤ max_degree, degrees ascending, in canonical order"""
    for degree in range(max_degree + 1):
        for index in monomials(n, degree):
            for j in variable_range(n):
                yield index, j


def small_divisor_audit(d_max: int, N: int, n: Optional[int] = None) -> int:
    """
    min over nonresonant (Q, j), 2 ≤ |Q| ≤ d_max, of max_i |divisor(Q, j, i)|.
    Monomials live in n variables pairs, n defaulting to N.
    """
    if d_max < 2:
        raise AlgebraError(f"invalid audit degree {d_max}")
    n = N if n is None else n
    best: Optional[int] = None
    for index, j in iter_monomial_fields(n, d_max):
        if index.degree < 2:
            continue
        values = divisors(index, j, N)
        if any(values):
            largest = max(abs(value) for value in values)
            best = largest if best is None else min(best, largest)
    logger.debug("d_max=%d N=%d n=%d audit=%s", d_max, N, n, best)
    # An integer divisor vector which is not zero has an entry of modulus ≥ 1
    return 1 if best is None else best


def resonant_monomials_are_standard(d_max: int, n: int) -> bool:
    """
    Check that, with N = n, the resonant monomials on e_j are exactly
    ±z_j·Π(z_l z_{-l})^{k_l}, up to degree d_max
    """
    for index, j in iter_monomial_fields(n, d_max):
        standard = index[j] >= 1 and index.lower(j).is_action()
        if is_resonant(index, j, n) != standard:
            return False
    return True


@dataclass(frozen=True)
class GeneralizedEigenvalue:
    """Vector (λ_1, ..., λ_N) of the divisors of a monomial field"""

    entries: Tuple[int, ...]

    @property
    def support(self) -> Tuple[int, ...]:
        """1-based indices i with λ_i ≠ 0"""
        return tuple(i for i, value in enumerate(self.entries, start=1) if value)

    @property
    def norm(self) -> int:
        """|λ| = Σ |λ_i|"""
        return sum(abs(value) for value in self.entries)

    def sign(self, i: int) -> int:
        value = self.entries[i - 1]
        return (value > 0) - (value < 0)

    def is_zero(self) -> bool:
        return not any(self.entries)

    def __str__(self) -> str:
        return "(" + ", ".join(str(value) for value in self.entries) + ")"


def eigenvalue_of(index: MultiIndex, j: int, N: int) -> GeneralizedEigenvalue:
    return GeneralizedEigenvalue(divisors(index, j, N))


def eigen_decompose(X: VectorField, N: int) -> Dict[GeneralizedEigenvalue, VectorField]:
    """
    Group the terms of X by generalized eigenvalue. Blocks are returned in the
    order of their first term in canonical order, and sum to X.
    """
    blocks: Dict[GeneralizedEigenvalue, Dict[TermKey, Coefficient]] = {}
    for key, value in X.sorted_terms():
        eigenvalue = eigenvalue_of(*key, N)
        blocks.setdefault(eigenvalue, {})[key] = value
    return {
        eigenvalue: VectorField._build(terms, X.n, X.trunc_degree, X.arithmetic)
        for eigenvalue, terms in blocks.items()
    }
