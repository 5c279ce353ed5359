from typing import Any, Dict, Iterable, Mapping, Tuple

import numpy as np

from birkhoff.core.algebra.coefficients import RATIONAL, Arithmetic, Coefficient
from birkhoff.core.algebra.multi_index import ONE, MultiIndex, check_variable
from birkhoff.core.algebra.sparse import SparseTerms, accumulate, check_index
from birkhoff.core.errors import AlgebraError


class ScalarFunction(SparseTerms[MultiIndex]):
    """
    Truncated polynomial Σ H_Q z^Q. Hamiltonians, actions and the coefficients
    a_{i,j} of a normal form are scalar functions.
    """

    __slots__ = ()

    @staticmethod
    def _degree(key: MultiIndex) -> int:
        return key.degree

    @staticmethod
    def _check_key(key: MultiIndex, n: int) -> None:
        if not isinstance(key, MultiIndex):
            raise AlgebraError(f"invalid monomial {key!r}")
        check_index(key, n)

    def _sort_key(self, key: MultiIndex) -> Any:
        return key.sort_key(self.n)

    def _format_term(self, key: MultiIndex, value: Coefficient) -> str:
        return f"{value}*z[{key}]"

    @classmethod
    def zero(
        cls, n: int, trunc_degree: int, arithmetic: Arithmetic = RATIONAL
    ) -> "ScalarFunction":
        return cls._build({}, n, trunc_degree, arithmetic)

    @classmethod
    def constant(
        cls,
        value: Any,
        n: int,
        trunc_degree: int,
        arithmetic: Arithmetic = RATIONAL,
    ) -> "ScalarFunction":
        return cls({ONE: value}, n, trunc_degree, arithmetic)

    @classmethod
    def variable(
        cls,
        var: int,
        n: int,
        trunc_degree: int,
        arithmetic: Arithmetic = RATIONAL,
    ) -> "ScalarFunction":
        check_variable(var, n)
        return cls({MultiIndex.variable(var): 1}, n, trunc_degree, arithmetic)

    @classmethod
    def from_exponents(
        cls,
        terms: Iterable[Tuple[Mapping[int, int], Any]],
        n: int,
        trunc_degree: int,
        arithmetic: Arithmetic = RATIONAL,
    ) -> "ScalarFunction":
        """Build from (exponent dict, coefficient) pairs, adding repeated monomials"""
        dct: Dict[MultiIndex, Coefficient] = {}
        for exponents, value in terms:
            accumulate(dct, MultiIndex(exponents), arithmetic.coerce(value))
        return cls(dct, n, trunc_degree, arithmetic)

    def coefficient(self, index: MultiIndex) -> Coefficient:
        return self._terms.get(index, self.arithmetic.zero)

    def __mul__(self, other: "ScalarFunction") -> "ScalarFunction":
        """Product, exact up to min(t_H + m_K, t_K + m_H)"""
        self.check_compatible(other)
        trunc = min(
            self.trunc_degree + other.min_degree, other.trunc_degree + self.min_degree
        )
        terms: Dict[MultiIndex, Coefficient] = {}
        for p, a in self._terms.items():
            for q, b in other._terms.items():
                if p.degree + q.degree <= trunc:
                    accumulate(terms, p * q, a * b)
        return self._same(terms, trunc)

    def derivative(self, var: int) -> "ScalarFunction":
        """∂H/∂z_var, exact up to trunc_degree - 1"""
        terms: Dict[MultiIndex, Coefficient] = {}
        for index, value in self._terms.items():
            exp = index[var]
            if exp:
                accumulate(terms, index.lower(var), value * exp)
        return self._same(terms, max(self.trunc_degree - 1, 0))

    def divide_by_variable(self, var: int) -> "ScalarFunction":
        """Return H / z_var. Raises AlgebraError naming the first monomial z_var
        does not divide."""
        terms: Dict[MultiIndex, Coefficient] = {}
        for index, value in self.sorted_terms():
            if not index[var]:
                raise AlgebraError(f"z_{var} does not divide the monomial z^[{index}]")
            terms[index.lower(var)] = value
        return self._same(terms, max(self.trunc_degree - 1, 0))

    def times_variable(self, var: int) -> "ScalarFunction":
        return self._same(
            {index.raise_(var): value for index, value in self._terms.items()},
            self.trunc_degree + 1,
        )

    def is_action_function(self) -> bool:
        """True if H is a polynomial in the products z_l z_{-l}"""
        return all(index.is_action() for index in self._terms)

    def __call__(self, z: "np.ndarray") -> complex:
        return evaluate_scalar(self, z)


def action_function(
    coefficients: Mapping[Tuple[int, ...], Any],
    n: int,
    trunc_degree: int,
    arithmetic: Arithmetic = RATIONAL,
) -> ScalarFunction:
    """
    Build Σ c_k Π_l (z_l z_{-l})^{k_l} from {(k_1, ..., k_n): c_k}
    """
    terms: Dict[MultiIndex, Coefficient] = {}
    for powers, value in coefficients.items():
        if len(powers) != n:
            raise AlgebraError(f"expected {n} action powers, got {len(powers)}")
        index = MultiIndex.action(
            {var: power for var, power in enumerate(powers, start=1)}
        )
        accumulate(terms, index, arithmetic.coerce(value))
    return ScalarFunction(terms, n, trunc_degree, arithmetic)


def position(var: int, n: int) -> int:
    """Position of z_var in a dense vector ordered -n, ..., -1, 1, ..., n"""
    return var + n if var < 0 else var + n - 1


def monomial_values(index: MultiIndex, z: "np.ndarray", n: int) -> complex:
    result = 1 + 0j
    for var, exp in index.items():
        result *= z[position(var, n)] ** exp
    return result


def evaluate_scalar(H: ScalarFunction, z: "np.ndarray") -> complex:
    z = np.asarray(z, dtype=complex)
    if z.shape != (2 * H.n,):
        raise AlgebraError(f"expected a point with {2 * H.n} coordinates")
    return complex(
        sum(
            complex(value) * monomial_values(index, z, H.n)
            for index, value in H.terms.items()
        )
    )
