from typing import Any, Dict, List, Mapping, Tuple

import numpy as np

from birkhoff.core.algebra.coefficients import RATIONAL, Arithmetic, Coefficient
from birkhoff.core.algebra.multi_index import MultiIndex, check_variable, variable_range
from birkhoff.core.algebra.scalar_function import (
    ScalarFunction,
    monomial_values,
    position,
)
from birkhoff.core.algebra.sparse import SparseTerms, accumulate, check_index
from birkhoff.core.errors import AlgebraError


TermKey = Tuple[MultiIndex, int]


class VectorField(SparseTerms[TermKey]):
    """
    Truncated polynomial vector field X(z) = Σ X_{Q,j} z^Q e_j, keyed by (Q, j)
    """

    __slots__ = ()

    @staticmethod
    def _degree(key: TermKey) -> int:
        return key[0].degree

    @staticmethod
    def _check_key(key: TermKey, n: int) -> None:
        try:
            index, component = key
        except (TypeError, ValueError):
            raise AlgebraError(f"invalid term key {key!r}")
        if not isinstance(index, MultiIndex):
            raise AlgebraError(f"invalid monomial {index!r}")
        check_index(index, n)
        check_variable(component, n)

    def _sort_key(self, key: TermKey) -> Any:
        return key[0].sort_key(self.n), key[1]

    def _format_term(self, key: TermKey, value: Coefficient) -> str:
        return f"{value}*z[{key[0]}]e[{key[1]}]"

    @classmethod
    def zero(
        cls, n: int, trunc_degree: int, arithmetic: Arithmetic = RATIONAL
    ) -> "VectorField":
        return cls._build({}, n, trunc_degree, arithmetic)

    @classmethod
    def monomial(
        cls,
        exponents: Mapping[int, int],
        component: int,
        n: int,
        trunc_degree: int,
        coefficient: Any = 1,
        arithmetic: Arithmetic = RATIONAL,
    ) -> "VectorField":
        return cls(
            {(MultiIndex(exponents), component): coefficient},
            n,
            trunc_degree,
            arithmetic,
        )

    @classmethod
    def fundamental(
        cls,
        i: int,
        n: int,
        trunc_degree: int,
        arithmetic: Arithmetic = RATIONAL,
    ) -> "VectorField":
        """E^i = z_i e_i - z_{-i} e_{-i}, the Hamiltonian field of i z_i z_{-i}"""
        check_variable(i, n)
        if i < 0:
            raise AlgebraError("fundamental fields are indexed by i ≥ 1")
        return cls(
            {
                (MultiIndex.variable(i), i): 1,
                (MultiIndex.variable(-i), -i): -1,
            },
            n,
            trunc_degree,
            arithmetic,
        )

    @classmethod
    def from_components(
        cls,
        components: Mapping[int, ScalarFunction],
        n: int,
        trunc_degree: int,
        arithmetic: Arithmetic = RATIONAL,
    ) -> "VectorField":
        terms: Dict[TermKey, Coefficient] = {}
        for component, function in components.items():
            check_variable(component, n)
            trunc_degree = min(trunc_degree, function.trunc_degree)
            for index, value in function.terms.items():
                terms[(index, component)] = value
        return cls._build(terms, n, trunc_degree, arithmetic)

    def coefficient(self, index: MultiIndex, component: int) -> Coefficient:
        return self._terms.get((index, component), self.arithmetic.zero)

    def component(self, j: int) -> ScalarFunction:
        """The scalar function in front of e_j"""
        return ScalarFunction._build(
            {index: value for (index, comp), value in self._terms.items() if comp == j},
            self.n,
            self.trunc_degree,
            self.arithmetic,
        )

    def by_component(self) -> Dict[int, List[Tuple[MultiIndex, Coefficient]]]:
        grouped: Dict[int, List[Tuple[MultiIndex, Coefficient]]] = {}
        for (index, component), value in self._terms.items():
            grouped.setdefault(component, []).append((index, value))
        return grouped

    def times_scalar(self, a: ScalarFunction) -> "VectorField":
        """a·X, exact up to min(t_a + m_X, t_X + m_a)"""
        self.check_compatible(a)
        trunc = min(a.trunc_degree + self.min_degree, self.trunc_degree + a.min_degree)
        terms: Dict[TermKey, Coefficient] = {}
        for p, c in a.terms.items():
            for (q, component), value in self._terms.items():
                if p.degree + q.degree <= trunc:
                    accumulate(terms, (p * q, component), c * value)
        return self._same(terms, trunc)

    def __call__(self, z: "np.ndarray") -> "np.ndarray":
        return evaluate(self, z)


def evaluate(X: VectorField, z: "np.ndarray") -> "np.ndarray":
    """X(z) as a dense complex vector ordered like the variables"""
    z = np.asarray(z, dtype=complex)
    if z.shape != (2 * X.n,):
        raise AlgebraError(f"expected a point with {2 * X.n} coordinates")
    result = np.zeros(2 * X.n, dtype=complex)
    for (index, component), value in X.terms.items():
        result[position(component, X.n)] += complex(value) * monomial_values(
            index, z, X.n
        )
    return result


def jacobian(X: VectorField, z: "np.ndarray") -> "np.ndarray":
    """DX(z), with rows indexed by components and columns by variables"""
    z = np.asarray(z, dtype=complex)
    if z.shape != (2 * X.n,):
        raise AlgebraError(f"expected a point with {2 * X.n} coordinates")
    result = np.zeros((2 * X.n, 2 * X.n), dtype=complex)
    for (index, component), value in X.terms.items():
        row = position(component, X.n)
        for var, exp, lowered in index.derivatives():
            result[row, position(var, X.n)] += (
                complex(value) * exp * monomial_values(lowered, z, X.n)
            )
    return result


def fundamental_family(
    n: int, trunc_degree: int, arithmetic: Arithmetic = RATIONAL, count: int = 0
) -> List[VectorField]:
    """[E^1, ..., E^count], count defaulting to n"""
    return [
        VectorField.fundamental(i, n, trunc_degree, arithmetic)
        for i in range(1, (count or n) + 1)
    ]


def all_components(n: int) -> Tuple[int, ...]:
    return tuple(variable_range(n))
