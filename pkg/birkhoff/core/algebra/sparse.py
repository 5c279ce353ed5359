from typing import (
    Any,
    Callable,
    Dict,
    Generic,
    Hashable,
    Iterator,
    Mapping,
    Tuple,
    Type,
    TypeVar,
)

from birkhoff.core.algebra.coefficients import RATIONAL, Arithmetic, Coefficient
from birkhoff.core.algebra.multi_index import MultiIndex
from birkhoff.core.constants import FLOAT_RELATIVE_TOLERANCE
from birkhoff.core.errors import AlgebraError


K = TypeVar("K", bound=Hashable)
S = TypeVar("S", bound="SparseTerms[Any]")


def accumulate(dst: Dict[K, Coefficient], key: K, value: Coefficient) -> None:
    if key in dst:
        dst[key] = dst[key] + value
    else:
        dst[key] = value


class SparseTerms(Generic[K]):
    """
    Common part of scalar functions and vector fields: an immutable map from keys to
    nonzero coefficients, truncated at `trunc_degree`.
    """

    __slots__ = ("_terms", "n", "trunc_degree", "arithmetic", "_min_degree")

    _terms: Dict[K, Coefficient]
    n: int
    trunc_degree: int
    arithmetic: Arithmetic

    def __init__(
        self,
        terms: Mapping[K, Any],
        n: int,
        trunc_degree: int,
        arithmetic: Arithmetic = RATIONAL,
    ):
        if n < 0:
            raise AlgebraError(f"invalid variable count {n}")
        if trunc_degree < 0:
            raise AlgebraError(f"invalid truncation degree {trunc_degree}")
        for key in terms:
            self._check_key(key, n)
        coerced = {key: arithmetic.coerce(value) for key, value in terms.items()}
        self._init(coerced, n, trunc_degree, arithmetic)

    def _init(
        self,
        terms: Dict[K, Coefficient],
        n: int,
        trunc_degree: int,
        arithmetic: Arithmetic,
    ) -> None:
        self._terms = {
            key: value
            for key, value in terms.items()
            if self._degree(key) <= trunc_degree and not arithmetic.is_zero(value)
        }
        self.n = n
        self.trunc_degree = trunc_degree
        self.arithmetic = arithmetic
        self._min_degree = min(
            (self._degree(key) for key in self._terms), default=trunc_degree + 1
        )

    @classmethod
    def _build(
        cls: Type[S],
        terms: Dict[K, Coefficient],
        n: int,
        trunc_degree: int,
        arithmetic: Arithmetic,
    ) -> S:
        """Internal constructor for already coerced terms"""
        obj = cls.__new__(cls)
        obj._init(terms, n, trunc_degree, arithmetic)
        return obj

    @staticmethod
    def _degree(key: K) -> int:
        raise NotImplementedError

    @staticmethod
    def _check_key(key: K, n: int) -> None:
        raise NotImplementedError

    def _sort_key(self, key: K) -> Any:
        raise NotImplementedError

    @property
    def terms(self) -> Mapping[K, Coefficient]:
        return self._terms

    @property
    def min_degree(self) -> int:
        """Order of vanishing; trunc_degree + 1 for the zero object"""
        return self._min_degree

    @property
    def max_degree(self) -> int:
        return max((self._degree(key) for key in self._terms), default=-1)

    def is_zero(self) -> bool:
        return not self._terms

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def sorted_terms(self) -> Iterator[Tuple[K, Coefficient]]:
        """Terms in canonical order"""
        for key in sorted(self._terms, key=self._sort_key):
            yield key, self._terms[key]

    def degrees(self) -> Iterator[int]:
        return iter(sorted({self._degree(key) for key in self._terms}))

    def check_compatible(self, other: "SparseTerms[Any]") -> None:
        if self.n != other.n:
            raise AlgebraError(
                f"mismatched variable counts: n={self.n} and n={other.n}"
            )
        self.arithmetic.check_compatible(other.arithmetic)

    def _same(self: S, terms: Dict[K, Coefficient], trunc_degree: int) -> S:
        return self._build(terms, self.n, trunc_degree, self.arithmetic)

    def __add__(self: S, other: S) -> S:
        self.check_compatible(other)
        terms = dict(self._terms)
        for key, value in other._terms.items():
            accumulate(terms, key, value)
        return self._same(terms, min(self.trunc_degree, other.trunc_degree))

    def __sub__(self: S, other: S) -> S:
        return self + (-other)

    def __neg__(self: S) -> S:
        return self._same({k: -v for k, v in self._terms.items()}, self.trunc_degree)

    def scale(self: S, factor: Any) -> S:
        factor = self.arithmetic.coerce(factor)
        return self._same(
            {k: v * factor for k, v in self._terms.items()}, self.trunc_degree
        )

    def max_modulus(self) -> float:
        return max((abs(v) for v in self._terms.values()), default=0.0)

    def is_negligible(self, scale: float = 1.0) -> bool:
        """Zero in rational mode. In float mode, every coefficient is within the
        relative tolerance of `scale`."""
        if self.arithmetic.exact:
            return self.is_zero()
        bound = FLOAT_RELATIVE_TOLERANCE * max(1.0, scale)
        return all(abs(v) <= bound for v in self._terms.values())

    def close_to(self: S, other: S) -> bool:
        """Equality in rational mode, coefficient-wise agreement up to the relative
        tolerance in float mode"""
        self.check_compatible(other)
        if self.arithmetic.exact:
            return self == other
        zero = self.arithmetic.zero
        for key in self._terms.keys() | other._terms.keys():
            a = self._terms.get(key, zero)
            b = other._terms.get(key, zero)
            if abs(a - b) > FLOAT_RELATIVE_TOLERANCE * max(1.0, abs(a), abs(b)):
                return False
        return True

    def jet(self: S, degree: int) -> S:
        """Keep the terms of degree ≤ `degree`"""
        if degree < 0:
            raise AlgebraError(f"invalid jet degree {degree}")
        return self._same(dict(self._terms), min(degree, self.trunc_degree))

    def higher(self: S, degree: int) -> S:
        """Keep the terms of degree > `degree`: (id - J^degree)"""
        return self._same(
            {k: v for k, v in self._terms.items() if self._degree(k) > degree},
            self.trunc_degree,
        )

    def homogeneous(self: S, degree: int) -> S:
        return self._same(
            {k: v for k, v in self._terms.items() if self._degree(k) == degree},
            self.trunc_degree,
        )

    def filter(self: S, keep: Callable[[K], bool]) -> S:
        return self._same(
            {k: v for k, v in self._terms.items() if keep(k)}, self.trunc_degree
        )

    def with_trunc(self: S, trunc_degree: int) -> S:
        return self._same(dict(self._terms), trunc_degree)

    def to_float(self: S, arithmetic: Arithmetic) -> S:
        return self._build(
            {k: arithmetic.coerce(complex(v)) for k, v in self._terms.items()},
            self.n,
            self.trunc_degree,
            arithmetic,
        )

    def __eq__(self, other: object) -> bool:
        """Two objects are equal when they have the same variables and terms. The
        truncation degree is not compared."""
        if type(self) is not type(other):
            return NotImplemented
        assert isinstance(other, SparseTerms)
        return self.n == other.n and self._terms == other._terms

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        body = " + ".join(self._format_term(k, v) for k, v in self.sorted_terms())
        return (
            f"{type(self).__name__}({body or '0'}; n={self.n},"
            f" trunc={self.trunc_degree})"
        )

    def _format_term(self, key: K, value: Coefficient) -> str:
        raise NotImplementedError


def check_index(index: MultiIndex, n: int) -> None:
    if index.max_variable() > n:
        raise AlgebraError(f"monomial {index} uses a variable beyond n={n}")
