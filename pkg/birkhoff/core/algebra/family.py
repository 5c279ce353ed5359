import concurrent.futures
import logging
from typing import Callable, Iterable, Iterator, List, Optional, Sequence, TypeVar

from birkhoff.core.algebra.coefficients import RATIONAL, Arithmetic
from birkhoff.core.algebra.vector_field import VectorField, fundamental_family
from birkhoff.core.constants import MAX_WORKERS
from birkhoff.core.errors import AlgebraError


logger = logging.getLogger(__name__)

T = TypeVar("T")
R = TypeVar("R")


def parallel_map(
    fn: Callable[[T], R], items: Iterable[T], workers: Optional[int] = None
) -> List[R]:
    """
    Apply `fn` to every item using at most `workers` threads (defaults to
    MAX_WORKERS). Results are returned in submission order.
    """
    items = list(items)
    if workers is None:
        workers = MAX_WORKERS
    if workers <= 1 or len(items) <= 1:
        return [fn(item) for item in items]
    with concurrent.futures.ThreadPoolExecutor(
        max_workers=workers, thread_name_prefix="birkhoff"
    ) as executor:
        futures = [executor.submit(fn, item) for item in items]
        return [future.result() for future in futures]


class Family:
    """
    Ordered family of vector fields X^1, ..., X^N sharing n and the truncation
    degree. Members are indexed from 1 by `member()`, from 0 by `[]`.
    """

    __slots__ = ("fields", "n", "trunc_degree", "arithmetic")

    fields: Sequence[VectorField]

    def __init__(
        self,
        fields: Iterable[VectorField],
        n: Optional[int] = None,
        trunc_degree: Optional[int] = None,
        arithmetic: Optional[Arithmetic] = None,
    ):
        fields = list(fields)
        if fields:
            first = fields[0]
            n = first.n if n is None else n
            arithmetic = arithmetic or first.arithmetic
            min_trunc = min(field.trunc_degree for field in fields)
            trunc_degree = (
                min_trunc if trunc_degree is None else min(trunc_degree, min_trunc)
            )
            for field in fields:
                if field.n != n:
                    raise AlgebraError(
                        f"family members must share n: got n={field.n} and n={n}"
                    )
                arithmetic.check_compatible(field.arithmetic)
        elif n is None or trunc_degree is None:
            raise AlgebraError("an empty family needs an explicit n and trunc_degree")
        assert n is not None and trunc_degree is not None
        self.n = n
        self.trunc_degree = trunc_degree
        self.arithmetic = arithmetic or RATIONAL
        self.fields = tuple(
            field if field.trunc_degree == trunc_degree else field.jet(trunc_degree)
            for field in fields
        )

    @classmethod
    def fundamental(
        cls,
        n: int,
        trunc_degree: int,
        arithmetic: Arithmetic = RATIONAL,
        count: int = 0,
    ) -> "Family":
        """The family E = (E^1, ..., E^N), N defaulting to n"""
        return cls(
            fundamental_family(n, trunc_degree, arithmetic, count),
            n,
            trunc_degree,
            arithmetic,
        )

    @property
    def N(self) -> int:
        return len(self.fields)

    def __len__(self) -> int:
        return len(self.fields)

    def __iter__(self) -> Iterator[VectorField]:
        return iter(self.fields)

    def __getitem__(self, index: int) -> VectorField:
        return self.fields[index]

    def member(self, i: int) -> VectorField:
        if not 1 <= i <= self.N:
            raise AlgebraError(f"family member {i} out of range 1..{self.N}")
        return self.fields[i - 1]

    def map(
        self, fn: Callable[[VectorField], VectorField], parallel: bool = False
    ) -> "Family":
        if parallel:
            fields = parallel_map(fn, self.fields)
        else:
            fields = [fn(field) for field in self.fields]
        return Family(
            fields, self.n, None if fields else self.trunc_degree, self.arithmetic
        )

    def jet(self, degree: int) -> "Family":
        return Family(
            [field.jet(degree) for field in self.fields],
            self.n,
            min(degree, self.trunc_degree),
            self.arithmetic,
        )

    def __add__(self, other: "Family") -> "Family":
        if self.N != other.N:
            raise AlgebraError(f"cannot add families of sizes {self.N} and {other.N}")
        return Family(
            [x + y for x, y in zip(self.fields, other.fields)],
            self.n,
            min(self.trunc_degree, other.trunc_degree),
            self.arithmetic,
        )

    def __sub__(self, other: "Family") -> "Family":
        if self.N != other.N:
            raise AlgebraError(
                f"cannot subtract families of sizes {self.N} and {other.N}"
            )
        return Family(
            [x - y for x, y in zip(self.fields, other.fields)],
            self.n,
            min(self.trunc_degree, other.trunc_degree),
            self.arithmetic,
        )

    def is_zero(self) -> bool:
        return all(field.is_zero() for field in self.fields)

    @property
    def min_degree(self) -> int:
        return min(
            (field.min_degree for field in self.fields), default=self.trunc_degree + 1
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Family):
            return NotImplemented
        return self.n == other.n and tuple(self.fields) == tuple(other.fields)

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"Family(N={self.N}, n={self.n}, trunc={self.trunc_degree})"
