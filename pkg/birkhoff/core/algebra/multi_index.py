from typing import Dict, Iterable, Iterator, Mapping, Optional, Tuple

from birkhoff.core.errors import AlgebraError


class MultiIndex:
    """
    Exponent vector of a monomial z^Q, stored sparsely as sorted (variable, exponent)
    pairs. Variables are nonzero integers: z_j and z_{-j} form a conjugate pair.
    """

    __slots__ = ("_items", "degree", "_hash")

    _items: Tuple[Tuple[int, int], ...]
    degree: int

    def __init__(self, exponents: Optional[Mapping[int, int]] = None):
        items = []
        for var, exp in sorted((exponents or {}).items()):
            if var == 0:
                raise AlgebraError("variable index 0 does not exist")
            if exp < 0:
                raise AlgebraError(f"negative exponent {exp} for z_{var}")
            if exp:
                items.append((var, exp))
        self._set(tuple(items))

    def _set(self, items: Tuple[Tuple[int, int], ...]) -> None:
        self._items = items
        self.degree = sum(exp for _, exp in items)
        self._hash = hash(items)

    @classmethod
    def _from_items(cls, items: Tuple[Tuple[int, int], ...]) -> "MultiIndex":
        index = cls.__new__(cls)
        index._set(items)
        return index

    @classmethod
    def variable(cls, var: int, exp: int = 1) -> "MultiIndex":
        return cls({var: exp})

    @classmethod
    def action(cls, powers: Mapping[int, int]) -> "MultiIndex":
        """Return Π (z_l z_{-l})^{k_l} for `powers` = {l: k_l}, l ≥ 1"""
        exponents: Dict[int, int] = {}
        for var, power in powers.items():
            exponents[var] = power
            exponents[-var] = power
        return cls(exponents)

    def items(self) -> Iterator[Tuple[int, int]]:
        return iter(self._items)

    def variables(self) -> Iterator[int]:
        return (var for var, _ in self._items)

    def __getitem__(self, var: int) -> int:
        for v, exp in self._items:
            if v == var:
                return exp
        return 0

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MultiIndex):
            return NotImplemented
        return self._items == other._items

    def __hash__(self) -> int:
        return self._hash

    def __bool__(self) -> bool:
        return bool(self._items)

    def __repr__(self) -> str:
        return f"MultiIndex({dict(self._items)})"

    def __str__(self) -> str:
        if not self._items:
            return "-"
        return ",".join(f"{var}^{exp}" for var, exp in self._items)

    def max_variable(self) -> int:
        return max((abs(var) for var, _ in self._items), default=0)

    def __mul__(self, other: "MultiIndex") -> "MultiIndex":
        if not other._items:
            return self
        if not self._items:
            return other
        merged = dict(self._items)
        for var, exp in other._items:
            merged[var] = merged.get(var, 0) + exp
        return MultiIndex._from_items(tuple(sorted(merged.items())))

    def lower(self, var: int) -> "MultiIndex":
        """Divide z^Q by z_var. The caller makes sure var divides the monomial."""
        items = []
        for v, exp in self._items:
            if v == var:
                if exp > 1:
                    items.append((v, exp - 1))
            else:
                items.append((v, exp))
        return MultiIndex._from_items(tuple(items))

    def raise_(self, var: int) -> "MultiIndex":
        return self * MultiIndex._from_items(((var, 1),))

    def derivatives(self) -> Iterator[Tuple[int, int, "MultiIndex"]]:
        """Yield (var, exponent, Q - e_var) for every variable of the monomial"""
        for var, exp in self._items:
            yield var, exp, self.lower(var)

    def is_action(self) -> bool:
        """True if the monomial is Π (z_l z_{-l})^{k_l}"""
        exps = dict(self._items)
        return all(exps.get(-var) == exp for var, exp in self._items)

    def action_powers(self) -> Dict[int, int]:
        return {var: exp for var, exp in self._items if var > 0}

    def dense(self, n: int) -> Tuple[int, ...]:
        """Exponents on the variables ordered -n < ... < -1 < 1 < ... < n"""
        exps = dict(self._items)
        return tuple(exps.get(var, 0) for var in variable_range(n))

    def sort_key(self, n: int) -> Tuple[int, Tuple[int, ...]]:
        return self.degree, self.dense(n)


ONE = MultiIndex()


def variable_range(n: int) -> Iterable[int]:
    return tuple(range(-n, 0)) + tuple(range(1, n + 1))


def check_variable(var: int, n: int) -> None:
    if var == 0 or abs(var) > n:
        raise AlgebraError(f"index {var} out of range for n={n}")


def monomials(n: int, degree: int) -> Iterator[MultiIndex]:
    """Yield the monomials of total degree `degree` in 2n variables, in canonical
    order"""
    variables = list(variable_range(n))

    def rec(pos: int, left: int) -> Iterator[Tuple[int, ...]]:
        if pos == len(variables) - 1:
            yield (left,)
            return
        for exp in range(left, -1, -1):
            for rest in rec(pos + 1, left - exp):
                yield (exp,) + rest

    if not variables:
        if degree == 0:
            yield ONE
        return
    dense = sorted(rec(0, degree))
    for exps in dense:
        yield MultiIndex(dict(zip(variables, exps)))
