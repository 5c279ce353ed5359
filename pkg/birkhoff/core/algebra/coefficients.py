"""
Coefficient arithmetic.

Fields and scalar functions carry complex coefficients in one of two modes:

- rational: `GaussianRational`, a complex number with `Fraction` parts. Every divisor
  met by the algorithms is a nonzero integer, so this mode stays exact end-to-end.
- float: Python `complex`, with a threshold under which a coefficient is dropped.

`Arithmetic` bundles the mode and the threshold. All the objects taking part in an
operation must share the same `Arithmetic`.
"""

import math
from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from typing import Union

from birkhoff.core.constants import DEFAULT_ZERO_THRESHOLD
from birkhoff.core.errors import AlgebraError


_Real = Union[int, Fraction]


class GaussianRational:
    __slots__ = ("re", "im")

    re: Fraction
    im: Fraction

    def __init__(self, re: _Real = 0, im: _Real = 0):
        self.re = re if isinstance(re, Fraction) else Fraction(re)
        self.im = im if isinstance(im, Fraction) else Fraction(im)

    @staticmethod
    def _lift(other: object) -> "GaussianRational":
        if isinstance(other, GaussianRational):
            return other
        if isinstance(other, (int, Fraction)):
            return GaussianRational(other)
        return NotImplemented  # type: ignore[return-value]

    def __add__(self, other: object) -> "GaussianRational":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re + o.re, self.im + o.im)

    __radd__ = __add__

    def __sub__(self, other: object) -> "GaussianRational":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(self.re - o.re, self.im - o.im)

    def __rsub__(self, other: object) -> "GaussianRational":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o - self

    def __mul__(self, other: object) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            return GaussianRational(self.re * other, self.im * other)
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return GaussianRational(
            self.re * o.re - self.im * o.im, self.re * o.im + self.im * o.re
        )

    __rmul__ = __mul__

    def __truediv__(self, other: object) -> "GaussianRational":
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("division of a coefficient by zero")
            return GaussianRational(self.re / other, self.im / other)
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        norm = o.re * o.re + o.im * o.im
        if not norm:
            raise ZeroDivisionError("division of a coefficient by zero")
        return GaussianRational(
            (self.re * o.re + self.im * o.im) / norm,
            (self.im * o.re - self.re * o.im) / norm,
        )

    def __rtruediv__(self, other: object) -> "GaussianRational":
        o = self._lift(other)
        if o is NotImplemented:
            return NotImplemented
        return o / self

    def __neg__(self) -> "GaussianRational":
        return GaussianRational(-self.re, -self.im)

    def __pos__(self) -> "GaussianRational":
        return self

    def __abs__(self) -> float:
        return math.hypot(float(self.re), float(self.im))

    def __bool__(self) -> bool:
        return bool(self.re) or bool(self.im)

    def __complex__(self) -> complex:
        return complex(float(self.re), float(self.im))

    def __eq__(self, other: object) -> bool:
        if isinstance(other, GaussianRational):
            return self.re == other.re and self.im == other.im
        if isinstance(other, (int, Fraction)):
            return self.re == other and not self.im
        return NotImplemented

    def __hash__(self) -> int:
        if not self.im:
            return hash(self.re)
        return hash((self.re, self.im))

    def conjugate(self) -> "GaussianRational":
        return GaussianRational(self.re, -self.im)

    def __repr__(self) -> str:
        return f"GaussianRational({self.re}, {self.im})"

    def __str__(self) -> str:
        if not self.im:
            return str(self.re)
        if not self.re:
            return f"{self.im}i"
        sign = "+" if self.im > 0 else "-"
        return f"({self.re}{sign}{abs(self.im)}i)"


Coefficient = Union[GaussianRational, complex]


class Mode(str, Enum):
    RATIONAL = "rational"
    FLOAT = "float"


@dataclass(frozen=True)
class Arithmetic:
    mode: Mode = Mode.RATIONAL
    zero_threshold: float = DEFAULT_ZERO_THRESHOLD

    @property
    def exact(self) -> bool:
        return self.mode is Mode.RATIONAL

    @property
    def zero(self) -> Coefficient:
        return GaussianRational() if self.exact else 0j

    @property
    def one(self) -> Coefficient:
        return GaussianRational(1) if self.exact else 1 + 0j

    @property
    def i(self) -> Coefficient:
        return GaussianRational(0, 1) if self.exact else 1j

    def coerce(self, value: Union[Coefficient, _Real, float]) -> Coefficient:
        """Convert `value` to a coefficient of this mode. Floats enter rational
        mode through their exact binary value."""
        if self.exact:
            if isinstance(value, GaussianRational):
                return value
            if isinstance(value, complex):
                return GaussianRational(Fraction(value.real), Fraction(value.imag))
            return GaussianRational(Fraction(value))
        return complex(value)

    def is_zero(self, value: Coefficient) -> bool:
        if self.exact:
            return not value
        return abs(value) <= self.zero_threshold

    def check_compatible(self, other: "Arithmetic") -> None:
        if self.mode is not other.mode:
            raise AlgebraError(
                f"cannot combine {self.mode.value} and {other.mode.value} coefficients"
            )


RATIONAL = Arithmetic(Mode.RATIONAL)
FLOAT = Arithmetic(Mode.FLOAT)
