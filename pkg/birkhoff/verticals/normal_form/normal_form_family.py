import logging
from dataclasses import dataclass
from typing import List, Sequence

from birkhoff.core.algebra.coefficients import Arithmetic
from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.lie import bracket
from birkhoff.core.algebra.scalar_function import ScalarFunction
from birkhoff.core.algebra.vector_field import VectorField
from birkhoff.core.errors import AlgebraError, IntegrabilityError
from birkhoff.core.resonance import nonresonant_part


logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class NormalFormFamily:
    """
    NF^i = E^i + N^i with N^i = Σ_j a_{i,j} E^j, the a_{i,j} being polynomials in
    the actions z_l z_{-l}. `coefficients[i - 1][j - 1]` holds a_{i,j}.
    """

    coefficients: Sequence[Sequence[ScalarFunction]]
    n: int
    trunc_degree: int
    arithmetic: Arithmetic

    def __post_init__(self) -> None:
        for i, row in enumerate(self.coefficients, start=1):
            if len(row) != self.n:
                raise AlgebraError(f"row {i} of the normal form has {len(row)} entries")
            for j, a in enumerate(row, start=1):
                if not a.is_action_function():
                    raise IntegrabilityError(
                        f"a_{i},{j} is not a function of the actions: {a!r}"
                    )

    @classmethod
    def trivial(
        cls, N: int, n: int, trunc_degree: int, arithmetic: Arithmetic
    ) -> "NormalFormFamily":
        """NF = E"""
        zero = ScalarFunction.zero(n, trunc_degree, arithmetic)
        return cls(
            tuple(tuple(zero for _ in range(n)) for _ in range(N)),
            n,
            trunc_degree,
            arithmetic,
        )

    @classmethod
    def from_corrections(cls, corrections: Family) -> "NormalFormFamily":
        """
        Factor each N^i as Σ_j a_{i,j} E^j. The e_j component of N^i must be
        a_{i,j} z_j and its e_{-j} component -a_{i,j} z_{-j}, with a_{i,j} a
        function of the actions; IntegrabilityError names the first term which
        does not fit.
        """
        n = corrections.n
        rows: List[List[ScalarFunction]] = []
        for i, member in enumerate(corrections, start=1):
            nonresonant = nonresonant_part(member, n)
            if nonresonant:
                index, j = next(nonresonant.sorted_terms())[0]
                raise IntegrabilityError(
                    f"N^{i} has the nonresonant term z^[{index}] e_{j}"
                )
            row: List[ScalarFunction] = []
            for j in range(1, n + 1):
                try:
                    a = member.component(j).divide_by_variable(j)
                except AlgebraError as exc:
                    raise IntegrabilityError(f"N^{i}, component e_{j}: {exc}") from exc
                if not a.is_action_function():
                    index = next(
                        idx for idx, _ in a.sorted_terms() if not idx.is_action()
                    )
                    raise IntegrabilityError(
                        f"N^{i}, component e_{j}: coefficient of z^[{index.raise_(j)}]"
                        " is not an action monomial times z_j"
                    )
                expected = a.times_variable(-j).scale(-1)
                actual = member.component(-j)
                if not expected.close_to(actual.jet(expected.trunc_degree)):
                    raise IntegrabilityError(
                        f"N^{i}: component e_{-j} is not -a_{i},{j} z_{-j}"
                    )
                row.append(a.with_trunc(corrections.trunc_degree))
            rows.append(row)
        return cls(
            tuple(tuple(row) for row in rows),
            n,
            corrections.trunc_degree,
            corrections.arithmetic,
        )

    @property
    def N(self) -> int:
        return len(self.coefficients)

    def a(self, i: int, j: int) -> ScalarFunction:
        return self.coefficients[i - 1][j - 1]

    def correction(self, i: int) -> VectorField:
        """N^i = Σ_j a_{i,j} E^j"""
        result = VectorField.zero(self.n, self.trunc_degree, self.arithmetic)
        for j in range(1, self.n + 1):
            a = self.a(i, j)
            if a:
                E_j = VectorField.fundamental(
                    j, self.n, self.trunc_degree, self.arithmetic
                )
                result = result + E_j.times_scalar(a)
        return result.with_trunc(self.trunc_degree)

    def corrections(self) -> Family:
        return Family(
            [self.correction(i) for i in range(1, self.N + 1)],
            self.n,
            self.trunc_degree,
            self.arithmetic,
        )

    def field(self, i: int) -> VectorField:
        """NF^i = E^i + N^i"""
        E_i = VectorField.fundamental(i, self.n, self.trunc_degree, self.arithmetic)
        return E_i + self.correction(i)

    def fields(self) -> Family:
        return Family(
            [self.field(i) for i in range(1, self.N + 1)],
            self.n,
            self.trunc_degree,
            self.arithmetic,
        )

    def with_trunc(self, trunc_degree: int) -> "NormalFormFamily":
        return NormalFormFamily(
            tuple(
                tuple(a.with_trunc(trunc_degree) for a in row)
                for row in self.coefficients
            ),
            self.n,
            trunc_degree,
            self.arithmetic,
        )

    def commutes(self) -> bool:
        """[NF^i, NF^j] = 0 for all pairs, up to the truncation degree"""
        fields = self.fields()
        return all(
            bracket(fields.member(i), fields.member(j)).is_zero()
            for i in range(1, self.N + 1)
            for j in range(i + 1, self.N + 1)
        )

    def homogeneous_part(self, i: int, degree: int) -> VectorField:
        """NF^i_p, the degree-p part of NF^i"""
        return self.field(i).homogeneous(degree)
