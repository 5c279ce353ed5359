import factory.random
import pytest

from birkhoff.core.algebra.coefficients import RATIONAL
from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.lie import bracket
from birkhoff.core.algebra.multi_index import MultiIndex
from birkhoff.core.algebra.scalar_function import action_function
from birkhoff.core.algebra.vector_field import VectorField
from birkhoff.core.errors import CohomologyError, ResonanceError
from birkhoff.core.resonance import (
    GeneralizedEigenvalue,
    eigen_decompose,
    is_resonant,
    split,
)
from birkhoff.verticals.normal_form.cohomology import (
    Cocycle,
    choose_witness,
    cocycle_check,
    forward_instance,
    inverse_divisor,
    solution_bound_check,
    solve_linear,
    solve_nonlinear_recursive,
    solve_nonlinear_spectral,
    spectral_projection,
)
from birkhoff.verticals.normal_form.normal_form_family import NormalFormFamily
from tests.factories import CocycleFactory, NormalFormFactory, VectorFieldFactory


def _normalized_generator(m: int, n: int = 2) -> VectorField:
    return VectorFieldFactory(
        n=n,
        min_degree=m + 1,
        max_degree=2 * m,
        trunc_degree=2 * m,
        term_count=4,
        nonresonant=True,
    )


class TestLinear:
    @pytest.mark.parametrize("seed", range(200))
    def test_solution_is_recovered(self, seed):
        """
        GIVEN F^i = [E^i, W] with W nonresonant, n ≤ 3 and degrees ≤ 5
        WHEN solving the linear equation
        THEN W is returned, and it has no resonant part
        """
        factory.random.reseed_random(seed)
        n = 1 + seed % 3
        W = VectorFieldFactory(
            n=n, nonresonant=True, max_degree=5, trunc_degree=5, term_count=8
        )
        F = CocycleFactory(solution=W)
        assert cocycle_check(F)
        Cocycle(F)
        U = solve_linear(F)
        assert U == W
        assert split(U, n)[0].is_zero()

    def test_fewer_fields_than_pairs(self):
        W = VectorFieldFactory(n=3, N=2, nonresonant=True, term_count=8)
        E = Family.fundamental(3, W.trunc_degree, count=2)
        F = Family([bracket(member, W) for member in E])
        assert F.N == 2
        assert solve_linear(F) == W

    def test_not_a_cocycle(self):
        """
        GIVEN F^1 = 0 and F^2 = z_1^2 e_1
        THEN [E^1, F^2] != [E^2, F^1] and no solution exists
        """
        F = Family([VectorField.zero(2, 4), VectorField.monomial({1: 2}, 1, 2, 4)])
        assert not cocycle_check(F)
        with pytest.raises(CohomologyError, match="not a cocycle"):
            Cocycle(F)
        with pytest.raises(CohomologyError, match=r"\[E\^2, U\] differs from F\^2"):
            solve_linear(F)

    def test_resonant_content(self):
        F = Family([VectorField.monomial({1: 2, -1: 1}, 1, 1, 4)])
        with pytest.raises(ResonanceError, match="resonant content"):
            solve_linear(F)


@pytest.mark.parametrize(
    ("exponents", "component", "expected"),
    [
        ({1: 2}, 1, 1),
        # divisors (-1, 3)
        ({2: 3}, 1, 2),
        # divisors (2, -2): ties go to the smallest index
        ({1: 2, -2: 1}, 2, 1),
    ],
)
def test_choose_witness(exponents, component, expected):
    assert choose_witness(MultiIndex(exponents), component, 2) == expected


def test_choose_witness_resonant():
    with pytest.raises(ResonanceError):
        choose_witness(MultiIndex({1: 1}), 1, 2)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize(
    "solver",
    [solve_nonlinear_recursive, solve_nonlinear_spectral],
    ids=["recursive", "spectral"],
)
def test_nonlinear_solution_is_recovered(m, solver):
    """
    GIVEN a completely integrable NF of degree ≤ m and a normalized W of degrees
    m+1..2m
    WHEN solving J^{2m}([NF^i, U]) = J^{2m}([NF^i, W])
    THEN U = W
    """
    nf = NormalFormFactory(trunc_degree=2 * m, max_degree=m)
    W = _normalized_generator(m)
    assert not any(is_resonant(index, j, 2) for index, j in W.terms)
    B = forward_instance(nf, W, m)
    assert solver(nf, B, m) == W


@pytest.mark.parametrize("seed", range(50))
def test_solvers_agree_on_random_instances(seed):
    """
    GIVEN 50 forward-built instances with m in {2, 4} and n ≤ 2
    THEN the recursive and the spectral solvers return the same generator, W
    """
    factory.random.reseed_random(seed)
    m = (2, 4)[seed % 2]
    n = 1 + (seed // 2) % 2
    nf = NormalFormFactory(n=n, trunc_degree=2 * m, max_degree=m)
    W = _normalized_generator(m, n)
    B = forward_instance(nf, W, m)
    recursive = solve_nonlinear_recursive(nf, B, m)
    assert recursive.terms == solve_nonlinear_spectral(nf, B, m).terms
    assert recursive == W


def test_solvers_agree_without_threads():
    nf = NormalFormFactory(trunc_degree=10, max_degree=5)
    B = forward_instance(nf, _normalized_generator(5), 5)
    assert solve_nonlinear_spectral(nf, B, 5, parallel=False) == (
        solve_nonlinear_recursive(nf, B, 5)
    )


def test_trivial_normal_form_reduces_to_the_linear_equation():
    nf = NormalFormFamily.trivial(2, 2, 6, RATIONAL)
    W = _normalized_generator(3)
    B = forward_instance(nf, W, 3)
    assert B == CocycleFactory(solution=W)
    assert solve_nonlinear_spectral(nf, B, 3) == solve_linear(B) == W


def test_inverse_divisor():
    """
    GIVEN NF^1 = E^1 + 2 I_1 E^1 and λ = (1)
    THEN 1/b_λ = 1/(1 + 2 I_1) = 1 - 2 I_1 + 4 I_1^2 - ...
    """
    a = action_function({(1,): 2}, 1, 6)
    nf = NormalFormFamily(((a,),), 1, 6, a.arithmetic)
    inverse = inverse_divisor(nf, GeneralizedEigenvalue((1,)), 6)
    assert inverse == action_function({(0,): 1, (1,): -2, (2,): 4, (3,): -8}, 1, 6)


@pytest.mark.parametrize(
    ("members", "message"),
    [
        (
            [VectorField.monomial({1: 2}, 1, 2, 4), VectorField.zero(2, 4)],
            "B\\^1 must live in degrees 3..4, got 2..2",
        ),
        ([VectorField.zero(2, 4)], "right-hand side has 1 members"),
    ],
)
def test_invalid_right_hand_side(members, message):
    nf = NormalFormFactory(trunc_degree=4, max_degree=2)
    B = Family(members, 2, 4)
    for solver in (solve_nonlinear_recursive, solve_nonlinear_spectral):
        with pytest.raises(CohomologyError, match=message):
            solver(nf, B, 2)


def test_spectral_solver_rejects_resonant_content():
    nf = NormalFormFactory(trunc_degree=6, max_degree=3)
    resonant = VectorField.monomial({1: 2, -1: 1, 2: 1, -2: 1}, 1, 2, 6)
    B = Family([resonant, VectorField.zero(2, 6)], 2, 6)
    with pytest.raises(ResonanceError):
        solve_nonlinear_spectral(nf, B, 3)
    with pytest.raises(CohomologyError, match="degree 5 stage"):
        solve_nonlinear_recursive(nf, B, 3)


@pytest.mark.parametrize("m", [2, 3, 4])
def test_solution_bound(m):
    """
    GIVEN a small radius, on which ‖DN‖ ≤ 1/2
    THEN the solution is bounded by four times the right-hand side
    """
    nf = NormalFormFactory(trunc_degree=2 * m, max_degree=m)
    W = _normalized_generator(m)
    B = forward_instance(nf, W, m)
    report = solution_bound_check(nf, B, solve_nonlinear_spectral(nf, B, m), 0.02)
    assert report.hypothesis_met
    assert report.ok, report.checks


def test_solution_bound_hypothesis():
    a = action_function({(1,): 100}, 1, 6)
    nf = NormalFormFamily(((a,),), 1, 6, a.arithmetic)
    B = Family([VectorField.monomial({1: 4}, 1, 1, 6)])
    report = solution_bound_check(nf, B, VectorField.zero(1, 6), 1.0)
    assert not report.hypothesis_met
    assert "exceeds 1/2" in report.checks[0].note


def _reversed_terms(X: VectorField) -> VectorField:
    return VectorField(
        dict(reversed(list(X.terms.items()))), X.n, X.trunc_degree, X.arithmetic
    )


@pytest.mark.parametrize(
    "solver",
    [solve_nonlinear_recursive, solve_nonlinear_spectral],
    ids=["recursive", "spectral"],
)
def test_solution_does_not_depend_on_term_order(solver):
    """
    GIVEN the same instance with its terms inserted in reverse order
    THEN both instances have the same solution, term for term
    """
    nf = NormalFormFactory(trunc_degree=8, max_degree=4)
    B = forward_instance(nf, _normalized_generator(4), 4)
    permuted = Family([_reversed_terms(member) for member in B], 2, 8)
    assert [list(member.terms) for member in permuted] != [
        list(member.terms) for member in B
    ]

    U = solver(nf, B, 4)
    V = solver(nf, permuted, 4)
    assert U == V
    assert list(U.sorted_terms()) == list(V.sorted_terms())


def test_blocks_are_invariant_under_the_normal_form():
    """
    GIVEN a random field split into generalized eigenspaces
    THEN bracketing a block with NF^i keeps it in its eigenspace
    """
    nf = NormalFormFactory(max_degree=5, term_count=3)
    X = VectorFieldFactory(max_degree=5, trunc_degree=8, term_count=20)
    for eigenvalue, block in eigen_decompose(X, 2).items():
        for i in (1, 2):
            image = bracket(nf.field(i), block)
            assert set(eigen_decompose(image, 2)) <= {eigenvalue}


def test_spectral_projection_is_nilpotent():
    """
    GIVEN a normal form with nonconstant a_{i,j}
    THEN P_λ(P_λ(V)) = 0 for every block V_λ of a random field
    """
    nf = NormalFormFactory(max_degree=5, term_count=3)
    X = VectorFieldFactory(max_degree=4, trunc_degree=8, term_count=12)
    projections = []
    for eigenvalue, block in eigen_decompose(X, 2).items():
        projection = spectral_projection(nf, eigenvalue, block)
        projections.append(projection)
        assert spectral_projection(nf, eigenvalue, projection).is_zero()
    assert any(projections)
