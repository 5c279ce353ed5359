import math

import factory.random
import pytest

from birkhoff.core.algebra.coefficients import FLOAT, GaussianRational
from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.multi_index import MultiIndex
from birkhoff.core.algebra.vector_field import VectorField
from birkhoff.core.errors import AlgebraError
from birkhoff.core.norms import (
    InequalityCheck,
    InequalityReport,
    WeightTable,
    box_norm,
    commutator_linear_check,
    derivative_box_norm,
    dominates,
    family_majorant,
    flow_linear_remainder_check,
    flow_remainder_check,
    majorant,
    norm_report,
    sample_norm,
    scaling_check,
    within,
)
from tests.factories import VectorFieldFactory


def _small_generator(seed_scale: float = 1e-4) -> VectorField:
    return VectorFieldFactory(
        min_degree=2,
        max_degree=3,
        term_count=5,
        trunc_degree=6,
        arithmetic=FLOAT,
        scale=seed_scale,
    )


class TestWeightTable:
    def test_unit(self):
        weights = WeightTable.unit(2)
        assert weights.w1 == (1.0, 1.0)
        assert weights.n == 2

    def test_geometric(self):
        weights = WeightTable.geometric(3, 2.0)
        assert weights.w1 == (2.0, 4.0, 8.0)
        assert weights.inner(-2) == 4.0
        assert weights.outer(3) == 8.0
        assert WeightTable.for_ratio(3, None) == WeightTable.unit(3)

    @pytest.mark.parametrize(("w1", "w2"), [((0.0,), (1.0,)), ((2.0,), (1.0,))])
    def test_invalid(self, w1, w2):
        with pytest.raises(AlgebraError, match="need 0 < w1 ≤ w2"):
            WeightTable(w1, w2)

    def test_too_short(self):
        with pytest.raises(AlgebraError, match="cover 1 pairs, 2 needed"):
            box_norm(VectorField.fundamental(1, 2, 3), 1.0, WeightTable.unit(1))


def test_within():
    assert within(1.0, 1.0)
    assert within(1.0 + 1e-12, 1.0)
    assert not within(1.0 + 1e-6, 1.0)


def test_majorants():
    X = VectorField(
        {
            (MultiIndex({1: 2}), 1): GaussianRational(3, 4),
            (MultiIndex({1: 2}), -1): -2,
        },
        1,
        4,
    )
    M = majorant(X)
    assert M.coefficient(MultiIndex({1: 2}), 1) == 5
    assert M.coefficient(MultiIndex({1: 2}), -1) == 2
    assert dominates(X, M)
    assert dominates(M, X)
    assert not dominates(X, X.jet(1))
    assert dominates(X.jet(1), X)

    F = Family([X, -X])
    assert family_majorant(F) == majorant(X).scale(2)


def test_box_norm_of_the_fundamental_field():
    """
    GIVEN E^1 in one pair of variables
    THEN both components are bounded by r on the ball of radius r
    """
    E = VectorField.fundamental(1, 1, 3)
    assert box_norm(E, 0.5) == pytest.approx(0.5 * math.sqrt(2))
    assert derivative_box_norm(E, 0.5) == pytest.approx(math.sqrt(2))


def test_box_norm_with_weights():
    X = VectorField.monomial({2: 1}, 1, 2, 3)
    weights = WeightTable.geometric(2, 4.0)
    # |z_2| ≤ r / √16 and the e_1 component is weighted by √4
    assert box_norm(X, 1.0, weights) == pytest.approx(2.0 / 4.0)


def test_box_norm_invalid_radius():
    with pytest.raises(AlgebraError):
        box_norm(VectorField.fundamental(1, 1, 3), 0.0)


@pytest.mark.parametrize("weight_ratio", [None, 2.0])
def test_sample_norm_is_below_box_norm(weight_ratio):
    weights = WeightTable.for_ratio(2, weight_ratio)
    for X in VectorFieldFactory.build_batch(50, max_degree=4, term_count=10):
        sampled = sample_norm(X, 0.3, weights, samples=64, seed=3)
        assert 0 < sampled
        assert within(sampled, box_norm(X, 0.3, weights))
        assert sample_norm(X, 0.3, weights, samples=64, seed=3) == sampled


def test_sample_norm_of_zero():
    assert sample_norm(VectorField.zero(2, 4), 1.0) == 0.0
    with pytest.raises(AlgebraError):
        sample_norm(VectorField.zero(2, 4), 1.0, samples=0)


@pytest.mark.parametrize("m", [2, 3, 4, 5])
@pytest.mark.parametrize("alpha", [0.1, 0.5, 0.9, 1.0])
def test_scaling(m, alpha):
    """
    GIVEN fields with a zero of order m
    THEN box_norm(X, αr) ≤ α^m box_norm(X, r)
    AND the bound is an equality for homogeneous fields
    """
    for X in VectorFieldFactory.build_batch(
        13, min_degree=m, max_degree=m + 2, trunc_degree=8
    ):
        assert scaling_check(X, 0.7, alpha, m)

    for homogeneous in VectorFieldFactory.build_batch(
        5, min_degree=m, max_degree=m, trunc_degree=8
    ):
        assert box_norm(homogeneous, alpha * 0.7) == pytest.approx(
            alpha**m * box_norm(homogeneous, 0.7), rel=1e-12
        )


def test_scaling_invalid():
    X = VectorFieldFactory(min_degree=2, max_degree=3)
    with pytest.raises(AlgebraError, match="scaling factor"):
        scaling_check(X, 1.0, 1.5, 2)
    with pytest.raises(AlgebraError, match="min degree"):
        scaling_check(X.jet(3) + VectorField.fundamental(1, 2, 6), 1.0, 0.5, 2)


def test_norm_report():
    X = VectorFieldFactory()
    report = norm_report("R_0", X, 0.5, samples=16, seed=1)
    assert report.field == "R_0"
    assert report.radius == 0.5
    assert report.box_norm == box_norm(X, 0.5)
    assert report.sample_norm == sample_norm(X, 0.5, samples=16, seed=1)
    assert report.mode == "rational"


def test_inequality_report():
    report = InequalityReport(
        epsilon=0.1,
        checks=[
            InequalityCheck("a", 1.0, 2.0),
            InequalityCheck("b", math.nan, math.nan, hypothesis_met=False),
        ],
    )
    assert report.checks[0].holds is True
    assert report.checks[1].holds is None
    assert report.ok
    assert not report.hypothesis_met

    report.checks.append(InequalityCheck("c", 3.0, 2.0))
    assert not report.ok


class TestFlowEstimates:
    """
    Random small generators, for which ε is far below the gates: the inequalities
    must hold
    """

    @pytest.mark.parametrize("seed", range(25))
    @pytest.mark.parametrize("n", [1, 2])
    def test_flow_remainder(self, n, seed):
        factory.random.reseed_random(seed)
        U = VectorFieldFactory(
            n=n,
            min_degree=2,
            max_degree=3,
            term_count=5,
            trunc_degree=6,
            arithmetic=FLOAT,
            scale=1e-4,
        )
        F = Family(
            [
                VectorFieldFactory(
                    n=n, min_degree=1, max_degree=3, trunc_degree=6, arithmetic=FLOAT
                )
                for _ in range(2)
            ]
        )
        report = flow_remainder_check(U, F, 1.0, 0.5, 6)
        assert report.hypothesis_met
        assert [check.name for check in report.checks] == [
            "flow_remainder",
            "flow_quadratic_remainder",
        ]
        assert report.ok, report.checks

    @pytest.mark.parametrize("weight_ratio", [None, 1.5])
    def test_flow_linear_remainder(self, weight_ratio):
        weights = WeightTable.for_ratio(2, weight_ratio)
        for _ in range(25):
            U = _small_generator()
            report = flow_linear_remainder_check(U, 1.0, 0.5, 6, weights=weights)
            assert report.hypothesis_met
            assert report.ok, report.checks

    def test_commutator_linear(self):
        U = VectorFieldFactory(min_degree=2, max_degree=5, term_count=10)
        report = commutator_linear_check(U, 1.0, 0.25)
        assert report.ok, report.checks

    def test_gates(self):
        """
        GIVEN a generator whose norm is above δ/(4e)
        THEN nothing is asserted
        """
        U = _small_generator(seed_scale=10.0)
        F = Family.fundamental(2, 6, FLOAT)
        report = flow_remainder_check(U, F, 1.0, 0.5, 6)
        assert not report.hypothesis_met
        assert report.ok
        assert all(check.holds is None for check in report.checks)
        assert "is not below" in report.checks[0].note

        report = flow_linear_remainder_check(_small_generator(), 1.0, 1.5, 6)
        assert not report.hypothesis_met
        assert "need 0 < δ < r" in report.checks[0].note
