import numpy as np
import pytest

from birkhoff.core.algebra.vector_field import VectorField, evaluate
from birkhoff.core.errors import AlgebraError
from birkhoff.core.flow import (
    lie_conjugate_flow_error,
    pullback,
    random_points,
    time_one_flow,
)
from tests.factories import VectorFieldFactory


def test_flow_of_zero_is_identity():
    z = random_points(2, 0.5, 1)[0]
    point, derivative = time_one_flow(VectorField.zero(2, 4), z)
    np.testing.assert_allclose(point, z)
    np.testing.assert_allclose(derivative, np.eye(4))


def test_flow_of_a_nilpotent_field():
    """
    GIVEN U = z_1^2 e_{-1}, whose flow is z_{-1} -> z_{-1} + t z_1^2
    THEN the pull-back of E^1 is E^1 - 3 z_1^2 e_{-1}
    """
    U = VectorField.monomial({1: 2}, -1, 1, 4)
    z = np.array([0.2 + 0.1j, 0.3 - 0.2j])  # (z_{-1}, z_1)
    point, _ = time_one_flow(U, z)
    np.testing.assert_allclose(point, [z[0] + z[1] ** 2, z[1]], atol=1e-12)

    E = VectorField.fundamental(1, 1, 4)
    expected = E - VectorField.monomial({1: 2}, -1, 1, 4, 3)
    np.testing.assert_allclose(pullback(E, U, z), evaluate(expected, z), atol=1e-12)


def test_random_points():
    points = random_points(2, 0.25, 5, seed=4)
    assert points.shape == (5, 4)
    np.testing.assert_allclose(np.linalg.norm(points, axis=1), 0.25)
    np.testing.assert_array_equal(points, random_points(2, 0.25, 5, seed=4))


def test_invalid_point():
    with pytest.raises(AlgebraError):
        time_one_flow(VectorField.zero(2, 4), np.zeros(3))


@pytest.mark.parametrize("degree", [3, 4])
def test_lie_series_matches_the_flow(degree):
    """
    GIVEN a field X and a generator U
    WHEN comparing the Lie series of order `degree` with the integrated pull-back
    THEN the error decreases like r^{degree + 1}
    """
    X = VectorFieldFactory(n=1, min_degree=1, max_degree=3, term_count=4)
    U = VectorFieldFactory(n=1, min_degree=2, max_degree=3, term_count=3)
    coarse = lie_conjugate_flow_error(X, U, degree, 0.01, samples=4)
    fine = lie_conjugate_flow_error(X, U, degree, 0.005, samples=4)
    assert coarse < 1e-4
    # 2^{degree + 1} in theory
    assert fine < coarse / 2**degree
