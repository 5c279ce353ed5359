from fractions import Fraction

import numpy as np
import pytest

from birkhoff.core.algebra.coefficients import FLOAT, RATIONAL, GaussianRational
from birkhoff.core.algebra.multi_index import MultiIndex
from birkhoff.core.algebra.scalar_function import ScalarFunction
from birkhoff.core.algebra.vector_field import (
    VectorField,
    all_components,
    fundamental_family,
    jacobian,
)
from birkhoff.core.errors import AlgebraError


def _field(terms, n=1, trunc_degree=4):
    return VectorField(
        {(MultiIndex(exponents), j): value for exponents, j, value in terms},
        n,
        trunc_degree,
    )


def test_zero_and_high_degree_terms_are_dropped():
    X = _field([({1: 2}, 1, 0), ({1: 5}, 1, 3), ({1: 1}, -1, 2)])
    assert len(X) == 1
    assert X.coefficient(MultiIndex({1: 1}), -1) == 2
    assert X.coefficient(MultiIndex({1: 2}), 1) == 0


def test_degrees():
    X = _field([({1: 2}, 1, 1), ({1: 3, -1: 1}, -1, 2)])
    assert X.min_degree == 2
    assert X.max_degree == 4
    assert list(X.degrees()) == [2, 4]

    zero = VectorField.zero(1, 4)
    assert zero.is_zero()
    assert zero.min_degree == 5
    assert zero.max_degree == -1


def test_equality_ignores_truncation():
    X = _field([({1: 2}, 1, 1)], trunc_degree=4)
    assert X == X.with_trunc(8)
    assert X != _field([({1: 2}, 1, 1)], n=2)


@pytest.mark.parametrize(
    "key",
    [
        (MultiIndex({2: 1}), 1),
        (MultiIndex({1: 1}), 2),
        (MultiIndex({1: 1}), 0),
        "nope",
    ],
)
def test_invalid_keys(key):
    with pytest.raises(AlgebraError):
        VectorField({key: 1}, 1, 4)


def test_jet_higher_homogeneous():
    X = _field([({1: 1}, 1, 1), ({1: 2}, 1, 2), ({1: 3}, -1, 3)])
    assert X.jet(2) == _field([({1: 1}, 1, 1), ({1: 2}, 1, 2)])
    assert X.jet(2).trunc_degree == 2
    assert X.higher(2) == _field([({1: 3}, -1, 3)])
    assert X.homogeneous(2) == _field([({1: 2}, 1, 2)])
    assert X.jet(2).with_trunc(4) + X.higher(2) == X
    # the sum is truncated at the smaller degree
    assert X.jet(2) + X.higher(2) == X.jet(2)
    with pytest.raises(AlgebraError):
        X.jet(-1)


def test_sum_takes_the_smallest_truncation():
    X = _field([({1: 2}, 1, 1)], trunc_degree=4)
    Y = _field([({1: 2}, 1, -1), ({1: 3}, 1, 1)], trunc_degree=6)
    total = X + Y
    assert total == _field([({1: 3}, 1, 1)])
    assert total.trunc_degree == 4
    assert (X - X).is_zero()


def test_mixed_arithmetic_is_rejected():
    X = _field([({1: 2}, 1, 1)])
    with pytest.raises(AlgebraError):
        X + X.to_float(FLOAT)
    with pytest.raises(AlgebraError):
        X + _field([({1: 2}, 1, 1)], n=2)


def test_fundamental():
    E = VectorField.fundamental(2, 2, 3)
    assert E.coefficient(MultiIndex({2: 1}), 2) == 1
    assert E.coefficient(MultiIndex({-2: 1}), -2) == -1
    assert len(E) == 2
    assert fundamental_family(2, 3) == [VectorField.fundamental(1, 2, 3), E]
    with pytest.raises(AlgebraError):
        VectorField.fundamental(-1, 2, 3)
    with pytest.raises(AlgebraError):
        VectorField.fundamental(3, 2, 3)


def test_components():
    a = ScalarFunction.from_exponents([({1: 1}, 2), ({-1: 2}, 1)], 1, 4)
    X = VectorField.from_components({1: a}, 1, 4)
    assert X.component(1) == a
    assert X.component(-1).is_zero()
    assert all_components(2) == (-2, -1, 1, 2)


def test_times_scalar():
    """
    GIVEN a field of min degree 1 and a scalar of min degree 2
    WHEN multiplying them
    THEN the product is exact up to min(t_a + m_X, t_X + m_a)
    """
    E = VectorField.fundamental(1, 1, 5)
    a = ScalarFunction({MultiIndex.action({1: 1}): 3}, 1, 6)
    aE = E.times_scalar(a)
    assert aE.trunc_degree == 7
    assert aE == _field(
        [({1: 2, -1: 1}, 1, 3), ({1: 1, -1: 2}, -1, -3)], trunc_degree=7
    )


def test_evaluate_and_jacobian():
    X = _field([({1: 2}, 1, 1), ({1: 1, -1: 1}, -1, GaussianRational(0, 2))])
    z = np.array([0.5, 2.0])  # (z_{-1}, z_1)
    np.testing.assert_allclose(X(z), [2j * 0.5 * 2.0, 4.0])
    np.testing.assert_allclose(jacobian(X, z), [[2j * 2.0, 2j * 0.5], [0, 4.0]])
    with pytest.raises(AlgebraError):
        X(np.zeros(3))


def test_float_conversion():
    X = _field([({1: 2}, 1, GaussianRational(1, 2))])
    Y = X.to_float(FLOAT)
    assert Y.arithmetic is FLOAT
    assert Y.coefficient(MultiIndex({1: 2}), 1) == 1 + 2j
    assert X.arithmetic is RATIONAL


def test_repr_is_canonical():
    X = _field([({1: 3}, -1, 1), ({1: 2}, 1, 2)])
    assert repr(X) == "VectorField(2*z[1^2]e[1] + 1*z[1^3]e[-1]; n=1, trunc=4)"


def test_close_to_is_equality_in_rational_mode():
    X = _field([({1: 2}, 1, 1)])
    assert X.close_to(X.with_trunc(8))
    assert not X.close_to(X + _field([({1: 3}, 1, Fraction(1, 10**12))]))
    assert X.is_negligible() is False
    assert VectorField.zero(1, 4).is_negligible()


def test_close_to_in_float_mode():
    """
    GIVEN float fields differing by roundoff on a large coefficient
    THEN they are close, while a difference on a small coefficient is not ignored
    """
    X = _field([({1: 2}, 1, 1e6), ({1: 3}, -1, 1)]).to_float(FLOAT)
    roundoff = _field([({1: 2}, 1, 1e-5)]).to_float(FLOAT)
    assert X.close_to(X + roundoff)
    assert (X - (X + roundoff)).is_negligible(X.max_modulus())
    assert not (X - (X + roundoff)).is_negligible()

    offset = _field([({1: 3}, -1, 1e-3)]).to_float(FLOAT)
    assert not X.close_to(X + offset)
    assert X.max_modulus() == 1e6


def test_close_to_rejects_mixed_arithmetic():
    X = _field([({1: 2}, 1, 1)])
    with pytest.raises(AlgebraError):
        X.close_to(X.to_float(FLOAT))
