import pytest

from birkhoff.core.algebra.multi_index import ONE, MultiIndex, monomials
from birkhoff.core.errors import AlgebraError


@pytest.mark.parametrize(
    ("exponents", "expected"),
    [
        ({}, "-"),
        ({1: 2}, "1^2"),
        ({1: 2, -1: 1}, "-1^1,1^2"),
        ({2: 1, -2: 3, 1: 0}, "-2^3,2^1"),
    ],
)
def test_str(exponents, expected):
    assert str(MultiIndex(exponents)) == expected


def test_zero_exponents_are_dropped():
    assert MultiIndex({1: 0, -1: 2}) == MultiIndex({-1: 2})
    assert hash(MultiIndex({1: 0, -1: 2})) == hash(MultiIndex({-1: 2}))


@pytest.mark.parametrize("exponents", [{0: 1}, {1: -1}])
def test_invalid_exponents(exponents):
    with pytest.raises(AlgebraError):
        MultiIndex(exponents)


def test_degree_and_access():
    index = MultiIndex({1: 2, -2: 3})
    assert index.degree == 5
    assert index[1] == 2
    assert index[-2] == 3
    assert index[2] == 0
    assert index.max_variable() == 2
    assert ONE.degree == 0
    assert not ONE


def test_product_lower_raise():
    a = MultiIndex({1: 1})
    b = MultiIndex({1: 1, -1: 1})
    assert a * b == MultiIndex({1: 2, -1: 1})
    assert (a * b).lower(1) == b
    assert b.lower(-1) == a
    assert a.raise_(-1) == b
    assert a * ONE == a
    assert ONE * a == a


def test_derivatives():
    index = MultiIndex({1: 2, -1: 1})
    assert sorted(index.derivatives(), key=lambda item: item[0]) == [
        (-1, 1, MultiIndex({1: 2})),
        (1, 2, MultiIndex({1: 1, -1: 1})),
    ]


@pytest.mark.parametrize(
    ("exponents", "expected"),
    [
        ({}, True),
        ({1: 1, -1: 1}, True),
        ({1: 2, -1: 2, 2: 1, -2: 1}, True),
        ({1: 1}, False),
        ({1: 2, -1: 1}, False),
        ({1: 1, -2: 1}, False),
    ],
)
def test_is_action(exponents, expected):
    assert MultiIndex(exponents).is_action() is expected


def test_action():
    index = MultiIndex.action({1: 2, 2: 1})
    assert index == MultiIndex({1: 2, -1: 2, 2: 1, -2: 1})
    assert index.is_action()
    assert index.action_powers() == {1: 2, 2: 1}


def test_dense():
    assert MultiIndex({1: 2, -2: 1}).dense(2) == (1, 0, 2, 0)


def test_monomials_are_canonical():
    """
    GIVEN one pair of variables
    WHEN listing the monomials of degree 2
    THEN they come ordered by their dense exponent vector
    """
    assert list(monomials(1, 2)) == [
        MultiIndex({1: 2}),
        MultiIndex({-1: 1, 1: 1}),
        MultiIndex({-1: 2}),
    ]


@pytest.mark.parametrize(("n", "degree", "count"), [(1, 0, 1), (1, 3, 4), (2, 3, 20)])
def test_monomial_count(n, degree, count):
    result = list(monomials(n, degree))
    assert len(result) == count
    assert len(set(result)) == count
    assert all(index.degree == degree for index in result)
