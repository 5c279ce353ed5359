import factory.random
import pytest

from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.scalar_function import ScalarFunction
from birkhoff.core.algebra.vector_field import VectorField
from birkhoff.core.errors import AlgebraError
from birkhoff.verticals.kp.near_identity import (
    KP2_NOTE,
    NearIdentityMap,
    actions,
    canonical_near_identity,
    hamiltonian_kp_fields,
    kp_fields,
    kp_hypothesis_check,
)
from birkhoff.verticals.normal_form.birkhoff import birkhoff_check
from birkhoff.verticals.normal_form.newton import RunOptions, run
from tests.factories import HamiltonianFactory, TriangularHamiltonianFactory


@pytest.fixture()
def psi() -> NearIdentityMap:
    return canonical_near_identity(TriangularHamiltonianFactory(), 8)


def test_canonical_map_satisfies_the_hypotheses(psi):
    assert not psi.G.is_zero()
    assert psi.G.min_degree == 2
    report = kp_hypothesis_check(psi)
    assert report.ok
    assert report.degree == 9
    assert report.pairs == [(1, 2, None)]
    assert report.kp2 == KP2_NOTE


def test_kp_fields_are_hamiltonian(psi):
    """
    GIVEN Ψ = 1 + G
    THEN the fields assembled from G are the fields i X_{I_j} of the actions
    AND their linear part is E
    """
    family = kp_fields(psi)
    assert family == hamiltonian_kp_fields(psi)
    assert family.jet(1) == Family.fundamental(2, 1)


def test_actions():
    """Ψ_1 = z_1 + z_2^2 gives I_1 = z_1 z_{-1} + z_2^2 z_{-1}"""
    psi = NearIdentityMap(VectorField.monomial({2: 2}, 1, 2, 6))
    I1, I2 = actions(psi)
    assert I1 == ScalarFunction.from_exponents(
        [({1: 1, -1: 1}, 1), ({2: 2, -1: 1}, 1)], 2, 7
    )
    assert I2 == ScalarFunction.from_exponents([({2: 1, -2: 1}, 1)], 2, 7)


def test_non_commuting_actions():
    psi = NearIdentityMap(VectorField.monomial({2: 2}, 1, 2, 6))
    report = kp_hypothesis_check(psi)
    assert not report.ok
    assert report.pairs == [(1, 2, 3)]
    assert report.first_failure == (1, 2, 3)


def test_normalization_of_kp_fields(psi):
    """
    GIVEN the family i X_{I_j} of a canonical near-identity map
    WHEN normalizing it
    THEN every action becomes a function of the actions in the new coordinates
    """
    family = kp_fields(psi)
    result = run(family, RunOptions(steps=2))
    assert result.nf.commutes()
    for action in actions(psi):
        report = birkhoff_check(action, result.generators, family=family)
        assert report.degree == 5
        assert report.ok, report.violations


@pytest.mark.parametrize("seed", range(3))
def test_general_canonical_map(seed):
    """
    GIVEN Ψ the time-1 flow of a random h of degrees 3 and 4
    THEN the actions commute
    AND both constructions of the fields agree
    AND normalizing the fields makes every action a function of the actions
    """
    factory.random.reseed_random(seed)
    psi = canonical_near_identity(HamiltonianFactory(), 8)
    assert kp_hypothesis_check(psi).ok

    family = kp_fields(psi)
    assert family == hamiltonian_kp_fields(psi)

    result = run(family, RunOptions(steps=2, audit_inequalities=False))
    for action in actions(psi):
        report = birkhoff_check(action, result.generators, family=family)
        assert report.ok, report.violations


def test_map_file_roundtrip(psi):
    assert NearIdentityMap.from_family(psi.to_family()) == psi


def test_invalid_maps():
    with pytest.raises(AlgebraError, match="G must vanish to second order"):
        NearIdentityMap(VectorField.monomial({1: 1}, 1, 1, 4))
    with pytest.raises(AlgebraError, match="holds one member, got 2"):
        NearIdentityMap.from_family(Family.fundamental(2, 4))
    h = ScalarFunction.from_exponents([({1: 1, -1: 1}, 1)], 1, 4)
    with pytest.raises(AlgebraError, match="h must have min degree ≥ 3"):
        canonical_near_identity(h, 4)
