from dataclasses import dataclass

import pytest

from birkhoff.core.algebra.family import Family
from birkhoff.core.algebra.lie import lie_conjugate_family
from birkhoff.core.algebra.vector_field import VectorField
from birkhoff.verticals.normal_form.normal_form_family import NormalFormFamily
from tests.factories import (
    NormalFormFactory,
    TriangularGeneratorFactory,
    VectorFieldFactory,
)


@dataclass
class ConjugatedInstance:
    """X = pull-back of the normal form `nf` by the time-1 flow of W"""

    nf: NormalFormFamily
    W: VectorField
    family: Family


def conjugated_instance(trunc_degree: int = 16) -> ConjugatedInstance:
    nf = NormalFormFactory(trunc_degree=trunc_degree, max_degree=3)
    W = TriangularGeneratorFactory(trunc_degree=trunc_degree)
    family = lie_conjugate_family(nf.fields(), W, trunc_degree)
    return ConjugatedInstance(nf, W, family)


def general_instance(trunc_degree: int = 8) -> ConjugatedInstance:
    """
    W has a few nonresonant terms of degrees 2 and 3 in all the variables, so its
    flow is not polynomial and X is dense up to the truncation degree
    """
    nf = NormalFormFactory(trunc_degree=trunc_degree, max_degree=5)
    W = VectorFieldFactory(
        trunc_degree=trunc_degree,
        max_degree=3,
        term_count=3,
        nonresonant=True,
    )
    family = lie_conjugate_family(nf.fields(), W, trunc_degree)
    return ConjugatedInstance(nf, W, family)


@pytest.fixture()
def instance() -> ConjugatedInstance:
    return conjugated_instance()
