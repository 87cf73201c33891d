"""Shared fixtures: the expensive groups are built once per session"""

import pytest
from hypothesis import HealthCheck, settings as hypothesis_settings

from app.services import constructions
from app.services.groups import Permutation, subgroup_generated

hypothesis_settings.register_profile(
    "pgx",
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow],
)
hypothesis_settings.load_profile("pgx")


@pytest.fixture(scope="session")
def pgl2_9():
    return constructions.pgl2(9)


@pytest.fixture(scope="session")
def psl2_9():
    return constructions.psl2(9)


@pytest.fixture(scope="session")
def g1():
    return constructions.paper_g1()


@pytest.fixture(scope="session")
def g2():
    return constructions.paper_g2()


@pytest.fixture(scope="session")
def g3():
    return constructions.paper_g3()


@pytest.fixture(scope="session")
def a5():
    return constructions.alternating(5)


@pytest.fixture(scope="session")
def s5():
    return constructions.symmetric(5)


@pytest.fixture(scope="session")
def klein_by_three(a5):
    """<(1 2)(3 4), (1 3)(2 4), (1 2 3)> inside A5"""
    gens = [
        Permutation.from_cycles(5, [(1, 2), (3, 4)]),
        Permutation.from_cycles(5, [(1, 3), (2, 4)]),
        Permutation.from_cycles(5, [(1, 2, 3)]),
    ]
    return subgroup_generated(a5, gens)
