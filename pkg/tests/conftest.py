import pytest
from hypothesis import HealthCheck, settings

import dirconv as dc

settings.register_profile(
    "default", max_examples=50, deadline=None,
    suppress_health_check=[HealthCheck.too_slow])
settings.load_profile("default")


@pytest.fixture(scope="session")
def od20():
    return dc.enumerate_semigroup(dc.OrdinaryDirichlet(1), size_bound=20)


@pytest.fixture(scope="session")
def od100():
    return dc.enumerate_semigroup(dc.OrdinaryDirichlet(1), size_bound=100)


@pytest.fixture(scope="session")
def lat8():
    return dc.enumerate_semigroup(dc.Lattice(1), size_bound=8)


@pytest.fixture(scope="session")
def lat2():
    return dc.enumerate_semigroup(dc.Lattice(2), size_bound=4)


@pytest.fixture(scope="session")
def gens23():
    return dc.enumerate_semigroup(dc.RationalGenerators((("2",), ("3",))),
                                  size_bound=12)
