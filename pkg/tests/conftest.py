import numpy as np
import pytest

from bergsmooth.geometry import make_domain, quadrature_grid


@pytest.fixture(scope="session")
def disk():
    return make_domain("disk")


@pytest.fixture(scope="session")
def annulus():
    return make_domain("annulus", rho=0.5)


@pytest.fixture(scope="session")
def ball2():
    return make_domain("ball2")


@pytest.fixture(scope="session")
def disk_grid(disk):
    return quadrature_grid(disk, 32, 64)


@pytest.fixture(scope="session")
def annulus_grid(annulus):
    return quadrature_grid(annulus, 32, 64)


@pytest.fixture(scope="session")
def ball2_grid(ball2):
    return quadrature_grid(ball2, 12, 24)


@pytest.fixture()
def rng():
    return np.random.default_rng(20260808)
