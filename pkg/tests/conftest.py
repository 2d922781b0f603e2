import numpy as np
import pytest

from qlearnrate import (
    DriveProtocol,
    HarmonicSystem,
    PoschlTellerSystem,
    build_ho,
    build_pt,
)


@pytest.fixture(scope="session")
def ho18():
    return HarmonicSystem(omega0=1.0, n_max=18)


@pytest.fixture(scope="session")
def ho18_parts(ho18):
    return build_ho(ho18)


@pytest.fixture(scope="session")
def pt20_parts():
    # The production grid; built once per session (a few hundred ms).
    return build_pt(PoschlTellerSystem(nu=20, eta=1.0, half_width=15.0, n_grid=3000))


@pytest.fixture
def rng():
    return np.random.default_rng(2024)


def exp_protocol(dl=0.05, tau=2.0):
    return DriveProtocol("exponential", dl, tau)


def lin_protocol(dl=0.05, tau=2.0):
    return DriveProtocol("linear", dl, tau)
