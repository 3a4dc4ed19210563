import numpy as np
import pytest

from mehler import (
    calibrate_weight,
    default_bergman_grid,
    gauss_hermite_rule,
)


@pytest.fixture(scope="session")
def gh64():
    return gauss_hermite_rule(64)


@pytest.fixture(scope="session")
def gh128():
    return gauss_hermite_rule(128)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240811)


@pytest.fixture(scope="session")
def bergman_grid_025():
    return default_bergman_grid(0.25, resolution=128)


@pytest.fixture(scope="session")
def calibration_025(bergman_grid_025):
    return calibrate_weight(0.25, 1, [(k,) for k in range(5)], bergman_grid_025)
