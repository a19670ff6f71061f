import numpy as np
import pytest

from trafficadp.basis import GridBasis
from trafficadp.config import GridSpec, ModelParams, RunConfig


@pytest.fixture(scope="session")
def params():
    return ModelParams()


@pytest.fixture(scope="session")
def default_run():
    return RunConfig(T=60.0)


@pytest.fixture(scope="session")
def grid(params, default_run):
    return GridSpec.build(params, default_run)


@pytest.fixture(scope="session")
def gb(grid, params):
    return GridBasis(grid, params)


@pytest.fixture(scope="session")
def small_grid(params):
    return GridSpec.build(params, RunConfig(nx=33, nv=33))


@pytest.fixture(scope="session")
def small_gb(small_grid, params):
    return GridBasis(small_grid, params)
