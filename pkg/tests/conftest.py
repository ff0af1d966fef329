"""
Shared fixtures: isolated config directory, seeded random fields, small grids.
"""

import numpy as np
import pytest

import config.app_config as app_config
import app_logging.logging_utils as logging_utils
from grid import Grid2D, GridFunction
from operators import EllipticOperator
from spectral import analytic_eigenpairs


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Point the config file at a fresh directory and reset run-log state."""
    config_dir = tmp_path / "fracpow_home"
    monkeypatch.setattr(app_config, "CONFIG_DIR", config_dir)
    monkeypatch.setattr(app_config, "CONFIG_FILE", config_dir / "config.json")
    monkeypatch.delenv(app_config.THREADS_ENV_VAR, raising=False)
    monkeypatch.setattr(logging_utils, "_active_level", None)
    logging_utils.clear_messages()
    return config_dir


@pytest.fixture
def rng():
    return np.random.default_rng(20240517)


@pytest.fixture
def grid8():
    return Grid2D.unit_square(8)


@pytest.fixture
def basis8(grid8):
    return analytic_eigenpairs(grid8)


@pytest.fixture
def operator8(grid8):
    return EllipticOperator(grid8)


@pytest.fixture
def single_mode_grid():
    """N1 = N2 = 2: one interior node, mu_1 = 16."""
    return Grid2D.unit_square(2)


@pytest.fixture
def random_field(rng):
    """Factory of standard-normal fields on a grid."""
    def make(grid) -> GridFunction:
        return GridFunction(grid, rng.standard_normal(grid.K))
    return make
