import numpy as np
import pytest

from peakon_lab import Grid, PeriodicField
from peakon_lab.lab import positive_band_field, random_band_field, trial_rng


@pytest.fixture
def grid():
    return Grid(64)


@pytest.fixture
def fine_grid():
    return Grid(512)


@pytest.fixture
def wave(grid):
    """u = 2 + sin(2 pi x)"""
    return PeriodicField.from_function(grid, lambda x: 2.0 + np.sin(2.0 * np.pi * x))


@pytest.fixture
def rng():
    return trial_rng(1234, 0)


@pytest.fixture
def band_field(grid, rng):
    return random_band_field(grid, rng, kmax=6, mean=0.5)


@pytest.fixture
def positive_field(grid):
    return positive_band_field(grid, trial_rng(99, 3))
