import math

import numpy as np
import pytest

from peakon_lab import ConfigurationError, Grid, PerturbationKind
from peakon_lab.field import h1_norm_sq, mean
from peakon_lab.lab import (
    build_initial_field,
    positive_band_field,
    random_band_field,
    trial_rng,
)


def test_trial_rng_is_counter_based():
    first = trial_rng(42, 3).standard_normal(5)
    again = trial_rng(42, 3).standard_normal(5)
    other = trial_rng(42, 4).standard_normal(5)
    assert np.array_equal(first, again)
    assert not np.array_equal(first, other)
    assert not np.array_equal(first, trial_rng(43, 3).standard_normal(5))


def test_trial_rng_rejects_negative_seed():
    with pytest.raises(ConfigurationError):
        trial_rng(-1, 0)


def test_random_band_field(grid):
    f = random_band_field(grid, trial_rng(0, 0), kmax=5, mean=0.7)
    coeffs = f.rfft()
    assert mean(f) == pytest.approx(0.7)
    assert np.max(np.abs(coeffs[6:])) < 1e-14
    assert np.abs(coeffs[1]) > 0.0
    with pytest.raises(ConfigurationError):
        random_band_field(grid, trial_rng(0, 0), kmax=grid.n // 2)


def test_positive_band_field(grid):
    for i in range(20):
        u = positive_band_field(grid, trial_rng(1, i), base=2.0, amplitude=3.0)
        assert np.min(u.values) >= 0.5 - 1e-12


@pytest.mark.parametrize("kind", [PerturbationKind.SINGLE_MODE, PerturbationKind.RANDOM_BAND])
def test_perturbation_has_exact_size(kind):
    grid = Grid(128)
    data = build_initial_field(kind, 3e-3, 1.0, grid, trial_rng(0, 0))
    assert math.sqrt(h1_norm_sq(data.field - data.base)) == pytest.approx(3e-3, rel=1e-8)
    assert data.speed == 1.0
    assert np.max(np.abs(data.base.rfft()[grid.dealias_cutoff + 1:])) < 1e-15


def test_amplitude_scale_is_another_orbit_member():
    grid = Grid(128)
    data = build_initial_field(PerturbationKind.AMPLITUDE_SCALE, 1e-2, 1.0, grid, trial_rng(0, 0))
    assert math.sqrt(h1_norm_sq(data.field - data.base)) == pytest.approx(1e-2, rel=1e-8)
    scale = data.speed - 1.0
    assert np.allclose(data.field.values, (1.0 + scale) * data.base.values)


def test_zero_delta_returns_the_peakon():
    grid = Grid(64)
    data = build_initial_field(PerturbationKind.RANDOM_BAND, 0.0, 1.5, grid, trial_rng(0, 0))
    assert data.field is data.base
    assert data.speed == 1.5


def test_build_initial_field_errors():
    grid = Grid(64)
    with pytest.raises(ConfigurationError):
        build_initial_field(PerturbationKind.SINGLE_MODE, -1e-3, 1.0, grid, trial_rng(0, 0))
    with pytest.raises(ConfigurationError):
        build_initial_field(
            PerturbationKind.SINGLE_MODE, 1e-3, 1.0, grid, trial_rng(0, 0), mode=30
        )


def test_same_seed_same_field():
    grid = Grid(64)
    a = build_initial_field(PerturbationKind.RANDOM_BAND, 1e-2, 1.0, grid, trial_rng(9, 2))
    b = build_initial_field(PerturbationKind.RANDOM_BAND, 1e-2, 1.0, grid, trial_rng(9, 2))
    assert np.array_equal(a.field.values, b.field.values)
