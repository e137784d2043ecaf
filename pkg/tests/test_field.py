import numpy as np
import pytest

from peakon_lab import (
    Grid,
    GridError,
    PeriodicField,
    Refinement,
    derivative,
    evaluate,
    extrema,
    h1_norm_sq,
    inverse_transform,
    mean,
    mu_inner,
    mu_norm_sq,
    shift,
    transform,
)
from peakon_lab.field import interpolant, l2_norm_sq, truncate
from peakon_lab.peakon import peakon_field


@pytest.mark.parametrize("n", [8, 24, 100, 15])
def test_grid_rejects_bad_sizes(n):
    with pytest.raises(GridError) as exc:
        Grid(n)
    assert exc.value.n == n


def test_grid_rejects_non_integers():
    with pytest.raises(GridError):
        Grid(32.0)
    with pytest.raises(GridError):
        Grid(True)


def test_grid_nodes(grid):
    assert grid.nodes[0] == 0.0
    assert grid.nodes[1] == pytest.approx(1 / 64)
    assert grid.wavenumbers[-1] == 32
    assert grid.dealias_cutoff == 21


def test_field_validation(grid):
    with pytest.raises(GridError):
        PeriodicField(grid, np.zeros(32))
    with pytest.raises(GridError):
        PeriodicField(grid, np.full(64, np.nan))


def test_field_values_are_read_only(wave):
    with pytest.raises(ValueError):
        wave.values[0] = 1.0


def test_arithmetic_rejects_grid_mismatch(wave):
    other = PeriodicField.constant(Grid(32), 1.0)
    with pytest.raises(GridError):
        wave + other


def test_transform_constant(grid):
    s = transform(PeriodicField.constant(grid, 1.0))
    assert s.mode(0) == pytest.approx(1.0)
    others = np.delete(s.coeffs, grid.n // 2)
    assert np.max(np.abs(others)) < 1e-15


def test_transform_single_mode(grid):
    s = transform(PeriodicField.from_function(grid, lambda x: np.sin(2 * np.pi * x)))
    assert s.mode(1) == pytest.approx(-0.5j, abs=1e-15)
    assert s.mode(-1) == pytest.approx(0.5j, abs=1e-15)
    with pytest.raises(IndexError):
        s.mode(grid.n // 2)


def test_transform_peakon_coefficients():
    s = transform(peakon_field(1.0, 0.0, Grid(256)))
    assert s.mode(0).real == pytest.approx(12 / 13, abs=1e-14)
    for k in (1, 2, 7, -3):
        expected = 3 * (-1) ** k / (13 * np.pi ** 2 * k ** 2)
        assert s.mode(k).real == pytest.approx(expected, abs=1e-14)


def test_round_trip_and_parseval(band_field):
    s = transform(band_field)
    back = inverse_transform(s)
    assert np.max(np.abs(back.values - band_field.values)) < 1e-12
    assert l2_norm_sq(band_field) == pytest.approx(np.sum(np.abs(s.coeffs) ** 2), abs=1e-10)
    assert np.max(np.abs(s.coeffs[1:] - np.conj(s.coeffs[1:][::-1]))) < 1e-12


def test_derivative(grid):
    f = PeriodicField.from_function(grid, lambda x: np.sin(2 * np.pi * x))
    df = derivative(f)
    assert np.max(np.abs(df.values - 2 * np.pi * np.cos(2 * np.pi * grid.nodes))) < 1e-10
    g = PeriodicField.from_function(grid, lambda x: np.cos(4 * np.pi * x))
    dg = derivative(g)
    assert np.max(np.abs(dg.values + 4 * np.pi * np.sin(4 * np.pi * grid.nodes))) < 1e-10
    d2f = derivative(f, order=2)
    assert np.max(np.abs(d2f.values + 4 * np.pi ** 2 * f.values)) < 1e-9


def test_derivative_of_constant_and_mean(grid, band_field):
    assert np.max(np.abs(derivative(PeriodicField.constant(grid, 3.0)).values)) < 1e-14
    assert abs(mean(derivative(band_field))) < 1e-14


def test_derivative_zeroes_nyquist(grid):
    f = PeriodicField.from_function(grid, lambda x: np.cos(np.pi * grid.n * x))
    assert np.max(np.abs(derivative(f).values)) < 1e-12


def test_mean(wave):
    assert mean(wave) == pytest.approx(2.0)
    assert mean(peakon_field(1.0, 0.0, Grid(64))) == pytest.approx(12 / 13, abs=1e-12)


def test_mu_inner(grid, wave):
    one = PeriodicField.constant(grid, 1.0)
    assert mu_inner(one, one) == pytest.approx(1.0)
    assert mu_norm_sq(wave) == pytest.approx(4 + 2 * np.pi ** 2, rel=1e-12)
    assert mu_norm_sq(PeriodicField.constant(grid, 0.0)) == 0.0


def test_mu_inner_symmetric(wave, band_field):
    assert mu_inner(wave, band_field) == pytest.approx(mu_inner(band_field, wave), abs=1e-12)
    assert mu_norm_sq(band_field) > 0.0


def test_h1_norm(grid, wave):
    assert h1_norm_sq(PeriodicField.constant(grid, 1.0)) == pytest.approx(1.0)
    assert h1_norm_sq(wave) == pytest.approx(4.5 + 2 * np.pi ** 2, rel=1e-12)


def test_interpolant_reproduces_samples(band_field):
    at = interpolant(band_field)
    assert np.max(np.abs(at(band_field.grid.nodes) - band_field.values)) < 1e-12


def test_evaluate_between_nodes(grid):
    f = PeriodicField.from_function(grid, lambda x: np.sin(2 * np.pi * x))
    assert evaluate(f, 0.3) == pytest.approx(np.sin(0.6 * np.pi), abs=1e-12)
    assert isinstance(evaluate(f, 0.3), float)


def test_extrema_constant(grid):
    record = extrema(PeriodicField.constant(grid, 2.0))
    assert (record.max_val, record.min_val) == (2.0, 2.0)
    assert (record.argmax, record.argmin) == (0.0, 0.0)


def test_extrema_sine(wave):
    record = extrema(wave)
    assert record.max_val == pytest.approx(3.0, abs=1e-12)
    assert record.argmax == pytest.approx(0.25)
    assert record.min_val == pytest.approx(1.0, abs=1e-12)
    assert record.argmin == pytest.approx(0.75)


def test_extrema_between_nodes(grid):
    f = PeriodicField.from_function(grid, lambda x: np.cos(2 * np.pi * (x - 0.3)))
    quadratic = extrema(f, Refinement.QUADRATIC)
    assert quadratic.argmax == pytest.approx(0.3, abs=1e-3)
    assert quadratic.max_val == pytest.approx(1.0, abs=1e-4)
    spectral = extrema(f, Refinement.SPECTRAL)
    assert spectral.argmax == pytest.approx(0.3, abs=1e-6)
    assert spectral.max_val == pytest.approx(1.0, abs=1e-12)
    assert spectral.argmin == pytest.approx(0.8, abs=1e-6)
    assert spectral.min_val == pytest.approx(-1.0, abs=1e-12)


def test_extrema_peakon():
    record = extrema(peakon_field(1.0, 0.0, Grid(256)))
    assert record.argmax == pytest.approx(0.5, abs=1 / 256)
    assert record.argmin == pytest.approx(0.0, abs=1 / 256)
    assert record.max_val == pytest.approx(1.0, abs=1e-3)
    assert record.min_val == pytest.approx(23 / 26, abs=1e-3)


def test_shift(grid, band_field):
    f = PeriodicField.from_function(grid, lambda x: np.sin(2 * np.pi * x))
    shifted = shift(f, 0.25)
    assert np.max(np.abs(shifted.values + np.cos(2 * np.pi * grid.nodes))) < 1e-12
    assert np.max(np.abs(shift(band_field, 0.0).values - band_field.values)) < 1e-12
    assert np.max(np.abs(shift(band_field, 1.0).values - band_field.values)) < 1e-12
    back = shift(shift(band_field, 0.37), -0.37)
    assert np.max(np.abs(back.values - band_field.values)) < 1e-12


def test_truncate():
    coeffs = np.arange(9, dtype=complex)
    out = truncate(coeffs, 4)
    assert np.all(out[5:] == 0)
    assert np.all(out[:5] == coeffs[:5])
    assert coeffs[8] == 8
