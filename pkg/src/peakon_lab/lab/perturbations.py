"""Seeded random fields and the perturbed initial data of the stability sweep."""

import logging
import math
from typing import NamedTuple

import numpy as np

from ..constants import PerturbationKind
from ..exceptions import ConfigurationError
from ..field import Grid, PeriodicField, h1_norm_sq, truncate
from ..peakon import peakon_coefficients

logger = logging.getLogger(__name__)

DEFAULT_BAND = 8


def trial_rng(seed: int, index: int) -> np.random.Generator:
    """
    Generator for trial `index` of a run seeded with `seed`.

    Philox is counter based: the stream depends on (seed, index) only, never
    on which worker draws it or in what order.
    """
    if seed < 0 or index < 0:
        raise ConfigurationError(
            f"Seed and index must be non-negative, got {seed}, {index}", key="seed"
        )
    return np.random.Generator(np.random.Philox(key=(int(seed) << 64) + int(index)))


def random_band_field(
    grid: Grid,
    rng: np.random.Generator,
    kmax: int = DEFAULT_BAND,
    amplitude: float = 1.0,
    mean: float = 0.0,
) -> PeriodicField:
    """
    mean + a random Fourier sum over modes 1..kmax with coefficients of size
    amplitude / k.
    """
    if not 1 <= kmax < grid.n // 2:
        raise ConfigurationError(
            f"Band limit {kmax} outside [1, {grid.n // 2})", key="kmax"
        )
    coeffs = np.zeros(grid.n // 2 + 1, dtype=complex)
    k = np.arange(1, kmax + 1)
    draws = rng.standard_normal(kmax) + 1j * rng.standard_normal(kmax)
    coeffs[1:kmax + 1] = amplitude * draws / (2.0 * k)
    coeffs[0] = mean
    return PeriodicField.from_rfft(grid, coeffs)


def positive_band_field(
    grid: Grid,
    rng: np.random.Generator,
    base: float = 2.0,
    amplitude: float = 0.3,
    kmax: int = DEFAULT_BAND,
) -> PeriodicField:
    """A random band-limited field around `base` with min >= base / 4."""
    wiggle = random_band_field(grid, rng, kmax, amplitude)
    floor = 0.75 * base
    depth = -float(np.min(wiggle.values))
    if depth > floor:
        wiggle = wiggle * (floor / depth)
    return wiggle + base


class InitialData(NamedTuple):
    """Perturbed field and the peakon it was built around."""
    field: PeriodicField
    base: PeriodicField
    speed: float


def _base_peakon(grid: Grid, c: float, dealias: bool) -> PeriodicField:
    coeffs = peakon_coefficients(grid, c)
    if dealias:
        coeffs = truncate(coeffs, grid.dealias_cutoff)
    return PeriodicField.from_rfft(grid, coeffs)


def build_initial_field(
    kind: PerturbationKind,
    delta: float,
    c: float,
    grid: Grid,
    rng: np.random.Generator,
    dealias: bool = True,
    mode: int = 1,
) -> InitialData:
    """
    c phi plus a perturbation whose H1 norm is exactly delta.

    With dealias the base peakon is first projected onto the 2/3 band, so the
    solver starts from exactly this field. AMPLITUDE_SCALE returns (1 + d) c phi,
    another orbit member, whose speed is reported in the result.
    """
    if delta < 0.0:
        raise ConfigurationError(f"delta must be non-negative, got {delta}", key="deltas")
    base = _base_peakon(grid, c, dealias)
    if delta == 0.0:
        return InitialData(base, base, c)

    if kind is PerturbationKind.AMPLITUDE_SCALE:
        scale = delta / math.sqrt(h1_norm_sq(base))
        return InitialData(base * (1.0 + scale), base, c * (1.0 + scale))

    if kind is PerturbationKind.SINGLE_MODE:
        if not 1 <= mode <= grid.dealias_cutoff:
            raise ConfigurationError(f"Perturbation mode {mode} is not resolved", key="mode")
        shape = PeriodicField.from_function(grid, lambda x: np.sin(2.0 * np.pi * mode * x))
    else:
        shape = random_band_field(grid, rng, min(DEFAULT_BAND, grid.dealias_cutoff))

    shape = shape * (delta / math.sqrt(h1_norm_sq(shape)))
    logger.debug(f"Built {kind.value} perturbation of H1 size {delta:g}")
    return InitialData(base + shape, base, c)
