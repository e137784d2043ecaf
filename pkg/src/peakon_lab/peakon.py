"""
Periodic peakons u(x, t) = c phi(x - ct) with phi(x) = (12x^2 + 23)/26 on
[-1/2, 1/2), extended periodically. The crest sits at x = 1/2 where phi_x
jumps from 6/13 to -6/13.
"""

import logging
from dataclasses import dataclass
from typing import NamedTuple, Tuple, Union

import numpy as np
from scipy.special import polygamma

from .constants import (
    PEAKON_CUBIC,
    PEAKON_ENERGY,
    PEAKON_MEAN,
    PEAKON_MIN,
    TWELVE_THIRTEENTHS,
    ConservedTriple,
)
from .field import Grid, PeriodicField, evaluate, h1_norm_sq, mean, mu_norm_sq

logger = logging.getLogger(__name__)

Scalar = Union[float, np.ndarray]


class Slope(NamedTuple):
    """phi_x at some points; at_corner marks where the right-hand limit was used."""
    value: Scalar
    at_corner: Union[bool, np.ndarray]


def _scalar_or_array(values: np.ndarray) -> Scalar:
    return float(values) if np.ndim(values) == 0 else values


def wrap(x: Scalar) -> Scalar:
    """Representative of x in [-1/2, 1/2)."""
    return _scalar_or_array(np.mod(np.asarray(x, dtype=float) + 0.5, 1.0) - 0.5)


def phi(x: Scalar) -> Scalar:
    w = np.asarray(wrap(x))
    return _scalar_or_array((12.0 * w ** 2 + 23.0) / 26.0)


def phi_x(x: Scalar) -> Slope:
    """
    Derivative 12 wrap(x) / 13.

    At the crest the right-hand limit -6/13 is returned and flagged.
    """
    w = np.asarray(wrap(x))
    corner = w == -0.5
    if np.any(corner):
        logger.debug("phi_x evaluated at the crest; returning the right-hand limit")
    value = 12.0 * w / 13.0
    if np.ndim(value) == 0:
        return Slope(float(value), bool(corner))
    return Slope(value, corner)


def peakon_ode_residual(x: Scalar) -> Scalar:
    """phi_x^2 - (144/169)(13/6)(phi - 23/26); zero off the crest."""
    slope = np.asarray(phi_x(x).value)
    gap = np.asarray(phi(x)) - float(PEAKON_MIN)
    return _scalar_or_array(slope ** 2 - (144.0 / 169.0) * (13.0 / 6.0) * gap)


def peakon_coefficients(grid: Grid, c: float = 1.0, phase: float = 0.0) -> np.ndarray:
    """
    One-sided coefficients of c phi(x - phase) on the grid band.

    c_0 = 12c/13 and c_k = 3c(-1)^k / (13 pi^2 k^2); the Nyquist mode is zero.
    """
    k = grid.wavenumbers
    coeffs = np.zeros(k.size, dtype=complex)
    coeffs[0] = TWELVE_THIRTEENTHS
    kk = k[1:-1]
    signs = np.where(kk % 2 == 0, 1.0, -1.0)
    coeffs[1:-1] = 3.0 * signs / (13.0 * np.pi ** 2 * kk ** 2)
    return c * coeffs * np.exp(-2j * np.pi * k * phase)


def peakon_field(c: float, xi0: float, grid: Grid) -> PeriodicField:
    """c phi(x - xi0) as the L2 projection onto the grid band."""
    return PeriodicField.from_rfft(grid, peakon_coefficients(grid, c, xi0))


def spectral_tail(n: int) -> Tuple[float, float]:
    """
    mu-norm^2 and H1-norm^2 of the peakon modes |k| >= n/2 that a grid of
    size n cannot carry.
    """
    cutoff = n // 2
    mu_tail = 72.0 / (169.0 * np.pi ** 2) * float(polygamma(1, cutoff))
    l2_tail = 18.0 / (169.0 * np.pi ** 4) * float(polygamma(3, cutoff)) / 6.0
    return mu_tail, mu_tail + l2_tail


def exact_invariants(c: float = 1.0) -> ConservedTriple:
    """(H0, H1, H2) of c phi from the closed forms."""
    return ConservedTriple(
        float(c * PEAKON_MEAN),
        float(c ** 2 * PEAKON_ENERGY),
        float(c ** 3 * PEAKON_CUBIC),
    )


def sampled_invariants(n: int, c: float = 1.0) -> ConservedTriple:
    """
    Trapezoid quadrature of (H0, H1, H2) from pointwise samples of the
    closed form and its exact derivative.

    The crest is a node; both one-sided slopes square to the same value, so
    the rule converges at second order instead of carrying the O(1/n)
    spectral tail of a projected field.
    """
    nodes = Grid(n).nodes
    u = c * np.asarray(phi(nodes))
    ux = c * np.asarray(phi_x(nodes).value)
    h0 = float(np.mean(u))
    h1 = 0.5 * (h0 ** 2 + float(np.mean(ux ** 2)))
    h2 = h0 * float(np.mean(u ** 2)) + 0.5 * float(np.mean(u * ux ** 2))
    return ConservedTriple(h0, h1, h2)


def phi_xx_pairing(test: PeriodicField) -> float:
    """int phi psi_xx for phi_xx = 12/13 - (12/13) delta(x - 1/2)."""
    return TWELVE_THIRTEENTHS * (mean(test) - evaluate(test, 0.5))


def mu_distance_sq(u: PeriodicField, c: float = 1.0, xi: float = 0.0) -> float:
    """
    ||u - c phi(. - xi)||_mu^2 against the exact peakon.

    The in-band part is computed on the grid; the modes the grid drops add
    c^2 times the closed-form tail.
    """
    diff = u - peakon_field(c, xi, u.grid)
    mu_tail, _ = spectral_tail(u.grid.n)
    return mu_norm_sq(diff) + c ** 2 * mu_tail


def h1_distance_sq(u: PeriodicField, c: float = 1.0, xi: float = 0.0) -> float:
    """||u - c phi(. - xi)||_{H1}^2 against the projected (in-band) peakon."""
    return h1_norm_sq(u - peakon_field(c, xi, u.grid))


@dataclass(frozen=True)
class Peakon:
    """
    Travelling peakon c phi(x - phase); its crest is at phase + 1/2.

    Args:
        speed: Wave speed c, also the height of the crest
        phase: Translate in [0, 1)
    """

    speed: float
    phase: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "phase", float(self.phase) % 1.0)

    def __call__(self, x: Scalar) -> Scalar:
        return _scalar_or_array(self.speed * np.asarray(phi(np.asarray(x) - self.phase)))

    @property
    def crest(self) -> float:
        return (self.phase + 0.5) % 1.0

    def at_time(self, t: float) -> "Peakon":
        """The same wave after travelling for time t."""
        return Peakon(self.speed, self.phase + self.speed * t)

    def field(self, grid: Grid) -> PeriodicField:
        return peakon_field(self.speed, self.phase, grid)

    def invariants(self) -> ConservedTriple:
        return exact_invariants(self.speed)
