"""The inertia operator A = mu - d^2/dx^2 and its inverse."""

from dataclasses import dataclass, field

import numpy as np

from .constants import REPRODUCING_SCALE
from .field import Grid, PeriodicField, mu_inner
from .peakon import peakon_field


@dataclass(frozen=True)
class MuOperator:
    """
    A acts diagonally on the spectrum: the mean mode is kept and mode k != 0
    is multiplied by (2 pi k)^2.
    """

    grid: Grid
    symbol: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        k = self.grid.wavenumbers
        symbol = (2.0 * np.pi * k) ** 2
        symbol[0] = 1.0
        symbol.setflags(write=False)
        object.__setattr__(self, "symbol", symbol)

    def apply_spectrum(self, coeffs: np.ndarray) -> np.ndarray:
        return coeffs * self.symbol

    def invert_spectrum(self, coeffs: np.ndarray) -> np.ndarray:
        return coeffs / self.symbol

    def apply(self, u: PeriodicField) -> PeriodicField:
        """m = A u = mu(u) - u_xx."""
        return PeriodicField.from_rfft(self.grid, self.apply_spectrum(u.rfft()))

    def invert(self, g: PeriodicField) -> PeriodicField:
        """A^{-1} g; mean-zero fields stay mean-zero."""
        return PeriodicField.from_rfft(self.grid, self.invert_spectrum(g.rfft()))

    def kernel_reproduce(self, f: PeriodicField, x: float) -> float:
        """
        (13/12) <phi(. - x + 1/2), f>_mu, which equals f(x).

        The kernel is built from the closed-form coefficients, so the result is
        exact for fields without a Nyquist component.
        """
        kernel = peakon_field(1.0, x - 0.5, self.grid)
        return REPRODUCING_SCALE * mu_inner(kernel, f)


def apply_a(u: PeriodicField) -> PeriodicField:
    return MuOperator(u.grid).apply(u)


def invert_a(g: PeriodicField) -> PeriodicField:
    return MuOperator(g.grid).invert(g)


def kernel_reproduce(f: PeriodicField, x: float) -> float:
    return MuOperator(f.grid).kernel_reproduce(f, x)
