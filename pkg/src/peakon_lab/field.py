"""
Periodic grids, spectral transforms and the norms built on them.

Fields live on S^1 = [0, 1) sampled at x_j = j/n. The Fourier convention is
u(x) = sum_k c_k exp(2 pi i k x) with k = -n/2 .. n/2 - 1, so c_0 is the mean
and trapezoid quadrature on the nodes is exact for band-limited integrands.
"""

import logging
from dataclasses import dataclass
from typing import Callable, Tuple, Union

import numpy as np
from scipy.optimize import minimize_scalar

from .constants import MIN_GRID_SIZE, FPoint, Refinement
from .exceptions import GridError

logger = logging.getLogger(__name__)

Scalar = Union[float, np.ndarray]


@dataclass(frozen=True)
class Grid:
    """Uniform grid of n nodes on the unit circle."""

    n: int

    def __post_init__(self):
        if isinstance(self.n, bool) or not isinstance(self.n, (int, np.integer)):
            raise GridError("Grid size must be an integer", n=self.n)
        if self.n < MIN_GRID_SIZE:
            raise GridError(f"Grid size must be at least {MIN_GRID_SIZE}", n=self.n)
        if self.n & (self.n - 1):
            raise GridError("Grid size must be a power of two", n=self.n)
        object.__setattr__(self, "n", int(self.n))

    @property
    def spacing(self) -> float:
        return 1.0 / self.n

    @property
    def nodes(self) -> np.ndarray:
        return np.arange(self.n) / self.n

    @property
    def wavenumbers(self) -> np.ndarray:
        """Wavenumbers 0 .. n/2 of the one-sided (rfft) spectrum."""
        return np.arange(self.n // 2 + 1)

    @property
    def symmetric_wavenumbers(self) -> np.ndarray:
        """Wavenumbers -n/2 .. n/2 - 1 in the order used by Spectrum."""
        return np.arange(-(self.n // 2), self.n // 2)

    @property
    def dealias_cutoff(self) -> int:
        """Largest wavenumber kept by the 2/3 rule."""
        return self.n // 3


@dataclass(frozen=True, eq=False)
class PeriodicField:
    """
    Samples of a real function on a Grid.

    The sample array is copied and frozen on construction; arithmetic
    returns new fields.
    """

    grid: Grid
    values: np.ndarray

    def __post_init__(self):
        values = np.array(self.values, dtype=float)
        if values.shape != (self.grid.n,):
            raise GridError(
                f"Expected {self.grid.n} samples, got shape {values.shape}",
                n=self.grid.n
            )
        if not np.all(np.isfinite(values)):
            raise GridError("Field samples must be finite", n=self.grid.n)
        values.setflags(write=False)
        object.__setattr__(self, "values", values)

    @classmethod
    def from_function(
        cls, grid: Grid, func: Callable[[np.ndarray], np.ndarray]
    ) -> "PeriodicField":
        """Sample func at the grid nodes."""
        return cls(grid, func(grid.nodes))

    @classmethod
    def constant(cls, grid: Grid, value: float) -> "PeriodicField":
        return cls(grid, np.full(grid.n, float(value)))

    @classmethod
    def from_rfft(cls, grid: Grid, coeffs: np.ndarray) -> "PeriodicField":
        """Build a field from normalised one-sided coefficients c_0 .. c_{n/2}."""
        return cls(grid, np.fft.irfft(np.asarray(coeffs) * grid.n, n=grid.n))

    def rfft(self) -> np.ndarray:
        """Normalised one-sided coefficients c_0 .. c_{n/2}."""
        return np.fft.rfft(self.values) / self.grid.n

    def _coerce(self, other) -> Union[float, np.ndarray]:
        if isinstance(other, PeriodicField):
            if other.grid != self.grid:
                raise GridError(
                    f"Grid mismatch: {self.grid.n} vs {other.grid.n}", n=other.grid.n
                )
            return other.values
        return float(other)

    def __add__(self, other) -> "PeriodicField":
        return PeriodicField(self.grid, self.values + self._coerce(other))

    __radd__ = __add__

    def __sub__(self, other) -> "PeriodicField":
        return PeriodicField(self.grid, self.values - self._coerce(other))

    def __rsub__(self, other) -> "PeriodicField":
        return PeriodicField(self.grid, self._coerce(other) - self.values)

    def __mul__(self, other) -> "PeriodicField":
        return PeriodicField(self.grid, self.values * self._coerce(other))

    __rmul__ = __mul__

    def __truediv__(self, other: float) -> "PeriodicField":
        return PeriodicField(self.grid, self.values / float(other))

    def __neg__(self) -> "PeriodicField":
        return PeriodicField(self.grid, -self.values)

    def max_abs(self) -> float:
        return float(np.max(np.abs(self.values)))


@dataclass(frozen=True, eq=False)
class Spectrum:
    """
    Complex Fourier coefficients of a field, indexed k = -n/2 .. n/2 - 1.

    coeffs[k + n/2] holds c_k.
    """

    grid: Grid
    coeffs: np.ndarray

    def __post_init__(self):
        coeffs = np.array(self.coeffs, dtype=complex)
        if coeffs.shape != (self.grid.n,):
            raise GridError(
                f"Expected {self.grid.n} coefficients, got shape {coeffs.shape}",
                n=self.grid.n
            )
        coeffs.setflags(write=False)
        object.__setattr__(self, "coeffs", coeffs)

    def mode(self, k: int) -> complex:
        """Coefficient c_k for -n/2 <= k < n/2."""
        half = self.grid.n // 2
        if not -half <= k < half:
            raise IndexError(f"Wavenumber {k} outside [-{half}, {half})")
        return complex(self.coeffs[k + half])


@dataclass(frozen=True)
class ExtremaRecord:
    """Global maximum and minimum of a field and where they are attained."""

    max_val: float
    min_val: float
    argmax: float
    argmin: float

    def as_point(self) -> FPoint:
        return FPoint(self.max_val, self.min_val)


def transform(f: PeriodicField) -> Spectrum:
    """Full spectrum of f in symmetric order."""
    return Spectrum(f.grid, np.fft.fftshift(np.fft.fft(f.values)) / f.grid.n)


def inverse_transform(s: Spectrum) -> PeriodicField:
    """Field whose spectrum is s; the imaginary round-off is discarded."""
    values = np.fft.ifft(np.fft.ifftshift(s.coeffs)) * s.grid.n
    imag = float(np.max(np.abs(values.imag)))
    if imag > 1e-10 * max(1.0, float(np.max(np.abs(values.real)))):
        logger.debug(f"Discarding imaginary part of size {imag:.3e} in inverse transform")
    return PeriodicField(s.grid, values.real)


def derivative(f: PeriodicField, order: int = 1) -> PeriodicField:
    """Spectral derivative; the Nyquist mode is zeroed."""
    coeffs = f.rfft() * (2j * np.pi * f.grid.wavenumbers) ** order
    coeffs[-1] = 0.0
    return PeriodicField.from_rfft(f.grid, coeffs)


def mean(f: PeriodicField) -> float:
    """mu(f), the integral of f over S^1."""
    return float(np.mean(f.values))


integrate = mean


def _check_same_grid(f: PeriodicField, g: PeriodicField) -> None:
    if f.grid != g.grid:
        raise GridError(f"Grid mismatch: {f.grid.n} vs {g.grid.n}", n=g.grid.n)


def l2_norm_sq(f: PeriodicField) -> float:
    return float(np.mean(f.values ** 2))


def mu_inner(f: PeriodicField, g: PeriodicField) -> float:
    """<f, g>_mu = mu(f) mu(g) + int f_x g_x."""
    _check_same_grid(f, g)
    fx = derivative(f).values
    gx = fx if g is f else derivative(g).values
    return mean(f) * mean(g) + float(np.mean(fx * gx))


def mu_norm_sq(f: PeriodicField) -> float:
    return mu_inner(f, f)


def h1_inner(f: PeriodicField, g: PeriodicField) -> float:
    """<f, g>_{H^1} = int f g + int f_x g_x."""
    _check_same_grid(f, g)
    fx = derivative(f).values
    gx = fx if g is f else derivative(g).values
    return float(np.mean(f.values * g.values) + np.mean(fx * gx))


def h1_norm_sq(f: PeriodicField) -> float:
    return h1_inner(f, f)


def interpolant(f: PeriodicField) -> Callable[[Scalar], Scalar]:
    """
    Trigonometric interpolant of f as a callable.

    Reproduces the samples at the nodes; the Nyquist mode contributes its
    real cosine part.
    """
    n = f.grid.n
    coeffs = f.rfft()
    k = np.arange(1, n // 2)
    inner = coeffs[1:n // 2]
    mean_part = coeffs[0].real
    nyquist = coeffs[n // 2].real

    def at(x: Scalar) -> Scalar:
        points = np.asarray(x, dtype=float)
        phase = np.exp(2j * np.pi * np.multiply.outer(points, k))
        values = (
            mean_part
            + 2.0 * np.real(phase @ inner)
            + nyquist * np.cos(np.pi * n * points)
        )
        if np.ndim(values) == 0:
            return float(values)
        return values

    return at


def evaluate(f: PeriodicField, x: Scalar) -> Scalar:
    """f at arbitrary points through its trigonometric interpolant."""
    return interpolant(f)(x)


def _quadratic_peak(values: np.ndarray, index: int, spacing: float) -> Tuple[float, float]:
    n = values.size
    y0 = values[index]
    ym = values[index - 1]
    yp = values[(index + 1) % n]
    curvature = ym - 2.0 * y0 + yp
    if curvature >= 0.0:
        return index * spacing, float(y0)
    # Corners (peakon crest) would push the vertex out of the cell.
    offset = float(np.clip(0.5 * (ym - yp) / curvature, -0.5, 0.5))
    peak = y0 + 0.5 * offset * (yp - ym) + 0.5 * offset ** 2 * curvature
    return ((index + offset) * spacing) % 1.0, float(max(peak, y0))


def _spectral_peak(f: PeriodicField, index: int, sign: float) -> Tuple[float, float]:
    h = f.grid.spacing
    x0 = index * h
    node_value = sign * f.values[index]
    at = interpolant(f)
    result = minimize_scalar(
        lambda x: -sign * at(x),
        bounds=(x0 - h, x0 + h),
        method="bounded",
        options={"xatol": 1e-12},
    )
    polished = -float(result.fun)
    if polished > node_value:
        return float(result.x) % 1.0, sign * polished
    return x0, sign * node_value


def extrema(
    f: PeriodicField, refine: Refinement = Refinement.QUADRATIC
) -> ExtremaRecord:
    """
    Global maximum and minimum of f.

    The discrete extremum (smallest coordinate on ties) is refined either by
    a 3-point quadratic fit capped to half a cell, or by polishing the
    trigonometric interpolant within one cell.
    """
    values = f.values
    i_max = int(np.argmax(values))
    i_min = int(np.argmin(values))
    if refine is Refinement.SPECTRAL:
        argmax, max_val = _spectral_peak(f, i_max, 1.0)
        argmin, min_val = _spectral_peak(f, i_min, -1.0)
    else:
        argmax, max_val = _quadratic_peak(values, i_max, f.grid.spacing)
        argmin, neg_min = _quadratic_peak(-values, i_min, f.grid.spacing)
        min_val = -neg_min
    return ExtremaRecord(max_val, min_val, argmax, argmin)


def shift(f: PeriodicField, a: float) -> PeriodicField:
    """f(x - a) by a spectral phase shift."""
    original = f.rfft()
    coeffs = original * np.exp(-2j * np.pi * f.grid.wavenumbers * a)
    # A real field can only carry the cosine part of the Nyquist mode.
    coeffs[-1] = original[-1].real * np.cos(np.pi * f.grid.n * a)
    return PeriodicField.from_rfft(f.grid, coeffs)


def truncate(coeffs: np.ndarray, kmax: int) -> np.ndarray:
    """Zero the one-sided coefficients above wavenumber kmax."""
    out = np.array(coeffs, dtype=complex)
    out[kmax + 1:] = 0.0
    return out
