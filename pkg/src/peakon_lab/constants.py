"""
Constants and data structures for the peakon lab.
"""

import math
from dataclasses import dataclass
from enum import Enum, IntEnum
from fractions import Fraction

# Closed-form peakon values, phi(x) = (12x^2 + 23)/26 on [-1/2, 1/2)
PEAKON_MEAN = Fraction(12, 13)        # H0[phi] = mu(phi)
PEAKON_ENERGY = Fraction(6, 13)       # H1[phi]
PEAKON_CUBIC = Fraction(9024, 10985)  # H2[phi]
PEAKON_L2_SQ = Fraction(721, 845)     # int phi^2
PEAKON_MAX = Fraction(1)              # phi(1/2)
PEAKON_MIN = Fraction(23, 26)         # phi(0)
PEAKON_CORNER_SLOPE = Fraction(6, 13)  # one-sided |phi_x| at the crest
PEAKON_GAP = PEAKON_MAX - PEAKON_MIN  # 3/26

# Coefficients shared by the Lyapunov function and the g-construction
TWELVE_THIRTEENTHS = 12.0 / 13.0
SQRT_2_39 = math.sqrt(2.0 / 39.0)
G_CUBIC = 8.0 * SQRT_2_39             # 8 sqrt(2/39)
G_CUBIC_WEIGHTED = 1.6 * SQRT_2_39    # (8/5) sqrt(2/39)
REPRODUCING_SCALE = 13.0 / 12.0
MAX_MU_CONSTANT = math.sqrt(13.0 / 12.0)
SOBOLEV_MAX_CONSTANT = math.cosh(0.5) / (2.0 * math.sinh(0.5))

MIN_GRID_SIZE = 16
DEALIAS_FRACTION = 2.0 / 3.0

# Solver defaults
DEFAULT_CFL = 0.5
DEFAULT_FILTER_STRENGTH = 36.0
DEFAULT_FILTER_ORDER = 8
DEFAULT_BREAKING_FACTOR = 50.0


class Refinement(Enum):
    """How a discrete extremum is refined off the grid."""
    QUADRATIC = 'quadratic'
    SPECTRAL = 'spectral'


class RunStatus(Enum):
    """Outcome of a time integration."""
    COMPLETED = 'completed'
    BREAKING = 'breaking'
    FAILED = 'failed'


class OrbitMode(Enum):
    """How the translate xi of the peakon orbit is chosen."""
    ARGMAX = 'argmax'
    MINIMIZE = 'minimize'


class PerturbationKind(Enum):
    """Shapes of initial perturbations used by the stability sweep."""
    SINGLE_MODE = 'single-mode'
    RANDOM_BAND = 'random-band'
    AMPLITUDE_SCALE = 'amplitude-scale'


class ExitCode(IntEnum):
    """Process exit codes of the command-line lab."""
    OK = 0
    CHECK_FAILED = 1
    USAGE = 2


@dataclass(frozen=True)
class ConservedTriple:
    """
    Values of the three conservation laws.

    Args:
        h0: Mean, int u
        h1: Energy, half the squared mu-norm
        h2: Cubic functional, int (mu(u) u^2 + u u_x^2 / 2)
    """
    h0: float
    h1: float
    h2: float

    def scaled(self, c: float) -> "ConservedTriple":
        """Values for c*u, using homogeneity degrees 1, 2 and 3."""
        return ConservedTriple(c * self.h0, c ** 2 * self.h1, c ** 3 * self.h2)


@dataclass(frozen=True)
class FStats:
    """The four scalars that fully determine the Lyapunov function F_u."""
    h0: float
    h1: float
    h2: float
    l2sq: float

    @property
    def conserved(self) -> ConservedTriple:
        return ConservedTriple(self.h0, self.h1, self.h2)

    @classmethod
    def peakon(cls, c: float = 1.0) -> "FStats":
        """Exact statistics of c*phi from the rational closed forms."""
        return cls(
            h0=float(c * PEAKON_MEAN),
            h1=float(c ** 2 * PEAKON_ENERGY),
            h2=float(c ** 3 * PEAKON_CUBIC),
            l2sq=float(c ** 2 * PEAKON_L2_SQ),
        )

    @classmethod
    def constant(cls, value: float) -> "FStats":
        """Statistics of the constant field u = value."""
        return cls(value, 0.5 * value ** 2, value ** 3, value ** 2)


@dataclass(frozen=True)
class FPoint:
    """A point (M, m) of the Lyapunov function's domain M >= m > 0."""
    M: float
    m: float

    @property
    def gap(self) -> float:
        return self.M - self.m
