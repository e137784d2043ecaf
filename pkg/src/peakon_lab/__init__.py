"""
Peakon-Lab - Pseudospectral solver and verification lab for periodic peakons
of the mu-Camassa-Holm equation.

Provides periodic fields with spectral norms, the closed-form peakon and its
constants, the operator A = mu - d^2, the Lyapunov function F(M, m) with its
inequalities, and a conservative RK4 time stepper.
"""

from .constants import (
    ConservedTriple,
    ExitCode,
    FPoint,
    FStats,
    OrbitMode,
    PerturbationKind,
    Refinement,
    RunStatus,
)
from .exceptions import (
    ConfigurationError,
    DomainError,
    GridError,
    IntegrationError,
    PeakonLabError,
)
from .field import (
    ExtremaRecord,
    Grid,
    PeriodicField,
    Spectrum,
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
from .functionals import (
    conserved,
    f_eval,
    f_grad,
    f_hess,
    fstats,
    g_field,
    h1_expansion,
    lyapunov_value,
)
from .muoperator import MuOperator, apply_a, invert_a, kernel_reproduce
from .peakon import (
    Peakon,
    exact_invariants,
    peakon_field,
    phi,
    phi_x,
    sampled_invariants,
    spectral_tail,
)
from .solver import SolverConfig, TrajectoryRecord, evolve, rhs, step

__version__ = "0.1.0"
__all__ = [
    'ConservedTriple',
    'ExitCode',
    'FPoint',
    'FStats',
    'OrbitMode',
    'PerturbationKind',
    'Refinement',
    'RunStatus',
    'PeakonLabError',
    'GridError',
    'DomainError',
    'ConfigurationError',
    'IntegrationError',
    'ExtremaRecord',
    'Grid',
    'PeriodicField',
    'Spectrum',
    'derivative',
    'evaluate',
    'extrema',
    'h1_norm_sq',
    'inverse_transform',
    'mean',
    'mu_inner',
    'mu_norm_sq',
    'shift',
    'transform',
    'conserved',
    'f_eval',
    'f_grad',
    'f_hess',
    'fstats',
    'g_field',
    'h1_expansion',
    'lyapunov_value',
    'MuOperator',
    'apply_a',
    'invert_a',
    'kernel_reproduce',
    'Peakon',
    'peakon_field',
    'phi',
    'phi_x',
    'exact_invariants',
    'sampled_invariants',
    'spectral_tail',
    'SolverConfig',
    'TrajectoryRecord',
    'evolve',
    'rhs',
    'step',
]
