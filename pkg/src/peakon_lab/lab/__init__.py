"""
Verification lab: orbit distances, perturbed initial data, stability sweeps,
the F-surface table and the command-line surface built on them.
"""

from .orbit import crest_translate, orbital_distance, phase_distance, proof_chain
from .perturbations import (
    InitialData,
    build_initial_field,
    positive_band_field,
    random_band_field,
    trial_rng,
)
from .surface import SURFACE_COLUMNS, SurfaceTable, tabulate_surface
from .sweep import (
    DeltaOutcome,
    StabilityReport,
    SweepController,
    SweepSpec,
    cmd_stability_sweep,
    run_delta,
    run_sweep,
)

__all__ = [
    'crest_translate',
    'orbital_distance',
    'phase_distance',
    'proof_chain',
    'InitialData',
    'build_initial_field',
    'positive_band_field',
    'random_band_field',
    'trial_rng',
    'SURFACE_COLUMNS',
    'SurfaceTable',
    'tabulate_surface',
    'DeltaOutcome',
    'StabilityReport',
    'SweepController',
    'SweepSpec',
    'cmd_stability_sweep',
    'run_delta',
    'run_sweep',
]
