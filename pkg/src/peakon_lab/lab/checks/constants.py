"""Closed-form peakon constants reproduced by quadrature."""

from typing import List

import numpy as np

from ...constants import (
    PEAKON_CORNER_SLOPE,
    PEAKON_CUBIC,
    PEAKON_ENERGY,
    PEAKON_L2_SQ,
    PEAKON_MAX,
    PEAKON_MEAN,
    PEAKON_MIN,
)
from ...field import Grid, extrema, mu_norm_sq
from ...peakon import peakon_field, phi, phi_x, sampled_invariants, spectral_tail
from .base import Check, CheckContext, CheckResult

QUADRATURE_NODES = 1024


def _relative(value: float, exact: float) -> float:
    return abs(value - exact) / abs(exact)


class PeakonConstantsCheck(Check):
    """
    The nine peakon constants on 1024 nodes: H0, H1, H2, int phi^2, max,
    min, both one-sided crest slopes and the squared mu-norm.
    """

    NAME = "peakon-constants"
    SUITE = "constants"

    def run(self, context: CheckContext) -> List[CheckResult]:
        n = QUADRATURE_NODES
        grid = Grid(n)
        samples = np.asarray(phi(grid.nodes))
        triple = sampled_invariants(n)
        record = extrema(peakon_field(1.0, 0.0, grid))
        mu_tail, _ = spectral_tail(n)
        left = phi_x(0.5 - 1e-12).value
        right = phi_x(0.5)

        measured = [
            ("H0", triple.h0, PEAKON_MEAN),
            ("H1", triple.h1, PEAKON_ENERGY),
            ("H2", triple.h2, PEAKON_CUBIC),
            ("L2 norm squared", float(np.mean(samples ** 2)), PEAKON_L2_SQ),
            ("max", float(np.max(samples)), PEAKON_MAX),
            ("min", float(np.min(samples)), PEAKON_MIN),
            ("left crest slope", left, PEAKON_CORNER_SLOPE),
            ("right crest slope", right.value, -PEAKON_CORNER_SLOPE),
            (
                "mu norm squared",
                mu_norm_sq(peakon_field(1.0, 0.0, grid)) + mu_tail,
                2 * PEAKON_ENERGY,
            ),
        ]
        results = [
            CheckResult.from_values(
                f"{self.NAME}: {label}", _relative(value, float(exact)), context.tol
            )
            for label, value, exact in measured
        ]
        # The projected field peaks on the crest, one grid cell is enough slack.
        results.append(
            CheckResult.from_values(
                f"{self.NAME}: crest location",
                abs(record.argmax - 0.5),
                grid.spacing,
                detail="spectral peakon argmax",
            )
        )
        return results
