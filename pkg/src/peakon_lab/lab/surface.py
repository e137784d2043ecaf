"""Tabulation of the Lyapunov function F over a rectangle of (M, m)."""

import logging
import math
from dataclasses import dataclass

import numpy as np
import pandas as pd

from ..constants import FPoint, FStats
from ..exceptions import DomainError
from ..functionals import f_eval, f_grad

logger = logging.getLogger(__name__)

SURFACE_COLUMNS = ["M", "m", "F", "gradnorm"]


@dataclass(frozen=True)
class SurfaceTable:
    """F and |grad F| on the grid points that lie in M >= m > 0."""

    frame: pd.DataFrame

    @property
    def argmax(self) -> FPoint:
        row = self.frame.loc[self.frame["F"].idxmax()]
        return FPoint(float(row["M"]), float(row["m"]))

    @property
    def max_value(self) -> float:
        return float(self.frame["F"].max())

    def value_at(self, p: FPoint) -> float:
        """F at the tabulated point nearest to p."""
        distance = (self.frame["M"] - p.M) ** 2 + (self.frame["m"] - p.m) ** 2
        return float(self.frame.loc[distance.idxmin(), "F"])


def tabulate_surface(
    stats: FStats,
    max_range: tuple,
    min_range: tuple,
    points: int = 41,
) -> SurfaceTable:
    """
    Evaluate F on a points x points grid over max_range x min_range.

    Raises:
        DomainError: If no grid point satisfies M >= m > 0
    """
    if points < 2:
        raise ValueError(f"Need at least 2 points per axis, got {points}")
    rows = []
    for M in np.linspace(max_range[0], max_range[1], points):
        for m in np.linspace(min_range[0], min_range[1], points):
            if not M >= m > 0.0:
                continue
            p = FPoint(float(M), float(m))
            d_max, d_min = f_grad(stats, p)
            rows.append((p.M, p.m, f_eval(stats, p), math.hypot(d_max, d_min)))
    if not rows:
        raise DomainError(
            "The rectangle does not meet the domain M >= m > 0",
            point=(float(max_range[1]), float(min_range[0])),
        )
    table = SurfaceTable(pd.DataFrame(rows, columns=SURFACE_COLUMNS))
    p = table.argmax
    logger.info(
        f"F tabulated at {len(rows)} points; "
        f"max {table.max_value:.6g} at ({p.M:.6g}, {p.m:.6g})"
    )
    return table
