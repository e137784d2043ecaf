"""CSV and JSON output of runs, and CSV input of sampled fields."""

import json
import logging
from enum import Enum
from pathlib import Path
from typing import Any, Dict, List, Optional, Sequence, Union

import numpy as np
import pandas as pd

from ..exceptions import ConfigurationError, GridError
from ..field import Grid, PeriodicField
from ..solver import TrajectoryRecord
from .checks import CheckResult

logger = logging.getLogger(__name__)

PathLike = Union[str, Path]

FLOAT_FORMAT = "%.17g"
TRAJECTORY_COLUMNS = ["t", "M", "m", "xi", "H0", "H1", "H2", "dist_to_orbit"]


def trajectory_frame(record: TrajectoryRecord) -> pd.DataFrame:
    """One row per record; dist_to_orbit is NaN when the run had no distance callback."""
    distances = record.distances
    if distances is None:
        distances = np.full(len(record), np.nan)
    return pd.DataFrame(
        {
            "t": record.times,
            "M": [e.max_val for e in record.extrema],
            "m": [e.min_val for e in record.extrema],
            "xi": [e.argmax for e in record.extrema],
            "H0": [c.h0 for c in record.conserved],
            "H1": [c.h1 for c in record.conserved],
            "H2": [c.h2 for c in record.conserved],
            "dist_to_orbit": distances,
        },
        columns=TRAJECTORY_COLUMNS,
    )


def field_frame(record: TrajectoryRecord) -> pd.DataFrame:
    """Stored snapshots in long form (t, x, u)."""
    if not record.snapshots:
        return pd.DataFrame(columns=["t", "x", "u"])
    frames = [
        pd.DataFrame({"t": t, "x": u.grid.nodes, "u": u.values})
        for t, u in zip(record.times, record.snapshots)
    ]
    return pd.concat(frames, ignore_index=True)


def write_frame(frame: pd.DataFrame, path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    frame.to_csv(path, index=False, float_format=FLOAT_FORMAT)
    logger.info(f"Wrote {len(frame)} rows to {path}")
    return path


def write_trajectory(record: TrajectoryRecord, path: PathLike) -> Path:
    return write_frame(trajectory_frame(record), path)


def write_fields(record: TrajectoryRecord, path: PathLike) -> Path:
    return write_frame(field_frame(record), path)


def _jsonable(value: Any) -> Any:
    if isinstance(value, Path):
        return str(value)
    if isinstance(value, Enum):
        return value.value
    if isinstance(value, (np.floating, np.integer, np.bool_)):
        value = value.item()
    if isinstance(value, float) and not np.isfinite(value):
        return None
    if isinstance(value, dict):
        return {k: _jsonable(v) for k, v in value.items()}
    if isinstance(value, (list, tuple)):
        return [_jsonable(v) for v in value]
    return value


def build_summary(
    command: str,
    config: Dict[str, Any],
    checks: Sequence[CheckResult],
    sup_orbital_distance: Optional[float],
    breaking: bool,
    **extra: Any,
) -> Dict[str, Any]:
    summary = {
        "command": command,
        "config": config,
        "checks": [check.to_dict() for check in checks],
        "sup_orbital_distance": sup_orbital_distance,
        "breaking": breaking,
    }
    summary.update(extra)
    return _jsonable(summary)


def write_summary(summary: Dict[str, Any], path: PathLike) -> Path:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w") as f:
        json.dump(summary, f, indent=2)
    logger.info(f"Wrote summary to {path}")
    return path


def read_field(path: PathLike, column: str = "u") -> PeriodicField:
    """
    Field from a CSV with a `column` column sampled at x_j = j/n.

    Raises:
        ConfigurationError: If the file has no such column or an invalid sample count
    """
    frame = pd.read_csv(path)
    if column not in frame.columns:
        raise ConfigurationError(f"{path} has no {column!r} column", key="field_file")
    values: List[float] = frame[column].to_numpy(dtype=float).tolist()
    try:
        return PeriodicField(Grid(len(values)), values)
    except GridError as e:
        raise ConfigurationError(f"{path}: {e}", key="field_file") from e
