"""
Method-of-lines integration of the conservative weak form

    u_t + (u^2/2)_x + A^{-1} d/dx (2 mu(u) u + u_x^2 / 2) = 0

with classical RK4 in one-sided spectral space, optional 2/3 dealiasing and
an exponential spectral filter.
"""

import logging
import math
from dataclasses import dataclass, field
from typing import Callable, List, Optional

import numpy as np

from .constants import (
    DEFAULT_BREAKING_FACTOR,
    DEFAULT_CFL,
    DEFAULT_FILTER_ORDER,
    ConservedTriple,
    RunStatus,
)
from .exceptions import ConfigurationError, GridError, IntegrationError
from .field import (
    ExtremaRecord,
    Grid,
    PeriodicField,
    derivative,
    extrema,
    truncate,
)
from .functionals import conserved
from .muoperator import MuOperator

logger = logging.getLogger(__name__)

FALLBACK_DT = 1e-3

DistanceFn = Callable[[PeriodicField, float], float]


@dataclass(frozen=True)
class SolverConfig:
    """
    Time-stepping parameters.

    Args:
        n: Grid size
        dt: Time step
        t_end: Final time
        dealias: Apply the 2/3 rule to every quadratic product
        filter_strength: alpha in exp(-alpha (k/(n/2))^p), 0 disables the filter
        filter_order: Even order p >= 4
        record_every: Record every this many steps (the final state is always recorded)
        cfl: Courant number used by check_cfl and for_field
        breaking_factor: Stop once max|u_x| exceeds this multiple of its initial value
        keep_snapshots: Store the field at every record
    """

    n: int
    dt: float
    t_end: float
    dealias: bool = True
    filter_strength: float = 0.0
    filter_order: int = DEFAULT_FILTER_ORDER
    record_every: int = 1
    cfl: float = DEFAULT_CFL
    breaking_factor: float = DEFAULT_BREAKING_FACTOR
    keep_snapshots: bool = False

    def __post_init__(self):
        try:
            Grid(self.n)
        except GridError as e:
            raise ConfigurationError(str(e), key="n") from e
        if not self.dt > 0.0 or not math.isfinite(self.dt):
            raise ConfigurationError(f"dt must be positive, got {self.dt}", key="dt")
        if not self.t_end >= 0.0 or not math.isfinite(self.t_end):
            raise ConfigurationError(
                f"t_end must be non-negative, got {self.t_end}", key="t_end"
            )
        if self.filter_strength < 0.0:
            raise ConfigurationError(
                f"Filter strength must be non-negative, got {self.filter_strength}",
                key="filter_strength"
            )
        if self.filter_order < 4 or self.filter_order % 2:
            raise ConfigurationError(
                f"Filter order must be an even integer >= 4, got {self.filter_order}",
                key="filter_order"
            )
        if self.record_every < 1:
            raise ConfigurationError(
                f"record_every must be at least 1, got {self.record_every}",
                key="record_every"
            )
        if not 0.0 < self.cfl <= DEFAULT_CFL:
            raise ConfigurationError(
                f"CFL number must lie in (0, {DEFAULT_CFL}], got {self.cfl}", key="cfl"
            )
        if self.breaking_factor <= 1.0:
            raise ConfigurationError(
                f"Breaking factor must exceed 1, got {self.breaking_factor}",
                key="breaking_factor"
            )

    @property
    def grid(self) -> Grid:
        return Grid(self.n)

    def max_stable_dt(self, u0: PeriodicField) -> float:
        """cfl / (n max|u0|); infinite for the zero field."""
        peak = u0.max_abs()
        return math.inf if peak == 0.0 else self.cfl / (self.n * peak)

    def check_cfl(self, u0: PeriodicField) -> None:
        """
        Raises:
            ConfigurationError: If u0 lives on another grid or dt exceeds the
                advective bound.
        """
        if u0.grid.n != self.n:
            raise ConfigurationError(
                f"Initial field has {u0.grid.n} nodes, config expects {self.n}", key="n"
            )
        limit = self.max_stable_dt(u0)
        if self.dt > limit * (1.0 + 1e-12):
            raise ConfigurationError(
                f"dt = {self.dt:.6g} exceeds the CFL bound {limit:.6g}", key="dt"
            )

    @classmethod
    def for_field(
        cls, u0: PeriodicField, t_end: float, dt: Optional[float] = None, **kwargs
    ) -> "SolverConfig":
        """Config on u0's grid; without dt the largest admissible step is used."""
        draft = cls(n=u0.grid.n, dt=FALLBACK_DT, t_end=t_end, **kwargs)
        if dt is None:
            limit = draft.max_stable_dt(u0)
            dt = FALLBACK_DT if math.isinf(limit) else limit
        return cls(n=u0.grid.n, dt=dt, t_end=t_end, **kwargs)

    def filter_factors(self) -> np.ndarray:
        """exp(-alpha (k/(n/2))^p) on the one-sided wavenumbers."""
        k = self.grid.wavenumbers
        return np.exp(-self.filter_strength * (k / (self.n // 2)) ** self.filter_order)


@dataclass
class TrajectoryRecord:
    """
    Time series recorded along one run.

    times, extrema and conserved always have the same length; snapshots is
    filled only when the config keeps them and distances only when a
    distance callback was given.
    """

    times: np.ndarray
    extrema: List[ExtremaRecord]
    conserved: List[ConservedTriple]
    final: PeriodicField
    status: RunStatus = RunStatus.COMPLETED
    steps: int = 0
    dt: float = 0.0
    snapshots: List[PeriodicField] = field(default_factory=list)
    distances: Optional[np.ndarray] = None

    def __len__(self) -> int:
        return len(self.times)

    @property
    def max_values(self) -> np.ndarray:
        return np.array([e.max_val for e in self.extrema])

    @property
    def min_values(self) -> np.ndarray:
        return np.array([e.min_val for e in self.extrema])

    def drift(self) -> ConservedTriple:
        """Absolute change of (H0, H1, H2) between the first and last record."""
        first, last = self.conserved[0], self.conserved[-1]
        return ConservedTriple(
            abs(last.h0 - first.h0), abs(last.h1 - first.h1), abs(last.h2 - first.h2)
        )

    def relative_drift(self) -> ConservedTriple:
        """drift() divided by the initial magnitudes; zero initial values stay absolute."""
        first = self.conserved[0]
        change = self.drift()

        def scale(d: float, ref: float) -> float:
            return d / abs(ref) if ref != 0.0 else d

        return ConservedTriple(
            scale(change.h0, first.h0),
            scale(change.h1, first.h1),
            scale(change.h2, first.h2),
        )


def _rhs_spectrum(
    coeffs: np.ndarray, grid: Grid, op: MuOperator, dealias: bool
) -> np.ndarray:
    n = grid.n
    ik = 2j * np.pi * grid.wavenumbers
    if dealias:
        coeffs = truncate(coeffs, grid.dealias_cutoff)
    ux_coeffs = ik * coeffs
    ux_coeffs[-1] = 0.0
    u = np.fft.irfft(coeffs * n, n=n)
    ux = np.fft.irfft(ux_coeffs * n, n=n)
    mu = coeffs[0].real
    advective = np.fft.rfft(0.5 * u * u) / n
    nonlocal_flux = np.fft.rfft(2.0 * mu * u + 0.5 * ux * ux) / n
    out = -ik * advective - op.invert_spectrum(ik * nonlocal_flux)
    if dealias:
        out = truncate(out, grid.dealias_cutoff)
    out[-1] = 0.0
    return out


def rhs(u: PeriodicField, dealias: bool = True) -> PeriodicField:
    """
    Right-hand side -u u_x - A^{-1} d/dx (2 mu(u) u + u_x^2 / 2).

    The mean mode of the result is exactly zero, so the semi-discrete flow
    conserves H0.
    """
    op = MuOperator(u.grid)
    return PeriodicField.from_rfft(u.grid, _rhs_spectrum(u.rfft(), u.grid, op, dealias))


def _rk4(
    coeffs: np.ndarray, dt: float, tendency: Callable[[np.ndarray], np.ndarray]
) -> np.ndarray:
    k1 = tendency(coeffs)
    k2 = tendency(coeffs + 0.5 * dt * k1)
    k3 = tendency(coeffs + 0.5 * dt * k2)
    k4 = tendency(coeffs + dt * k3)
    return coeffs + dt / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4)


def step(u: PeriodicField, dt: float, cfg: SolverConfig, t: float = 0.0) -> PeriodicField:
    """
    One RK4 step of size dt followed by the spectral filter.

    t is the time of u; only used to stamp an IntegrationError.
    """
    op = MuOperator(u.grid)

    def tendency(c: np.ndarray) -> np.ndarray:
        return _rhs_spectrum(c, u.grid, op, cfg.dealias)

    coeffs = _rk4(u.rfft(), dt, tendency)
    if cfg.filter_strength > 0.0:
        coeffs = coeffs * cfg.filter_factors()
    values = np.fft.irfft(coeffs * u.grid.n, n=u.grid.n)
    if not np.all(np.isfinite(values)):
        raise IntegrationError(
            "Non-finite state after one step", time=t + dt, last_state=u
        )
    return PeriodicField(u.grid, values)


def _slope_peak(coeffs: np.ndarray, grid: Grid) -> float:
    ux = 2j * np.pi * grid.wavenumbers * coeffs
    ux[-1] = 0.0
    return float(np.max(np.abs(np.fft.irfft(ux * grid.n, n=grid.n))))


def evolve(
    u0: PeriodicField,
    cfg: SolverConfig,
    distance_fn: Optional[DistanceFn] = None,
    backward: bool = False,
) -> TrajectoryRecord:
    """
    Integrate u0 from t = 0 to cfg.t_end.

    Args:
        u0: Initial field on a grid of cfg.n nodes
        cfg: Solver configuration; dt must satisfy the CFL bound for u0
        distance_fn: Optional callback (u, t) -> float stored with every record
        backward: Integrate the negated right-hand side

    Returns:
        TrajectoryRecord: with status BREAKING if the slope blew past the
            configured threshold before t_end

    Raises:
        ConfigurationError: If cfg does not fit u0
        IntegrationError: If the state stops being finite
    """
    cfg.check_cfl(u0)
    grid = u0.grid
    op = MuOperator(grid)
    sign = -1.0 if backward else 1.0
    filter_factors = cfg.filter_factors() if cfg.filter_strength > 0.0 else None

    def tendency(c: np.ndarray) -> np.ndarray:
        return sign * _rhs_spectrum(c, grid, op, cfg.dealias)

    coeffs = u0.rfft()
    if cfg.dealias:
        coeffs = truncate(coeffs, grid.dealias_cutoff)
    coeffs[-1] = 0.0
    current = PeriodicField.from_rfft(grid, coeffs)

    threshold = cfg.breaking_factor * max(_slope_peak(coeffs, grid), 1.0)
    n_steps = int(math.ceil(cfg.t_end / cfg.dt * (1.0 - 1e-12))) if cfg.t_end > 0 else 0

    times: List[float] = []
    records: List[ExtremaRecord] = []
    triples: List[ConservedTriple] = []
    snapshots: List[PeriodicField] = []
    distances: List[float] = []

    def record(u: PeriodicField, t: float) -> None:
        times.append(t)
        records.append(extrema(u))
        triples.append(conserved(u))
        if cfg.keep_snapshots:
            snapshots.append(u)
        if distance_fn is not None:
            distances.append(distance_fn(u, t))

    logger.info(
        f"Evolving n={grid.n} to t={cfg.t_end} in {n_steps} steps of dt={cfg.dt:.3g}"
        + (" (backward)" if backward else "")
    )
    record(current, 0.0)

    status = RunStatus.COMPLETED
    t = 0.0
    done = 0
    for i in range(1, n_steps + 1):
        h = cfg.dt if i < n_steps else cfg.t_end - (n_steps - 1) * cfg.dt
        coeffs = _rk4(coeffs, h, tendency)
        if filter_factors is not None:
            coeffs = coeffs * filter_factors
        values = np.fft.irfft(coeffs * grid.n, n=grid.n)
        if not np.all(np.isfinite(values)):
            logger.error(f"Non-finite state at t={t + h:.6g}, step {i}")
            raise IntegrationError(
                "Time stepping produced a non-finite state",
                time=t + h,
                last_state=current,
            )
        t = cfg.t_end if i == n_steps else i * cfg.dt
        current = PeriodicField(grid, values)
        done = i

        slope = _slope_peak(coeffs, grid)
        if slope > threshold:
            logger.warning(
                f"Wave breaking suspected at t={t:.6g}: max|u_x| = {slope:.4g} "
                f"exceeds {threshold:.4g}"
            )
            record(current, t)
            status = RunStatus.BREAKING
            break
        if i % cfg.record_every == 0 or i == n_steps:
            record(current, t)
            logger.debug(f"t={t:.6g} M={records[-1].max_val:.10g} H1={triples[-1].h1:.12g}")

    logger.info(f"Run finished at t={t:.6g} after {done} steps: {status.value}")
    return TrajectoryRecord(
        times=np.array(times),
        extrema=records,
        conserved=triples,
        final=current,
        status=status,
        steps=done,
        dt=cfg.dt,
        snapshots=snapshots,
        distances=np.array(distances) if distance_fn is not None else None,
    )


def m_form_residual(u_prev: PeriodicField, u_next: PeriodicField, dt: float) -> float:
    """
    L2 norm of (m_next - m_prev)/dt + u m_x + 2 u_x m with m = A u and the
    transport terms taken at the midpoint state.
    """
    op = MuOperator(u_prev.grid)
    mid = 0.5 * (u_prev + u_next)
    m_mid = op.apply(mid)
    residual = (
        (op.apply(u_next) - op.apply(u_prev)) / dt
        + mid * derivative(m_mid)
        + 2.0 * derivative(mid) * m_mid
    )
    return math.sqrt(float(np.mean(residual.values ** 2)))
