"""
Stability sweep: evolve the peakon under perturbations of H1 size delta and
track how far the solution drifts from the orbit.

Every delta is an independent job. SweepController dispatches them to an
executor from asyncio and assembles the report in delta order, so the
result does not depend on scheduling.
"""

import asyncio
import dataclasses
import logging
import math
from concurrent.futures import Executor, ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from ..constants import OrbitMode, PerturbationKind, Refinement, RunStatus
from ..exceptions import ConfigurationError, PeakonLabError
from ..field import PeriodicField, extrema
from ..solver import SolverConfig, evolve
from .orbit import orbital_distance, phase_distance, proof_chain
from .perturbations import build_initial_field, trial_rng

logger = logging.getLogger(__name__)

DEFAULT_CHAIN_SLACK = 1e-6


@dataclass(frozen=True)
class SweepSpec:
    """
    One stability experiment.

    Args:
        deltas: Perturbation sizes in H1 norm, ascending; 0 runs the bare peakon
        kind: Shape of the perturbation
        seed: Seed of the counter-based generator (random-band only)
        solver: Time-stepping configuration shared by every run
        c: Speed of the reference peakon
        orbit_mode: How the orbit translate is chosen
        slack: Allowed violation of the proof-chain inequality
    """

    deltas: Tuple[float, ...]
    kind: PerturbationKind
    seed: int
    solver: SolverConfig
    c: float = 1.0
    orbit_mode: OrbitMode = OrbitMode.ARGMAX
    slack: float = DEFAULT_CHAIN_SLACK

    def __post_init__(self):
        deltas = tuple(float(d) for d in self.deltas)
        if not deltas:
            raise ConfigurationError("At least one delta is required", key="deltas")
        if any(not math.isfinite(d) or d < 0.0 for d in deltas):
            raise ConfigurationError(f"Deltas must be finite and >= 0: {deltas}", key="deltas")
        if list(deltas) != sorted(set(deltas)):
            raise ConfigurationError(
                f"Deltas must be strictly increasing: {deltas}", key="deltas"
            )
        if self.c <= 0.0:
            raise ConfigurationError(f"Peakon speed must be positive, got {self.c}", key="c")
        if self.seed < 0:
            raise ConfigurationError(f"Seed must be non-negative, got {self.seed}", key="seed")
        object.__setattr__(self, "deltas", deltas)
        object.__setattr__(self, "kind", PerturbationKind(self.kind))
        object.__setattr__(self, "orbit_mode", OrbitMode(self.orbit_mode))


@dataclass(frozen=True)
class DeltaOutcome:
    """Sup-over-time summary of one run of the sweep."""

    delta: float
    status: RunStatus
    final_time: float
    records: int
    sup_distance: float
    sup_max_deviation: float
    sup_phase_distance: float
    sup_reference_distance: float
    chain_margin: float
    chain_holds: bool

    @property
    def verdict(self) -> str:
        if self.status is RunStatus.BREAKING:
            return "run terminated (breaking)"
        return "ok" if self.chain_holds else "proof chain violated"

    def to_dict(self) -> Dict[str, Any]:
        out = dataclasses.asdict(self)
        out["status"] = self.status.value
        out["verdict"] = self.verdict
        return out


@dataclass(frozen=True)
class StabilityReport:
    """Outcomes of a sweep ordered by delta."""

    spec: SweepSpec
    outcomes: Tuple[DeltaOutcome, ...] = field(default_factory=tuple)

    @property
    def deltas(self) -> np.ndarray:
        return np.array([o.delta for o in self.outcomes])

    @property
    def sup_distances(self) -> np.ndarray:
        return np.array([o.sup_distance for o in self.outcomes])

    @property
    def chain_holds(self) -> bool:
        return all(o.chain_holds for o in self.outcomes)

    @property
    def breaking(self) -> bool:
        return any(o.status is RunStatus.BREAKING for o in self.outcomes)

    def growth_ratios(self) -> np.ndarray:
        """D(delta) / sqrt(delta) for the positive deltas."""
        return np.array(
            [o.sup_distance / math.sqrt(o.delta) for o in self.outcomes if o.delta > 0.0]
        )

    def distance_nondecreasing(self) -> bool:
        """D(delta) over the runs that reached t_end never decreases with delta."""
        completed = [o.sup_distance for o in self.outcomes if o.status is RunStatus.COMPLETED]
        return bool(np.all(np.diff(completed) >= 0.0))

    @property
    def passed(self) -> bool:
        """Finite distances, the proof chain everywhere and D(delta) nondecreasing."""
        finite = all(
            math.isfinite(o.sup_distance)
            for o in self.outcomes
            if o.status is RunStatus.COMPLETED
        )
        return finite and self.chain_holds and self.distance_nondecreasing()

    def to_dict(self) -> Dict[str, Any]:
        return {
            "kind": self.spec.kind.value,
            "seed": self.spec.seed,
            "c": self.spec.c,
            "orbit_mode": self.spec.orbit_mode.value,
            "outcomes": [o.to_dict() for o in self.outcomes],
            "growth_ratios": self.growth_ratios().tolist(),
            "distance_nondecreasing": self.distance_nondecreasing(),
            "chain_holds": self.chain_holds,
            "passed": self.passed,
        }


def _config_for(spec: SweepSpec, u0: PeriodicField) -> SolverConfig:
    cfg = spec.solver
    limit = cfg.max_stable_dt(u0)
    if cfg.dt > limit:
        logger.warning(f"Reducing dt from {cfg.dt:.4g} to the CFL bound {limit:.4g}")
        cfg = dataclasses.replace(cfg, dt=limit)
    return cfg


def run_delta(spec: SweepSpec, index: int) -> DeltaOutcome:
    """Evolve the perturbation for spec.deltas[index] and summarise the run."""
    delta = spec.deltas[index]
    grid = spec.solver.grid
    initial = build_initial_field(
        spec.kind,
        delta,
        spec.c,
        grid,
        trial_rng(spec.seed, index),
        dealias=spec.solver.dealias,
    )
    cfg = _config_for(spec, initial.field)

    margins: List[float] = []
    deviations: List[float] = []
    phases: List[float] = []
    references: List[float] = []

    def observe(u: PeriodicField, t: float) -> float:
        _, dist = orbital_distance(u, spec.c, spec.orbit_mode)
        margins.append(proof_chain(u, spec.c).margin)
        deviations.append(abs(extrema(u, Refinement.SPECTRAL).max_val - spec.c))
        phases.append(phase_distance(u, spec.c, 0.0, t))
        if initial.speed == spec.c:
            references.append(dist)
        else:
            references.append(orbital_distance(u, initial.speed, spec.orbit_mode)[1])
        return dist

    logger.info(f"Sweep job delta={delta:g} ({spec.kind.value}) started")
    record = evolve(initial.field, cfg, distance_fn=observe)
    outcome = DeltaOutcome(
        delta=delta,
        status=record.status,
        final_time=float(record.times[-1]),
        records=len(record),
        sup_distance=float(np.max(record.distances)),
        sup_max_deviation=max(deviations),
        sup_phase_distance=max(phases),
        sup_reference_distance=max(references),
        chain_margin=min(margins),
        chain_holds=min(margins) >= -spec.slack,
    )
    logger.info(
        f"Sweep job delta={delta:g} finished: sup distance {outcome.sup_distance:.4g}, "
        f"{outcome.verdict}"
    )
    return outcome


class SweepController:
    """
    Runs the deltas of a sweep concurrently on an executor.

    Use as an async context manager, or call start() and close() explicitly.
    """

    def __init__(
        self,
        max_workers: Optional[int] = None,
        executor_factory: Callable[..., Executor] = ProcessPoolExecutor,
    ):
        self.max_workers = max_workers
        self.executor_factory = executor_factory
        self.executor: Optional[Executor] = None

    async def start(self) -> None:
        if self.executor is None:
            self.executor = self.executor_factory(max_workers=self.max_workers)
            logger.debug(f"Started sweep executor with max_workers={self.max_workers}")

    async def close(self) -> None:
        if self.executor is not None:
            self.executor.shutdown(wait=True)
            self.executor = None
            logger.debug("Sweep executor shut down")

    async def __aenter__(self) -> "SweepController":
        await self.start()
        return self

    async def __aexit__(self, *exc) -> None:
        await self.close()

    async def run_delta(self, spec: SweepSpec, index: int) -> DeltaOutcome:
        if self.executor is None:
            raise PeakonLabError("Sweep controller is not started")
        loop = asyncio.get_running_loop()
        return await loop.run_in_executor(self.executor, run_delta, spec, index)

    async def run(self, spec: SweepSpec) -> StabilityReport:
        """
        Run every delta of spec.

        Returns:
            StabilityReport: outcomes ordered by delta

        Raises:
            PeakonLabError: If the controller is not started, or any job failed
        """
        jobs = [self.run_delta(spec, i) for i in range(len(spec.deltas))]
        outcomes: Sequence[DeltaOutcome] = await asyncio.gather(*jobs)
        ordered = tuple(sorted(outcomes, key=lambda o: o.delta))
        logger.info(f"Sweep over {len(ordered)} deltas finished")
        return StabilityReport(spec, ordered)


def run_sweep(spec: SweepSpec, max_workers: Optional[int] = None) -> StabilityReport:
    """Blocking wrapper around SweepController.run."""

    async def _run() -> StabilityReport:
        async with SweepController(max_workers=max_workers) as controller:
            return await controller.run(spec)

    return asyncio.run(_run())


cmd_stability_sweep = run_sweep
