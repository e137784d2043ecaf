"""
Base class and registry for verification checks.
"""

from dataclasses import dataclass
from typing import Dict, Iterator, List, Tuple

import numpy as np

from ...exceptions import ConfigurationError
from ...field import Grid, PeriodicField
from ..perturbations import positive_band_field, random_band_field, trial_rng

SUITES = ("constants", "identities", "inequalities")


@dataclass(frozen=True)
class CheckContext:
    """
    Shared parameters of a verification run.

    Args:
        trials: Number of random fields per check
        seed: Seed of the counter-based generator
        tol: Tolerance applied by every check
        n: Grid size of the random fields
    """

    trials: int = 200
    seed: int = 0
    tol: float = 1e-6
    n: int = 512

    def __post_init__(self):
        if self.trials < 1:
            raise ConfigurationError(
                f"trials must be positive, got {self.trials}", key="trials"
            )
        if self.tol <= 0.0:
            raise ConfigurationError(f"tol must be positive, got {self.tol}", key="tol")

    @property
    def grid(self) -> Grid:
        return Grid(self.n)

    def positive_fields(self) -> Iterator[Tuple[PeriodicField, np.random.Generator]]:
        """(u, rng) per trial with u > 0; rng continues the trial's stream."""
        grid = self.grid
        for i in range(self.trials):
            rng = trial_rng(self.seed, i)
            yield positive_band_field(grid, rng), rng

    def signed_fields(self) -> Iterator[PeriodicField]:
        """Random band-limited fields with a random mean, of either sign."""
        grid = self.grid
        for i in range(self.trials):
            rng = trial_rng(self.seed, i)
            yield random_band_field(grid, rng, mean=float(rng.normal()))


@dataclass(frozen=True)
class CheckResult:
    """Outcome of one check; passed means measured <= bound."""

    name: str
    measured: float
    bound: float
    passed: bool
    detail: str = ""

    @classmethod
    def from_values(
        cls, name: str, measured: float, bound: float, detail: str = ""
    ) -> "CheckResult":
        return cls(name, float(measured), float(bound), bool(measured <= bound), detail)

    def to_dict(self) -> Dict[str, object]:
        return {
            "name": self.name,
            "measured": self.measured,
            "bound": self.bound,
            "pass": self.passed,
        }


class Check:
    """Base class for all verification checks."""

    NAME: str = None
    SUITE: str = None

    def __init__(self):
        if self.NAME is None or self.SUITE not in SUITES:
            raise NotImplementedError("NAME and a known SUITE must be defined in subclass")

    def run(self, context: CheckContext) -> List[CheckResult]:
        """Run the check and return one result per measured quantity."""
        raise NotImplementedError


# Registry of supported checks
SUPPORTED_CHECKS: Dict[str, Check] = {}


def register_check(check_class: type) -> type:
    """Register a check class under its NAME."""
    instance = check_class()
    SUPPORTED_CHECKS[instance.NAME] = instance
    return check_class


def checks_for(suite: str) -> List[Check]:
    """
    Registered checks of a suite, or of every suite for "all".

    Raises:
        ConfigurationError: If the suite name is unknown
    """
    if suite == "all":
        return list(SUPPORTED_CHECKS.values())
    if suite not in SUITES:
        raise ConfigurationError(f"Unknown suite {suite!r}", key="suite")
    return [check for check in SUPPORTED_CHECKS.values() if check.SUITE == suite]


def run_suite(suite: str, context: CheckContext) -> List[CheckResult]:
    results: List[CheckResult] = []
    for check in checks_for(suite):
        results.extend(check.run(context))
    return results
