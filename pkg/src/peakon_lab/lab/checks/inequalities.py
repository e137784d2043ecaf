"""Inequalities checked on seeded random fields; measured is the worst excess lhs - rhs."""

from typing import Callable, List

from ...exceptions import DomainError
from ...field import PeriodicField
from ...functionals import (
    Bound,
    epsilon_norm_bound,
    l2_energy_bound,
    lyapunov_value,
    max_mu_inequality,
    norm_sandwich,
    peakon_equality_ratio,
    sharp_max_bound,
    sobolev_max_bound,
)
from ...peakon import peakon_field
from .base import Check, CheckContext, CheckResult

EPSILONS = (1.0, 24.0, 100.0)
LYAPUNOV_FLOOR = 1e-8


def _worst_excess(context: CheckContext, bound: Callable[[PeriodicField], Bound]) -> float:
    return max(-bound(f).margin for f in context.signed_fields())


class LyapunovCheck(Check):
    """F_u(M_u, m_u) >= 0 for positive u."""

    NAME = "lyapunov-nonnegative"
    SUITE = "inequalities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        worst = float("-inf")
        for u, _ in context.positive_fields():
            try:
                worst = max(worst, -lyapunov_value(u))
            except DomainError as e:
                return [CheckResult(self.NAME, float("nan"), -LYAPUNOV_FLOOR, False, str(e))]
        return [CheckResult.from_values(self.NAME, worst, LYAPUNOV_FLOOR)]


class MaxMuCheck(Check):
    """max|f| <= sqrt(13/12) ||f||_mu, with equality for the peakon."""

    NAME = "max-mu"
    SUITE = "inequalities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        worst = _worst_excess(context, max_mu_inequality)
        peakon = max_mu_inequality(peakon_field(1.0, 0.0, context.grid))
        ratio = peakon.measured / peakon.bound
        gap = abs(ratio - peakon_equality_ratio(context.n))
        return [
            CheckResult.from_values(f"{self.NAME}: random fields", worst, context.tol),
            CheckResult.from_values(f"{self.NAME}: peakon equality", gap, context.tol),
        ]


class NormSandwichCheck(Check):
    """||u||_mu^2 <= ||u||_{H1}^2 <= 3 ||u||_mu^2."""

    NAME = "norm-sandwich"
    SUITE = "inequalities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        lower = upper = float("-inf")
        for f in context.signed_fields():
            low, high = norm_sandwich(f)
            lower = max(lower, -low.margin)
            upper = max(upper, -high.margin)
        return [
            CheckResult.from_values(f"{self.NAME}: lower", lower, context.tol),
            CheckResult.from_values(f"{self.NAME}: upper", upper, context.tol),
        ]


class SharpMaxCheck(Check):
    """max f^2 <= ((eps+2)/24) int f_x^2 + ((eps+2)/eps) mu(f)^2."""

    NAME = "sharp-max"
    SUITE = "inequalities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        return [
            CheckResult.from_values(
                f"{self.NAME}: eps={eps:g}",
                _worst_excess(context, lambda f, e=eps: sharp_max_bound(f, e)),
                context.tol,
            )
            for eps in EPSILONS
        ]


class SobolevMaxCheck(Check):
    """max|f|^2 <= (cosh(1/2) / (2 sinh(1/2))) ||f||_{H1}^2."""

    NAME = "sobolev-max"
    SUITE = "inequalities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        return [
            CheckResult.from_values(
                self.NAME, _worst_excess(context, sobolev_max_bound), context.tol
            )
        ]


class EnergyNormCheck(Check):
    """||u||_{H1}^2 <= ((eps+2)/eps) mu^2 + ((eps+26)/24) int u_x^2 and int u^2 <= 6 H1[u]."""

    NAME = "energy-norm"
    SUITE = "inequalities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        results = [
            CheckResult.from_values(
                f"{self.NAME}: eps={eps:g}",
                _worst_excess(context, lambda u, e=eps: epsilon_norm_bound(u, e)),
                context.tol,
            )
            for eps in EPSILONS
        ]
        results.append(
            CheckResult.from_values(
                f"{self.NAME}: L2 by H1", _worst_excess(context, l2_energy_bound), context.tol
            )
        )
        return results
