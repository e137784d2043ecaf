"""Identities that hold exactly for band-limited fields, checked on random data."""

from typing import List

import numpy as np

from ...field import derivative, evaluate, mean
from ...functionals import g_identities, h1_expansion
from ...muoperator import kernel_reproduce
from ...peakon import peakon_field, peakon_ode_residual, phi_x, phi_xx_pairing
from ..perturbations import random_band_field, trial_rng
from .base import Check, CheckContext, CheckResult


class H1ExpansionCheck(Check):
    """H1[u] - H1[phi] = (1/2)||u - phi(. - xi)||_mu^2 + (12/13)(u(xi + 1/2) - 1)."""

    NAME = "h1-expansion"
    SUITE = "identities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        worst = 0.0
        for u, rng in context.positive_fields():
            worst = max(worst, h1_expansion(u, float(rng.uniform())).residual)
        peakon = peakon_field(1.0, 0.0, context.grid)
        on_orbit = max(
            h1_expansion(peakon, xi).residual for xi in (0.0, 0.25, 0.5)
        )
        return [
            CheckResult.from_values(f"{self.NAME}: random fields", worst, context.tol),
            CheckResult.from_values(f"{self.NAME}: peakon translates", on_orbit, context.tol),
        ]


class GMomentCheck(Check):
    """Both g-moment identities, each side computed independently."""

    NAME = "g-moments"
    SUITE = "identities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        square = weighted = 0.0
        for u, _ in context.positive_fields():
            first, second = g_identities(u)
            square = max(square, first.residual)
            weighted = max(weighted, second.residual)
        return [
            CheckResult.from_values(f"{self.NAME}: (1/2) int g^2", square, context.tol),
            CheckResult.from_values(f"{self.NAME}: (1/2) int u g^2", weighted, context.tol),
        ]


class ReproducingKernelCheck(Check):
    """(13/12) <phi(. - x + 1/2), f>_mu = f(x)."""

    NAME = "reproducing-kernel"
    SUITE = "identities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        points = trial_rng(context.seed, context.trials).uniform(size=context.trials)
        worst = 0.0
        for f, x in zip(context.signed_fields(), points):
            worst = max(worst, abs(kernel_reproduce(f, float(x)) - evaluate(f, float(x))))
        return [CheckResult.from_values(self.NAME, worst, context.tol)]


class PeakonOdeCheck(Check):
    """
    phi_x^2 = (144/169)(13/6)(phi - 23/26) off the crest, with phi_x < 0 on
    (-1/2, 0) and phi_x > 0 on (0, 1/2).
    """

    NAME = "peakon-ode"
    SUITE = "identities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        rng = trial_rng(context.seed, context.trials)
        x = rng.uniform(-0.5, 0.5, size=context.trials)
        x = x[(x != -0.5) & (x != 0.0)]
        residual = float(np.max(np.abs(peakon_ode_residual(x))))
        slopes = np.asarray(phi_x(x).value)
        wrong_sign = int(np.count_nonzero(np.sign(slopes) != np.sign(x)))
        return [
            CheckResult.from_values(f"{self.NAME}: residual", residual, context.tol),
            CheckResult.from_values(f"{self.NAME}: sign pattern", wrong_sign, 0),
        ]


class PhiXXPairingCheck(Check):
    """int phi psi_xx = (12/13)(int psi - psi(1/2)) for smooth psi."""

    NAME = "phi-xx-pairing"
    SUITE = "identities"

    def run(self, context: CheckContext) -> List[CheckResult]:
        grid = context.grid
        peakon = peakon_field(1.0, 0.0, grid)
        worst = 0.0
        for i in range(context.trials):
            psi = random_band_field(grid, trial_rng(context.seed, i), mean=1.0)
            direct = mean(peakon * derivative(psi, order=2))
            worst = max(worst, abs(direct - phi_xx_pairing(psi)))
        return [CheckResult.from_values(self.NAME, worst, context.tol)]
