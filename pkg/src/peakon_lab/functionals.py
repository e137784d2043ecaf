"""
Conservation laws and the Lyapunov function F_u(M, m).

F_u depends on u only through FStats (H0, H1, H2 and int u^2), so F, its
gradient and its Hessian take FStats rather than a field. Field-level
helpers build the stats and check the identities F is derived from.
"""

import logging
import math
from typing import NamedTuple, Optional, Tuple

import numpy as np
from scipy.integrate import quad

from .constants import (
    G_CUBIC,
    G_CUBIC_WEIGHTED,
    MAX_MU_CONSTANT,
    PEAKON_CUBIC,
    PEAKON_ENERGY,
    PEAKON_MEAN,
    SOBOLEV_MAX_CONSTANT,
    TWELVE_THIRTEENTHS,
    ConservedTriple,
    FPoint,
    FStats,
    Refinement,
)
from .exceptions import DomainError
from .field import (
    ExtremaRecord,
    PeriodicField,
    derivative,
    evaluate,
    extrema,
    h1_norm_sq,
    interpolant,
    l2_norm_sq,
    mean,
    mu_norm_sq,
)
from .peakon import mu_distance_sq, spectral_tail

logger = logging.getLogger(__name__)

_QUAD_OPTIONS = {"epsabs": 1e-13, "epsrel": 1e-12, "limit": 200}


class Bound(NamedTuple):
    """Both sides of an inequality measured <= bound."""
    measured: float
    bound: float

    @property
    def margin(self) -> float:
        return self.bound - self.measured

    def holds(self, slack: float = 0.0) -> bool:
        return self.measured <= self.bound + slack


class Identity(NamedTuple):
    """Both sides of an identity computed independently."""
    lhs: float
    rhs: float

    @property
    def residual(self) -> float:
        return abs(self.lhs - self.rhs)


class GMoments(NamedTuple):
    half_g_sq: float
    half_u_g_sq: float


def conserved(u: PeriodicField) -> ConservedTriple:
    """(H0, H1, H2) by spectral differentiation and trapezoid quadrature."""
    ux = derivative(u).values
    h0 = mean(u)
    h1 = 0.5 * (h0 ** 2 + float(np.mean(ux ** 2)))
    h2 = h0 * float(np.mean(u.values ** 2)) + 0.5 * float(np.mean(u.values * ux ** 2))
    return ConservedTriple(h0, h1, h2)


def fstats(u: PeriodicField) -> FStats:
    triple = conserved(u)
    return FStats(triple.h0, triple.h1, triple.h2, l2_norm_sq(u))


def _ordered_extrema(record: ExtremaRecord) -> Tuple[float, float]:
    """(xi, eta) with xi < eta <= xi + 1."""
    xi = record.argmax
    eta = record.argmin if record.argmin > xi else record.argmin + 1.0
    return xi, eta


def _root(values: np.ndarray, m: float) -> np.ndarray:
    # u - m can come out as -1e-17 at the argmin
    return TWELVE_THIRTEENTHS * np.sqrt(np.maximum(13.0 / 6.0 * (values - m), 0.0))


def g_field(u: PeriodicField, record: Optional[ExtremaRecord] = None) -> PeriodicField:
    """
    g = u_x + (12/13) sqrt((13/6)(u - m)) on (xi, eta] and
    g = u_x - (12/13) sqrt((13/6)(u - m)) on (eta, xi + 1), sampled on the grid.
    """
    record = record or extrema(u, Refinement.SPECTRAL)
    xi, eta = _ordered_extrema(record)
    nodes = u.grid.nodes
    unwrapped = np.where(nodes > xi, nodes, nodes + 1.0)
    sign = np.where(unwrapped <= eta, 1.0, -1.0)
    ux = derivative(u).values
    return PeriodicField(u.grid, ux + sign * _root(u.values, record.min_val))


def g_moments(u: PeriodicField, record: Optional[ExtremaRecord] = None) -> GMoments:
    """
    (1/2) int g^2 and (1/2) int u g^2 by adaptive quadrature of the
    trigonometric interpolant, split at xi and eta where g jumps.
    """
    record = record or extrema(u, Refinement.SPECTRAL)
    xi, eta = _ordered_extrema(record)
    u_at = interpolant(u)
    ux_at = interpolant(derivative(u))
    m = record.min_val

    def integrand(x: float, sign: float, weighted: bool) -> float:
        value = u_at(x)
        g = ux_at(x) + sign * float(_root(np.asarray(value), m))
        return g * g * value if weighted else g * g

    totals = []
    for weighted in (False, True):
        rising, _ = quad(integrand, xi, eta, args=(1.0, weighted), **_QUAD_OPTIONS)
        falling, _ = quad(integrand, eta, xi + 1.0, args=(-1.0, weighted), **_QUAD_OPTIONS)
        totals.append(0.5 * (rising + falling))
    return GMoments(*totals)


def g_identities(
    u: PeriodicField, record: Optional[ExtremaRecord] = None
) -> Tuple[Identity, Identity]:
    """
    The two g-moment identities:

        (1/2) int g^2   = H1 - mu^2/2 - 8 sqrt(2/39)(M-m)^{3/2} + (12/13)(mu - m)
        (1/2) int u g^2 = H2 - (H0 - 12/13) int u^2 - (12/13) m H0
                          - (8/5) sqrt(2/39)(M-m)^{3/2}(2m + 3M)
    """
    record = record or extrema(u, Refinement.SPECTRAL)
    moments = g_moments(u, record)
    s = fstats(u)
    M, m = record.max_val, record.min_val
    cubic = max(M - m, 0.0) ** 1.5
    square_rhs = (
        s.h1 - 0.5 * s.h0 ** 2 - G_CUBIC * cubic + TWELVE_THIRTEENTHS * (s.h0 - m)
    )
    weighted_rhs = (
        s.h2
        - (s.h0 - TWELVE_THIRTEENTHS) * s.l2sq
        - TWELVE_THIRTEENTHS * m * s.h0
        - G_CUBIC_WEIGHTED * cubic * (2.0 * m + 3.0 * M)
    )
    return (
        Identity(moments.half_g_sq, square_rhs),
        Identity(moments.half_u_g_sq, weighted_rhs),
    )


def g_square_identity(u: PeriodicField) -> Identity:
    return g_identities(u)[0]


def ug_square_identity(u: PeriodicField) -> Identity:
    return g_identities(u)[1]


def _check_domain(p: FPoint) -> None:
    if not (p.M >= p.m > 0.0):
        raise DomainError("F is defined on M >= m > 0", point=(p.M, p.m))


def _bracket(s: FStats, p: FPoint) -> float:
    return (
        s.h1
        - 0.5 * s.h0 ** 2
        - G_CUBIC * p.gap ** 1.5
        + TWELVE_THIRTEENTHS * (s.h0 - p.m)
    )


def f_eval(s: FStats, p: FPoint) -> float:
    """The Lyapunov function F_u(M, m)."""
    _check_domain(p)
    return (
        p.M * _bracket(s, p)
        + (s.h0 - TWELVE_THIRTEENTHS) * s.l2sq
        + TWELVE_THIRTEENTHS * p.m * s.h0
        + G_CUBIC_WEIGHTED * p.gap ** 1.5 * (2.0 * p.m + 3.0 * p.M)
        - s.h2
    )


def f_grad(s: FStats, p: FPoint) -> Tuple[float, float]:
    """(dF/dM, dF/dm)."""
    _check_domain(p)
    d_m = TWELVE_THIRTEENTHS * (s.h0 - p.M) + G_CUBIC * p.gap ** 1.5
    return _bracket(s, p), d_m


def f_hess(s: FStats, p: FPoint) -> np.ndarray:
    """
    Hessian of F in (M, m). It does not depend on s; at M = m the square
    root term is a one-sided derivative.
    """
    _check_domain(p)
    if p.gap == 0.0:
        logger.warning(f"Hessian of F at M = m = {p.M}: one-sided derivative of (M-m)^(1/2)")
    root = 1.5 * G_CUBIC * math.sqrt(p.gap)
    cross = -TWELVE_THIRTEENTHS + root
    return np.array([[-root, cross], [cross, -root]])


def f_perturbation(s_w: FStats, p: FPoint) -> float:
    """
    F_w(M, m) - F_phi(M, m) written through eps_i = H_i[w] - H_i[phi]:

        M [eps1 - H0[phi] eps0 - eps0^2/2 + (12/13) eps0] + eps0 int w^2
        + (12/13) m eps0 - eps2
    """
    _check_domain(p)
    h0_phi = float(PEAKON_MEAN)
    eps0 = s_w.h0 - h0_phi
    eps1 = s_w.h1 - float(PEAKON_ENERGY)
    eps2 = s_w.h2 - float(PEAKON_CUBIC)
    return (
        p.M * (eps1 - h0_phi * eps0 - 0.5 * eps0 ** 2 + TWELVE_THIRTEENTHS * eps0)
        + eps0 * s_w.l2sq
        + TWELVE_THIRTEENTHS * p.m * eps0
        - eps2
    )


def lyapunov_value(u: PeriodicField, record: Optional[ExtremaRecord] = None) -> float:
    """F_u(M_u, m_u); only defined for positive u."""
    record = record or extrema(u, Refinement.SPECTRAL)
    if record.min_val <= 0.0:
        raise DomainError(
            "F_u(M_u, m_u) needs a positive field",
            point=(record.max_val, record.min_val)
        )
    return f_eval(fstats(u), record.as_point())


def h1_expansion(u: PeriodicField, xi: float) -> Identity:
    """
    H1[u] - H1[phi] against (1/2)||u - phi(. - xi)||_mu^2
    + (12/13)(u(xi + 1/2) - M_phi).
    """
    lhs = conserved(u).h1 - float(PEAKON_ENERGY)
    rhs = 0.5 * mu_distance_sq(u, 1.0, xi) + TWELVE_THIRTEENTHS * (
        evaluate(u, xi + 0.5) - 1.0
    )
    return Identity(lhs, rhs)


def _max_abs(f: PeriodicField) -> float:
    record = extrema(f, Refinement.SPECTRAL)
    return max(abs(record.max_val), abs(record.min_val))


def max_mu_inequality(f: PeriodicField) -> Bound:
    """max |f| <= sqrt(13/12) ||f||_mu."""
    return Bound(_max_abs(f), MAX_MU_CONSTANT * math.sqrt(mu_norm_sq(f)))


def peakon_equality_ratio(n: int) -> float:
    """
    max/bound in max_mu_inequality for the projected peakon on n nodes.
    Equality holds for phi itself; the grid loses the tail of its mu-norm.
    """
    mu_tail, _ = spectral_tail(n)
    return math.sqrt(1.0 - 13.0 * mu_tail / 12.0)


def norm_sandwich(u: PeriodicField) -> Tuple[Bound, Bound]:
    """||u||_mu^2 <= ||u||_{H1}^2 <= 3 ||u||_mu^2."""
    mu_sq = mu_norm_sq(u)
    h1_sq = h1_norm_sq(u)
    return Bound(mu_sq, h1_sq), Bound(h1_sq, 3.0 * mu_sq)


def _slope_energy(f: PeriodicField) -> float:
    return float(np.mean(derivative(f).values ** 2))


def sharp_max_bound(f: PeriodicField, eps: float) -> Bound:
    """max f^2 <= ((eps+2)/24) int f_x^2 + ((eps+2)/eps) mu(f)^2."""
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    bound = (eps + 2.0) / 24.0 * _slope_energy(f) + (eps + 2.0) / eps * mean(f) ** 2
    return Bound(_max_abs(f) ** 2, bound)


def sobolev_max_bound(f: PeriodicField) -> Bound:
    """max |f|^2 <= (cosh(1/2) / (2 sinh(1/2))) ||f||_{H1}^2."""
    return Bound(_max_abs(f) ** 2, SOBOLEV_MAX_CONSTANT * h1_norm_sq(f))


def epsilon_norm_bound(u: PeriodicField, eps: float) -> Bound:
    """||u||_{H1}^2 <= ((eps+2)/eps) mu(u)^2 + ((eps+26)/24) int u_x^2."""
    if eps <= 0.0:
        raise ValueError(f"eps must be positive, got {eps}")
    bound = (eps + 2.0) / eps * mean(u) ** 2 + (eps + 26.0) / 24.0 * _slope_energy(u)
    return Bound(h1_norm_sq(u), bound)


def l2_energy_bound(u: PeriodicField) -> Bound:
    """int u^2 <= ||u||_{H1}^2 <= 6 H1[u]."""
    return Bound(l2_norm_sq(u), 6.0 * conserved(u).h1)
