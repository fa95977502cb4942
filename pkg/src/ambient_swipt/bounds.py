"""
Closed-form expected harvest and outage upper bounds.

The power-outage bound is the void probability of the ball
``B(0, min(R, gamma))`` under the alpha-DPP, ``gamma`` being the distance at
which a single ambient transmitter alone covers the circuit consumption.
The transmission-outage bound adds a Markov term built from the expected
ambient power.
"""
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from .errors import DomainError
from .point_process import EIGEN_TOL, build_spectrum, check_alpha
from .rf import harvest_from_access_point

__all__ = [
    "BoundCase",
    "BoundResult",
    "campbell_factor",
    "expected_ambient_power",
    "expected_harvest",
    "expected_harvest_approx",
    "gamma_threshold",
    "markov_term",
    "power_outage_bound",
    "transmission_outage_bound",
    "transmission_threshold_T",
    "void_probability",
]

_TRACE_RESIDUAL_TOL = 1e-9


class BoundCase(str, Enum):
    ZERO_BY_THEOREM = "zero_by_theorem"
    PRODUCT_BOUND = "product_bound"
    MARKOV_ONLY = "markov_only"
    PRODUCT_PLUS_MARKOV = "product_plus_markov"
    TRIVIAL_ONE = "trivial_one"


@dataclass(frozen=True)
class BoundResult:
    """Upper bound on an outage probability.

    ``raw_value`` is the unclamped right-hand side, which may exceed 1;
    ``value`` is ``min(raw_value, 1)``.
    """

    raw_value: float
    case_label: BoundCase

    @property
    def value(self):
        return min(self.raw_value, 1.0)


def campbell_factor(radius, epsilon):
    """``int_0^R r / (eps + r)^2 dr = eps/(R + eps) + ln(R + eps) - 1 - ln(eps)``."""
    return epsilon / (radius + epsilon) - 1.0 + math.log1p(radius / epsilon)


def expected_ambient_power(params):
    """Mean total ambient power at the antenna, before the power split.

    Depends on the process only through its intensity, hence not on alpha.
    """
    return params.ambient_constant * 2 * math.pi * params.rho * campbell_factor(
        params.radius, params.epsilon
    )


def expected_harvest(params):
    """Mean harvested power (Watts) over the ambient point process."""
    return harvest_from_access_point(params) + params.eta * params.beta * expected_ambient_power(params)


def expected_harvest_approx(params):
    """Small-``epsilon`` approximation ``rho eta beta P_S G_S G_H lambda^2 ln(R/eps) / (8 pi)``
    of the ambient part of :func:`expected_harvest`."""
    p = params
    return (
        p.rho * p.eta * p.beta * p.p_s * p.g_s * p.g_h * p.wavelength**2
        / (8 * math.pi) * math.log(p.radius / p.epsilon)
    )


def gamma_threshold(params):
    """Distance within which one ambient transmitter alone powers the sensor.

    Returns ``math.inf`` when the access point alone already covers the
    circuit consumption (``P_C <= P_H^A``); power outage is then impossible.
    """
    gap = params.p_c - harvest_from_access_point(params)
    if gap <= 0:
        return math.inf
    p = params
    return p.wavelength / (4 * math.pi) * math.sqrt(p.eta * p.beta * p.p_s * p.g_s * p.g_h / gap)


def void_probability(rho, radius, alpha):
    """Probability that the alpha-DPP places no point in ``B(0, radius)``.

    ``prod_n (1 + alpha lambda_n)^(-1/alpha)`` over the Ginibre eigenvalues on
    the ball, evaluated in log space; ``exp(-pi rho r^2)`` at ``alpha = 0``.
    """
    alpha = check_alpha(alpha)
    if rho == 0 or radius == 0:
        return 1.0
    if alpha == 0.0:
        return math.exp(-math.pi * rho * radius**2)
    spec = build_spectrum(rho, radius, tol=EIGEN_TOL)
    residual = spec.scaled_area - spec.trace
    if residual > _TRACE_RESIDUAL_TOL * max(1.0, spec.scaled_area):
        raise ArithmeticError(f"eigenvalue truncation left trace residual {residual:.3g}")
    with np.errstate(divide="ignore"):
        log_terms = np.log1p(alpha * spec.eigenvalues)
    return math.exp(-math.fsum(log_terms) / alpha)


def power_outage_bound(params):
    """Upper bound on ``P(P_H < P_C)``."""
    gamma = gamma_threshold(params)
    if math.isinf(gamma):
        return BoundResult(0.0, BoundCase.ZERO_BY_THEOREM)
    r_eff = min(params.radius, gamma)
    return BoundResult(void_probability(params.rho, r_eff, params.alpha), BoundCase.PRODUCT_BOUND)


def transmission_threshold_T(params):
    """Interference headroom ``h_A P_A / (2^(m/W) - 1) - sigma^2 - sigma_SP^2 / (1 - eta)``.

    ``math.inf`` when there is no rate requirement (``m = 0``).
    """
    p = params
    if p.rate_min == 0:
        return math.inf
    if p.eta >= 1:
        raise DomainError("eta = 1 leaves no power for decoding with a positive rate requirement", "eta")
    return (
        p.downlink_gain * p.p_a / math.expm1(p.rate_min / p.bandwidth * math.log(2))
        - p.sigma2
        - p.sigma_sp2 / (1 - p.eta)
    )


def markov_term(params, threshold):
    """Markov bound ``E[sum f(x_k)] / threshold`` on the ambient power exceeding ``threshold``."""
    if math.isinf(threshold):
        return 0.0
    return expected_ambient_power(params) / threshold


def transmission_outage_bound(params):
    """Upper bound on ``P(C < m)`` for in-band transmission (``xi = 1``)."""
    if params.xi != 1:
        raise DomainError("the transmission outage bound is only available in-band (xi = 1)", "xi")
    T = transmission_threshold_T(params)
    if math.isinf(T):
        return power_outage_bound(params)
    gap = params.p_c - harvest_from_access_point(params)
    if max(T, gap) <= 0:
        return BoundResult(1.0, BoundCase.TRIVIAL_ONE)
    if gap > 0:
        eb = params.eta * params.beta
        threshold = max(T, gap / eb if eb > 0 else math.inf)
        raw = power_outage_bound(params).raw_value + markov_term(params, threshold)
        return BoundResult(raw, BoundCase.PRODUCT_PLUS_MARKOV)
    return BoundResult(markov_term(params, T), BoundCase.MARKOV_ONLY)
