"""
Physical layer of the power-splitting SWIPT receiver.

Free-space (Friis) propagation from the access point and from every ambient
transmitter, the power split ``eta`` / ``1 - eta`` between the energy
harvester and the information receiver, and the resulting downlink rate.
All quantities are SI: Watts, metres, Hz, bits/s.
"""
from dataclasses import dataclass, fields, replace
import math

import numpy as np

from .errors import DomainError
from .point_process import check_alpha

__all__ = [
    "SystemParams",
    "TrialOutcome",
    "aggregate_harvest",
    "ambient_unit_power",
    "downlink_rate",
    "evaluate_pattern",
    "harvest_from_access_point",
    "interference",
]


def dbm_to_watts(dbm):
    return 10.0 ** ((dbm - 30.0) / 10.0)


@dataclass(frozen=True)
class SystemParams:
    """Constants of the SWIPT link.

    Defaults follow the reference setting (unit gains of 1.5, 30% RF-to-DC
    efficiency, 1 W transmitters, 10 kHz, -90 dBm noise, 1800 MHz ambient
    carrier, -18 dBm circuit consumption).  ``d_a`` is the full
    access-point distance, already including the minimum approach ``epsilon``.

    ``friis_ha`` replaces the configured downlink gain ``h_a`` by the Friis
    path gain ``G_A G_H lambda_A^2 / (4 pi d_A)^2`` so rate and harvest share
    one propagation model.
    """

    eta: float = 0.5
    beta: float = 0.3
    p_a: float = 1.0
    p_s: float = 1.0
    g_a: float = 1.5
    g_s: float = 1.5
    g_h: float = 1.5
    wavelength_a: float = 0.167
    wavelength: float = 0.167
    d_a: float = 1.0
    h_a: float = 1.0
    friis_ha: bool = False
    epsilon: float = 0.001
    radius: float = 5.0
    rho: float = 0.1
    alpha: float = 0.0
    sigma2: float = 1e-12
    sigma_sp2: float = 1e-12
    bandwidth: float = 1e4
    rate_min: float = 0.0
    p_c: float = dbm_to_watts(-18.0)
    xi: int = 1

    def __post_init__(self):
        errors = self.validation_errors()
        if errors:
            raise DomainError("; ".join(f"{n}: {m}" for n, m in errors), errors[0][0])

    def validation_errors(self):
        """List of ``(field, message)`` for every violated invariant."""
        errs = []
        for name in ("eta", "beta"):
            v = getattr(self, name)
            if not 0.0 <= v <= 1.0:
                errs.append((name, f"must lie in [0, 1], got {v}"))
        for name in ("p_a", "p_s", "g_a", "g_s", "g_h", "wavelength_a", "wavelength",
                     "d_a", "h_a", "epsilon", "radius", "bandwidth", "p_c"):
            v = getattr(self, name)
            if not (v > 0 and math.isfinite(v)):
                errs.append((name, f"must be positive and finite, got {v}"))
        for name in ("rho", "sigma2", "sigma_sp2", "rate_min"):
            v = getattr(self, name)
            if not (v >= 0 and math.isfinite(v)):
                errs.append((name, f"must be non-negative and finite, got {v}"))
        if self.xi not in (0, 1):
            errs.append(("xi", f"must be 0 or 1, got {self.xi}"))
        try:
            check_alpha(self.alpha)
        except DomainError as exc:
            errs.append(("alpha", str(exc)))
        return errs

    def replace(self, **changes):
        return replace(self, **changes)

    @classmethod
    def field_names(cls):
        return [f.name for f in fields(cls)]

    @property
    def downlink_gain(self):
        if self.friis_ha:
            return self.g_a * self.g_h * self.wavelength_a**2 / (4 * math.pi * self.d_a) ** 2
        return self.h_a

    @property
    def ambient_constant(self):
        """``P_S G_S G_H lambda^2 / (4 pi)^2``: received power times distance squared."""
        return self.p_s * self.g_s * self.g_h * self.wavelength**2 / (4 * math.pi) ** 2


@dataclass(frozen=True)
class TrialOutcome:
    harvest_total: float
    harvest_ap: float
    interference: float
    rate: float
    powered: bool


def harvest_from_access_point(params):
    """Power harvested from the access point alone (Watts)."""
    p = params
    return p.eta * p.beta * p.p_a * p.g_a * p.g_h * p.wavelength_a**2 / (4 * math.pi * p.d_a) ** 2


def ambient_unit_power(radii, params):
    """Received ambient power ``P_S G_S G_H lambda^2 / (4 pi (eps + r))^2`` per transmitter,
    before any power split."""
    r = np.asarray(radii, dtype=float)
    return params.ambient_constant / (params.epsilon + r) ** 2


def _radii(pattern):
    return pattern.radii if hasattr(pattern, "radii") else np.asarray(pattern, dtype=float)


def aggregate_harvest(pattern, params):
    """Total harvested power: access point plus every ambient transmitter.

    ``pattern`` may be a :class:`~ambient_swipt.point_process.PointPattern`
    or an array of distances to the sensor.
    """
    ambient = math.fsum(ambient_unit_power(_radii(pattern), params))
    return harvest_from_access_point(params) + params.eta * params.beta * ambient


def interference(pattern, params):
    """Ambient power reaching the information receiver."""
    return (1.0 - params.eta) * math.fsum(ambient_unit_power(_radii(pattern), params))


def downlink_rate(harvest_total, interference, params):
    """Achievable downlink rate in bits/s; zero when the sensor is unpowered.

    Works elementwise on arrays.
    """
    p = params
    denom = p.xi * np.asarray(interference, dtype=float) + (1 - p.eta) * p.sigma2 + p.sigma_sp2
    if np.any(denom <= 0):
        raise DomainError(
            "SINR denominator vanishes (eta = 1 with no processing noise and no interference)",
            "sigma_sp2",
        )
    snr = p.downlink_gain * (1 - p.eta) * p.p_a / denom
    rate = np.where(np.asarray(harvest_total) >= p.p_c, p.bandwidth * np.log2(1 + snr), 0.0)
    return float(rate) if rate.ndim == 0 else rate


def evaluate_pattern(pattern, params):
    """Harvest, interference and rate for one realisation."""
    h_ap = harvest_from_access_point(params)
    total = aggregate_harvest(pattern, params)
    intf = interference(pattern, params)
    rate = downlink_rate(total, intf, params)
    return TrialOutcome(total, h_ap, intf, rate, total >= params.p_c)
