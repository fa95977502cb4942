"""
Monte Carlo estimation of the expected harvest and the outage probabilities.

Trials are grouped into fixed blocks of :data:`BLOCK_SIZE`; block ``b`` of a
run seeded with ``master_seed`` draws from its own stream
``SeedSequence(master_seed, spawn_key=(b,))``.  The partition never depends
on the number of workers, so results are bit-identical however the blocks
are scheduled.

Two regimes are available for the outage metrics:

``general``
    The full model: harvest and SINR from every sampled transmitter.
``worst_case``
    Power outage is the event that no transmitter lies within
    ``min(R, gamma)`` of the sensor, whose probability is exactly the
    power-outage bound.  Transmission outage adds the event that the nearest
    transmitter alone exceeds the Markov threshold.
"""
from concurrent.futures import ThreadPoolExecutor
import csv
from dataclasses import dataclass
from enum import Enum
import math

import numpy as np

from . import bounds
from .errors import DomainError
from .point_process import build_spectrum, sample_radii
from .rf import ambient_unit_power, downlink_rate, harvest_from_access_point

__all__ = [
    "BLOCK_SIZE",
    "CSV_HEADER",
    "DEFAULT_SEED",
    "DEFAULT_TRIALS",
    "Estimate",
    "Metric",
    "Regime",
    "SweepRow",
    "run_trials",
    "sweep",
    "write_sweep_csv",
]

BLOCK_SIZE = 2048
DEFAULT_TRIALS = 100_000
DEFAULT_SEED = 20150601

CSV_HEADER = [
    "axis", "axis_value", "metric", "regime", "mean", "std_error", "trials",
    "bound_value", "bound_raw", "case_label", "seed",
]

AXIS_FIELDS = {"rho": "rho", "d_A": "d_a", "eta": "eta", "alpha": "alpha"}


class Metric(str, Enum):
    EXPECTED_HARVEST = "expected_harvest"
    POWER_OUTAGE = "power_outage"
    TRANSMISSION_OUTAGE = "transmission_outage"


class Regime(str, Enum):
    GENERAL = "general"
    WORST_CASE = "worst_case"


@dataclass(frozen=True)
class Estimate:
    mean: float
    std_error: float
    trials: int
    metric: Metric

    def interval(self, k=3.0):
        return self.mean - k * self.std_error, self.mean + k * self.std_error


def _block_radii(params, n, rng):
    if params.rho == 0:
        return np.empty(0), np.empty(0, dtype=int)
    spectrum = build_spectrum(params.rho, params.radius)
    return sample_radii(spectrum, params.alpha, n, rng)


def _general(params, metric, radii, owner, n):
    ambient = np.bincount(owner, weights=ambient_unit_power(radii, params), minlength=n)
    harvest = harvest_from_access_point(params) + params.eta * params.beta * ambient
    if metric is Metric.EXPECTED_HARVEST:
        return harvest
    unpowered = harvest < params.p_c
    if metric is Metric.POWER_OUTAGE:
        return unpowered.astype(float)
    rate = downlink_rate(harvest, (1.0 - params.eta) * ambient, params)
    return (unpowered | (rate < params.rate_min)).astype(float)


def _worst_case(params, metric, radii, owner, n):
    nearest = np.full(n, np.inf)
    np.minimum.at(nearest, owner, radii)
    gap = params.p_c - harvest_from_access_point(params)
    if gap > 0:
        void = nearest >= min(params.radius, bounds.gamma_threshold(params))
    else:
        void = np.zeros(n, dtype=bool)
    if metric is Metric.POWER_OUTAGE:
        return void.astype(float)
    T = bounds.transmission_threshold_T(params)
    if math.isinf(T):
        return void.astype(float)
    eb = params.eta * params.beta
    threshold = max(T, gap / eb if eb > 0 else math.inf)
    strongest = np.where(np.isfinite(nearest), ambient_unit_power(nearest, params), 0.0)
    return (void | (strongest > threshold)).astype(float)


def _block_values(params, metric, regime, master_seed, block, n):
    rng = np.random.default_rng(np.random.SeedSequence(master_seed, spawn_key=(block,)))
    radii, owner = _block_radii(params, n, rng)
    if regime is Regime.GENERAL:
        return _general(params, metric, radii, owner, n)
    return _worst_case(params, metric, radii, owner, n)


def run_trials(params, metric, regime=Regime.GENERAL, trials=DEFAULT_TRIALS,
               master_seed=DEFAULT_SEED, workers=1):
    """Monte Carlo estimate of ``metric`` under ``params``.

    Parameters
    ----------
    params : SystemParams
    metric : Metric or str
    regime : Regime or str
        ``worst_case`` is only defined for the outage metrics.
    trials : int
        Number of independent realisations.
    master_seed : int
        Root of every random stream; equal seeds give bit-identical results.
    workers : int
        Threads used to evaluate blocks.  Has no effect on the result.

    Returns
    -------
    Estimate
    """
    metric = Metric(metric)
    regime = Regime(regime)
    if trials < 1:
        raise ValueError(f"trials must be positive, got {trials}")
    if regime is Regime.WORST_CASE and metric is Metric.EXPECTED_HARVEST:
        raise ValueError("the worst-case regime applies to outage metrics only")
    if metric is Metric.TRANSMISSION_OUTAGE:
        # fail before sampling on degenerate rate configurations
        bounds.transmission_threshold_T(params)

    sizes = [BLOCK_SIZE] * (trials // BLOCK_SIZE)
    if trials % BLOCK_SIZE:
        sizes.append(trials % BLOCK_SIZE)

    def job(b):
        return _block_values(params, metric, regime, master_seed, b, sizes[b])

    if workers > 1 and len(sizes) > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(job, range(len(sizes))))
    else:
        parts = [job(b) for b in range(len(sizes))]
    values = np.concatenate(parts)

    mean = math.fsum(values) / trials
    if trials > 1:
        var = math.fsum((values - mean) ** 2) / (trials - 1)
        se = math.sqrt(var / trials)
    else:
        se = 0.0
    return Estimate(mean, se, trials, metric)


@dataclass(frozen=True)
class SweepRow:
    axis: str
    axis_value: float
    estimate: Estimate
    regime: Regime
    bound_value: float
    bound_raw: float
    case_label: str
    seed: int


def derive_seed(master_seed, row):
    """Seed of sweep row ``row``, derived from ``master_seed``."""
    state = np.random.SeedSequence(master_seed, spawn_key=(row,)).generate_state(2, np.uint32)
    return int(state[0]) << 32 | int(state[1])


def analytic_value(params, metric):
    """``(value, raw, case_label)`` of the closed form matching ``metric``."""
    metric = Metric(metric)
    if metric is Metric.EXPECTED_HARVEST:
        v = bounds.expected_harvest(params)
        return v, v, "closed_form"
    if metric is Metric.POWER_OUTAGE:
        b = bounds.power_outage_bound(params)
    elif params.xi != 1:
        return math.nan, math.nan, "unavailable"
    else:
        b = bounds.transmission_outage_bound(params)
    return b.value, b.raw_value, b.case_label.value


def sweep(params_base, axis, grid, metric, regime=Regime.GENERAL, trials=DEFAULT_TRIALS,
          master_seed=DEFAULT_SEED, workers=1):
    """Evaluate estimate and closed form along one parameter axis.

    ``axis`` is one of ``rho``, ``d_A``, ``eta``, ``alpha``; ``grid`` must be
    non-empty and strictly increasing.
    """
    if axis not in AXIS_FIELDS:
        raise ValueError(f"unknown sweep axis {axis!r}; expected one of {sorted(AXIS_FIELDS)}")
    grid = [float(g) for g in grid]
    if not grid:
        raise ValueError("sweep grid is empty")
    for i in range(1, len(grid)):
        if not grid[i] > grid[i - 1]:
            raise ValueError(f"sweep grid not strictly increasing at row {i} ({grid[i]})")
    regime = Regime(regime)
    rows = []
    for i, value in enumerate(grid):
        try:
            params = params_base.replace(**{AXIS_FIELDS[axis]: value})
        except DomainError as exc:
            raise DomainError(f"sweep row {i} ({axis}={value}): {exc}", exc.parameter) from exc
        seed = derive_seed(master_seed, i)
        est = run_trials(params, metric, regime, trials, seed, workers)
        v, raw, label = analytic_value(params, metric)
        rows.append(SweepRow(axis, value, est, regime, v, raw, label, seed))
    return rows


def write_sweep_csv(rows, fh):
    """Write rows in the fixed CSV schema :data:`CSV_HEADER`."""
    w = csv.writer(fh, lineterminator="\n")
    w.writerow(CSV_HEADER)
    for r in rows:
        e = r.estimate
        w.writerow([
            r.axis, repr(r.axis_value) if isinstance(r.axis_value, float) else r.axis_value,
            e.metric.value, r.regime.value, repr(e.mean), repr(e.std_error), e.trials,
            repr(r.bound_value), repr(r.bound_raw), r.case_label, r.seed,
        ])
