"""RF energy harvesting and outage analysis of a power-splitting SWIPT sensor
surrounded by ambient transmitters forming a Ginibre alpha-DPP."""
from .bounds import (
    BoundCase,
    BoundResult,
    expected_harvest,
    expected_harvest_approx,
    gamma_threshold,
    power_outage_bound,
    transmission_outage_bound,
    transmission_threshold_T,
    void_probability,
)
from .errors import DomainError, SamplingError
from .montecarlo import Estimate, Metric, Regime, run_trials, sweep
from .point_process import (
    GinibreSpectrum,
    PointPattern,
    build_spectrum,
    sample_alpha_dpp,
    sample_dpp,
    sample_ppp,
    sample_radii,
)
from .rf import (
    SystemParams,
    TrialOutcome,
    aggregate_harvest,
    downlink_rate,
    harvest_from_access_point,
    interference,
)
from .special import log_factorial, regularized_lower_gamma

__version__ = "0.1.0"
