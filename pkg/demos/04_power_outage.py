"""Power outage: worst-case simulation, full simulation and the bound."""
from ambient_swipt import Metric, Regime, SystemParams, power_outage_bound, run_trials

for alpha in (0.0, -0.5, -1.0):
    print(f"\nalpha = {alpha}")
    for rho in (0.05, 0.1, 0.2):
        p = SystemParams(alpha=alpha, eta=0.5, rho=rho, d_a=10.0)
        b = power_outage_bound(p)
        worst = run_trials(p, Metric.POWER_OUTAGE, Regime.WORST_CASE, 50_000)
        full = run_trials(p, Metric.POWER_OUTAGE, Regime.GENERAL, 50_000)
        print(f"  rho={rho:4.2f}  bound {b.value:.4f}  worst-case {worst.mean:.4f}  general {full.mean:.4f}")
