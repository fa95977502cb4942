"""Draw a few patterns and compare spreads of the point count.

The determinantal process is more regular than the Poisson one: same mean
count, smaller variance.
"""
import numpy as np

from ambient_swipt import build_spectrum, sample_alpha_dpp

rng = np.random.default_rng(1)
spec = build_spectrum(0.1, 5.0)

for alpha in (0.0, -0.5, -1.0):
    counts = [len(sample_alpha_dpp(spec, alpha, rng)) for _ in range(2000)]
    print(f"alpha={alpha:5.2f}: mean count {np.mean(counts):.3f}, variance {np.var(counts):.3f}")

pat = sample_alpha_dpp(spec, -1.0, rng)
print("\none Ginibre pattern (x, y):")
for x, y in pat.points:
    print(f"  {x:7.3f} {y:7.3f}")
