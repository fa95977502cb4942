"""Ginibre eigenvalues on a disk, and what they say about void probabilities."""
import math

from ambient_swipt import build_spectrum, void_probability

rho, radius = 0.1, 5.0
spec = build_spectrum(rho, radius)
print(f"{len(spec.eigenvalues)} eigenvalues above 1e-12 for pi*rho*R^2 = {spec.scaled_area:.4f}")
print("first few:", ", ".join(f"{v:.7f}" for v in spec.eigenvalues[:6]))
print(f"trace {spec.trace:.12f}  (should equal pi*rho*R^2)")

# Repulsion makes empty regions rarer.  The PPP sits at the top.
for r in (1.0, 2.0, 3.0):
    row = [void_probability(rho, r, a) for a in (0.0, -0.5, -1.0)]
    print(f"P(no point within {r} m): PPP {row[0]:.4f}  alpha=-1/2 {row[1]:.4f}  DPP {row[2]:.4f}")

print("exp(-pi rho r^2) at r=2:", math.exp(-math.pi * rho * 4))
