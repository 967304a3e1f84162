"""Stability of the singular solution, two independent ways.

The interaction weight of the singular pair is sqrt(pq*lambda*mu)/r^2, so
its stability against the Hardy-corrected quadratic form reduces to
H >= sqrt(pq*lambda*mu), i.e. the sign of the margin H^2 - pq*lambda*mu.
Both the radial Rayleigh quotient over near-optimal Hardy test functions
and the spherical mode decomposition of the constant angular profile must
reproduce that sign, flipping at d = 8 + 2*sqrt(6) for p = q = 3.
"""

import math

from lelab import (
    SystemParams,
    derive_constants,
    jl_margin,
    rayleigh_stability_margin,
    spherical_mode_margins,
)

print(f"{'d':>6} {'H':>8} {'sqrt(pq l m)':>13} {'inf Q':>9} {'rayleigh':>9} "
      f"{'mode-0':>8} {'margin sign':>12}")
for d in (11.0, 12.0, 12.5, 13.0, 14.0):
    params = SystemParams(3, 3, d)
    c = derive_constants(params)
    w = math.sqrt(9.0 * c.lam * c.mu)
    ray = rayleigh_stability_margin(params, 30)
    sph = spherical_mode_margins(params, 6)
    sign = "+" if jl_margin(params) >= 0 else "-"
    print(f"{d:6.1f} {c.H:8.3f} {w:13.3f} {ray.lhs:9.4f} {ray.lhs - ray.rhs:+9.4f} "
          f"{sph.lhs:+8.4f} {sign:>12}")

print(f"\nthe sign flips at d = 8 + 2*sqrt(6) = {8 + 2 * math.sqrt(6):.6f}")

# the quotient family converges to H from above as the cutoff widens
params = SystemParams(3, 3, 13)
print("\nquotient against cutoff count (target H = 30.25):")
for n in (2, 5, 10, 20, 40):
    rep = rayleigh_stability_margin(params, n)
    print(f"  n={n:3d}: inf Q = {rep.lhs:.5f}")

# per-mode margins: the sphere Laplacian only pushes modes upward
print("\nspherical margins at (3, 3, 13), modes 0..4:")
c = derive_constants(params)
w = math.sqrt(9.0 * c.lam * c.mu)
for l in range(5):
    print(f"  l={l}: {l * (l + 11.0) + c.H - w:+.4f}")
