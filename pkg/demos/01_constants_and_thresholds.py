"""Closed-form constants and the two dimension thresholds.

Every quantity of the Lane-Emden system -Delta u = v^p, -Delta v = u^q is
an explicit function of (p, q, d): the decay exponents of the singular
solution (a r^-alpha, b r^-beta), the Hardy constant H, and the quartic
polynomials whose largest roots mark the nonexistence thresholds in d.
"""

import math

from lelab import (
    QuarticKind,
    SystemParams,
    derive_constants,
    jl_margin,
    jl_threshold_dimension,
    largest_root,
    moser_constants,
)

print("constants for a few triples")
print(f"{'p':>5} {'q':>5} {'d':>5} {'alpha':>8} {'beta':>8} {'H':>9} "
      f"{'lambda':>9} {'mu':>9} {'a':>9} {'b':>9}")
for p, q, d in [(3, 3, 13), (5, 1, 12), (3, 2, 13), (5, 5, 3)]:
    c = derive_constants(SystemParams(p, q, d))
    print(f"{p:5} {q:5} {d:5} {c.alpha:8.4f} {c.beta:8.4f} {c.H:9.4f} "
          f"{c.lam:9.4f} {c.mu:9.4f} {c.a_coef:9.4f} {c.b_coef:9.4f}")

# The margin H^2 - pq*lambda*mu decides stability of the singular solution.
# Its zero in d is the Joseph-Lundgren threshold; for p = q = 3 the closed
# form is d* = 8 + 2*sqrt(6).
print()
d_star = jl_threshold_dimension(3.0, 3.0)
print(f"threshold dimension at p = q = 3: {d_star:.12f}")
print(f"closed form 8 + 2*sqrt(6):        {8 + 2 * math.sqrt(6):.12f}")
for d in (11, 12, 13, 14):
    print(f"  margin at d={d}: {jl_margin(SystemParams(3, 3, d)):+.4f}")

# The same threshold comes from the largest root x0 of the quartic
# (x^2 - gamma^2/4)^2 - pq*alpha*beta*(4x^2 - 2(alpha+beta)x + alpha*beta)
# through d* = 2 + 2*x0.
print()
params = SystemParams(3, 3, 13)
x0_plain = largest_root(params, QuarticKind.PLAIN_H)
x0_jl = largest_root(params, QuarticKind.JOSEPH_LUNDGREN)
print(f"largest quartic roots at (3,3): plain={x0_plain:.10f} jl={x0_jl:.10f}")
print(f"2 + 2*x0 = {2 + 2 * x0_jl:.10f}  (matches the bisected threshold)")

# Moser-type gain factors: the energy iteration closes when A*B > 1.
print()
for a in (2.0, 2.5, 4.0):
    m = moser_constants(params, a)
    print(f"a={a}: b={m.b}, A={m.A:.4f}, B={m.B:.4f}, AB>1: {m.ab_exceeds_one}")
