"""Slow decay, blow-down limits, and moment growth above the threshold.

At (3, 3, 13) the parameters sit above the Joseph-Lundgren curve: the
symmetric trajectory with v(0) = 1 stays positive forever, decays at the
slow rate r^-alpha, and its blow-down rescalings converge to the singular
solution sqrt(10)/r.  Moment integrals over balls grow like R^(d - s*alpha).
"""

import numpy as np

from lelab import (
    PohozaevWeights,
    SystemParams,
    blow_down,
    check_energy_growth,
    check_pohozaev,
    derive_constants,
    fit_decay,
    integrate,
)

params = SystemParams(3, 3, 13)
c = derive_constants(params)
sol = integrate(params, 1.0, 1000.0, rel_tol=1e-11)
print(f"trajectory status: {sol.status.value}, {len(sol.r)} steps to r = 1000")

fit_u, _ = fit_decay(sol, 100.0, 1000.0)
print(f"decay exponent on [100, 1000]: {fit_u.exponent:.5f} "
      f"({fit_u.classification.value}); alpha = {c.alpha}")

# blow-down by R = 100 lands within a few percent of the singular profile
bd = blow_down(sol, 100.0, r_lo=0.5, r_hi=2.0)
rr = np.geomspace(0.5, 2.0, 7)
u = bd.evaluate(rr)[0]
singular = c.a_coef * rr**-c.alpha
print("\nblow-down at R = 100 against the singular amplitude sqrt(10):")
for r, a, b in zip(rr, u, singular):
    print(f"  r={r:6.3f}  rescaled={a:8.5f}  singular={b:8.5f}  ratio={a / b:.4f}")

# moment growth: d - q*alpha = 10 at these parameters
rep = check_energy_growth(sol, 3.0, np.geomspace(10.0, 1000.0, 9))
print(f"\nmoment growth slope of u^3 over B_R: {rep.lhs:.4f} "
      f"(target {rep.rhs}, passed={rep.passed})")

# the ball identity holds for every admissible weight split
print("\nball identity residuals for three splits a1 + a2 = 11:")
for a1 in (0.0, 2.75, 5.5):
    rep = check_pohozaev(sol, 2.0, PohozaevWeights.from_a1(params, a1))
    print(f"  a1={a1:5.2f}: residual {rep.residual:.2e} (tolerance {rep.tolerance})")
