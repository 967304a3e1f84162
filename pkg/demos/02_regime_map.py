"""Regime map of the (p, q) plane at fixed dimension.

classify() attaches the criticality class and the applicability flags of
the nonexistence/existence statements to each triple; grid_classify sweeps
a deterministic grid and the CLI writes it as plot-ready CSV.
"""

from collections import Counter

from lelab import SystemParams, classify, grid_classify, trace_hyperbola, trace_jl_curve
from lelab.cli import run

for p, q, d in [(3, 3, 10), (3, 3, 12), (3, 3, 13), (5, 5, 3)]:
    rep = classify(SystemParams(p, q, d))
    print(f"({p},{q},{d}): {rep.criticality.value:20s} margin={rep.jl_margin:+10.3f} "
          f"below-jl={rep.thm_below_jl_applies} stable-radial={rep.thm_stable_radial_exists}")

print()
print("grid at d = 13, 40 x 40 over [1.1, 6]^2 (p >= q kept):")
reports = grid_classify(13.0, (1.1, 6.0), (1.1, 6.0), 40)
counts = Counter(
    ("stable-radial" if rep.thm_stable_radial_exists
     else "below-jl" if rep.thm_below_jl_applies
     else "other")
    for rep in reports
)
print(f"  {len(reports)} admissible points: {dict(counts)}")

# the two critical curves at d = 13
hyp = trace_hyperbola(13.0, 1.05, 6.0, 12)
jl = trace_jl_curve(13.0, 2.5, 6.0, 12)
print()
print("critical hyperbola q(p) at d = 13:")
for pt in hyp.ok_points[:6]:
    print(f"  p={pt.p:.3f} q={pt.q:.5f}")
print("joseph-lundgren curve q*(p) at d = 13:")
for pt in jl.ok_points[:6]:
    print(f"  p={pt.p:.3f} q*={pt.q:.5f}")

# same data through the CLI, byte-stable across runs
print()
print("writing regime_map_d13.csv via the CLI")
rc = run(["grid", "-d", "13", "--p-min", "1.1", "--p-max", "6", "--q-min", "1.1",
          "--q-max", "6", "-n", "40", "-o", "regime_map_d13.csv", "--force"])
print(f"exit code {rc}; header is '# lelab-v1'")
