"""
How the weights move as the ball grows
======================================

For a five-symbol dyadic source the smallest probabilities are raised and the
largest lowered as alpha increases. Symbols join the bottom or the top group
at breakpoints; between breakpoints every weight is linear in alpha.
"""

import numpy as np

from tvcode import BallSpec, build_schedule, compute_weights, validate_nominal
from tvcode.merge import trajectory

mu = validate_nominal([16 / 31, 8 / 31, 4 / 31, 2 / 31, 1 / 31])
schedule = build_schedule(mu)

print("merge events")
for alpha, kind, (top, bottom) in zip(schedule.alphas, schedule.kinds, schedule.group_sizes):
    print(f"  alpha = {alpha:.5f} ({alpha * 31:.0f}/31)  {kind:6s} group grows -> top {top}, bottom {bottom}")
print(f"  alpha_max = {schedule.alpha_max:.5f} ({schedule.alpha_max * 155:.0f}/155), all weights 1/5")

# A text rendering of the piecewise-linear trajectories.
print()
print("alpha    " + "  ".join(f"w{i}     " for i in range(mu.size)) + " breakpoint")
for alpha, weights, is_bp in trajectory(mu, steps=8):
    cells = "  ".join(f"{w:.5f}" for w in weights)
    print(f"{alpha:.4f}   {cells}  {'*' if is_bp else ''}")

# Between two breakpoints the weights are affine in alpha: midpoints agree.
rows = trajectory(mu, steps=0)
for (a0, w0, _), (a1, w1, _) in zip(rows, rows[1:]):
    wm = compute_weights(mu, BallSpec.from_alpha(0.5 * (a0 + a1))).weights
    assert np.allclose(wm, 0.5 * (w0 + w1), atol=1e-12)
print("\nweights are linear between consecutive breakpoints")
