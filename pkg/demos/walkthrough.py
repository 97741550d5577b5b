"""
Designing a code that tolerates a misspecified source
=====================================================

A four-symbol source is known only approximately: the true distribution may
sit anywhere within total-variation distance R of the nominal one. This
script builds the code that minimizes the worst-case average length and
compares it with the ordinary Shannon code for the nominal source.
"""

import numpy as np

from tvcode import BallSpec, design, maximize_over_ball, validate_nominal, worst_case_payoff

mu = validate_nominal([8 / 15, 4 / 15, 2 / 15, 1 / 15])
spec = BallSpec(radius=2 / 15)
print("nominal source      ", np.round(mu.probs, 4))
print("ball radius R       ", round(spec.radius, 4), " (alpha = R/2 =", round(spec.alpha, 4), ")")

# The robust design moves alpha of mass from the most likely symbol to the
# least likely ones, then assigns lengths -log2 of the resulting weights.
d = design(mu, spec)
print("robust weights      ", np.round(d.weights.weights, 4), "groups", list(d.weights.groups()))
print("real lengths        ", np.round(d.real_lengths.lengths, 4))
print("integer lengths     ", d.integer_lengths.lengths.astype(int))

# Shannon lengths for the nominal source are optimal only if the model is exact.
shannon = -np.log2(mu.probs)
print("Shannon lengths     ", np.round(shannon, 4))

# The adversary shifts alpha of mass from the shortest codeword to the longest.
for name, lengths in (("robust", d.real_lengths.lengths), ("Shannon", shannon)):
    worst = maximize_over_ball(lengths, mu, spec)
    print(
        f"{name:8s} worst case {worst.payoff:.5f} bits "
        f"(closed form {worst_case_payoff(lengths, mu, spec):.5f}), adversary picks {np.round(worst.nu_star, 4)}"
    )

# The robust worst case equals the entropy of the weights.
print("entropy of weights   %.5f bits" % d.entropy_of_weights)
print("weights turn uniform at alpha_max = %.4f" % d.alpha_max)
