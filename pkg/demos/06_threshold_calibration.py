"""
Calibrating the flatness threshold to a latency target
======================================================

Pick gamma2 so that the stopping length exceeds a latency budget L1
with probability alpha, using the tangent closed form as the design
model, then check the result against the simulated stopping rule.
"""

import numpy as np

from fskjcr import HittingModel, StoppingConfig, gamma2_for_quantile, sample_lengths, tangent_cdf

M, L1, alpha = 32, 450, 0.1
g2 = gamma2_for_quantile(L1, alpha, M)
print(f"target: P(L0 > {L1}) = {alpha}  ->  gamma2 = {g2:.4e}")

# The design model hits the target by construction.
model = HittingModel(M=M, gamma2=g2)
print("tangent model:  P(L0 > L1) =", round(1.0 - tangent_cdf(float(L1), model), 4))

# The simulated rule lands near it (the tangent curve is approximate).
rng = np.random.default_rng(5)
lengths, _ = sample_lengths(rng, M, StoppingConfig(gamma2=g2), 4000)
print("simulated rule: P(L0 > L1) =", float(np.mean(lengths > L1)))

# A bigger overrun budget alpha admits a tighter (smaller) threshold.
for a in (0.05, 0.1, 0.2, 0.3):
    g = gamma2_for_quantile(L1, a, M)
    print(f"alpha = {a:4.2f}  gamma2 = {g:.4e}")
