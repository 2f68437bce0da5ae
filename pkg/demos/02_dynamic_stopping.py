"""
Watching the stopping rule fire
===============================

Stream random symbols through the spectral flatness tracker and stop
the first time the flatness statistic dips under the threshold. The
stopping length is random: tighter thresholds buy flatter spectra with
longer, more variable waveforms.
"""

import numpy as np

from fskjcr import SpectrumState, StoppingConfig, decide, flatness, generate_waveform, update

M = 8
config = StoppingConfig(gamma2=2e-3)
rng = np.random.default_rng(7)

# Drive the tracker by hand for one stream and print the trajectory.
state = SpectrumState.empty(M)
while True:
    update(state, int(rng.integers(0, M)))
    d = decide(state, config)
    if state.L % 25 == 0 or d.stopped:
        print(f"L = {state.L:4d}  U = {flatness(state):.3e}  stopped = {d.stopped}")
    if d.stopped:
        break

# The one-call version does the same thing and returns the sequence.
seq, decision = generate_waveform(rng, M, config)
print("\nnext stream stopped at L =", decision.L, "forced =", decision.forced)
counts = np.bincount(seq.indices, minlength=M)
print("tone histogram:", counts)

# The stopping lengths of many streams spread widely around their mean.
lengths = [generate_waveform(rng, M, config)[0].indices.size for _ in range(200)]
print("\nmean L0 =", np.mean(lengths), " std =", round(float(np.std(lengths)), 1))
