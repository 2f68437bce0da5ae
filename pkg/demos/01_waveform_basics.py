"""
Synthesizing a frequency hopped subpulse train
==============================================

Build a short M-ary FSK waveform, look at its samples, and check the
two properties everything downstream relies on: constant modulus and
orthogonality of the subpulse tones.
"""

import numpy as np

from fskjcr import WaveformParams, bits_to_sequence, sequence_to_bits, synthesize

# Four tones, unit symbol time, unit tone spacing. The sample rate comes
# out as samples_per_subpulse / T, here 16 samples per subpulse.
params = WaveformParams(M=4)
print("sample rate:", params.samples_per_subpulse / params.T)

# Map a bit string onto tone indices (two bits per symbol for M = 4).
bits = [0, 0, 0, 1, 1, 0, 1, 1]
seq = bits_to_sequence(bits, params.M)
print("tone indices:", seq.indices)
print("round trip:  ", sequence_to_bits(seq))

w = synthesize(params, seq)
print("samples:", w.samples.size, "duration:", w.duration)

# The complex envelope never leaves the unit circle.
print("max |s| deviation from 1:", np.max(np.abs(np.abs(w.samples) - 1.0)))

# Distinct tones integrate to zero over one subpulse: correlate the first
# two subpulses of a waveform that hops from tone 0 to tone 1.
n = params.samples_per_subpulse
sub0, sub1 = w.samples[:n], w.samples[n : 2 * n]
print("tone cross correlation:", abs(np.vdot(sub0, sub1)) / n)
