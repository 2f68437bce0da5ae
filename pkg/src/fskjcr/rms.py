"""RMS time duration and RMS bandwidth of FSK subpulse trains, and the
delay/Doppler estimation error bounds they control.

The RMS time duration of an L-subpulse train is deterministic, L**2 T**2/12.
The squared RMS bandwidth splits into a pulse-shape term, which needs a
limiting bandwidth B to converge, and a tone-usage term driven by the
histogram counts N_m:

    sigma_w^2 = (pi B)^2 / (pi B T Si(pi B T) + cos(pi B T) - 1)
              + (2 pi delta_f / L)^2 * sum_{m<n} N_m N_n (m - n)^2.

Estimation error bounds scale as the reciprocals: a caller-supplied SNR
constant C gives delay variance >= 1/(C sigma_w^2) and Doppler variance
>= 1/(C sigma_t^2).
"""

from __future__ import annotations

import math

import numpy as np
from scipy.special import sici

from .waveform import FrequencySequence, WaveformParams

__all__ = [
    "rms_time_sq",
    "sine_integral",
    "rms_bw_sq",
    "rms_bw_stats",
    "crlb_delay",
    "crlb_doppler",
]


def rms_time_sq(L: int, T: float) -> float:
    """Squared RMS time duration L**2 T**2 / 12 in seconds**2."""
    if L < 1 or T <= 0:
        raise ValueError("need L >= 1 and T > 0")
    return L * L * T * T / 12.0


def sine_integral(x):
    """Si(x) = integral of sin(u)/u from 0 to x, elementwise."""
    x = np.asarray(x, dtype=float)
    if np.any(x < 0):
        raise ValueError("sine_integral is defined here for x >= 0")
    si = sici(x)[0]
    return float(si) if si.ndim == 0 else si


def _shape_term(T: float, B: float) -> float:
    if B <= 0:
        raise ValueError("limiting bandwidth B must be positive")
    x = math.pi * B * T
    return (math.pi * B) ** 2 / (x * float(sine_integral(x)) + math.cos(x) - 1.0)


def _pair_sum(counts: np.ndarray) -> float:
    # sum_{m<n} N_m N_n (m-n)^2 = L*S2 - S1^2 with S1, S2 the first two
    # index moments of the histogram.
    m = np.arange(counts.size)
    L = int(counts.sum())
    s1 = int(np.sum(m * counts))
    s2 = int(np.sum(m * m * counts))
    return float(L * s2 - s1 * s1)


def rms_bw_sq(
    seq: FrequencySequence, params: WaveformParams, B: float | None = None
) -> float:
    """Squared RMS bandwidth of one waveform in (rad/s)**2.

    ``B`` defaults to the occupied tone span M*delta_f; its influence is
    minor because the tone-usage term dominates.
    """
    if B is None:
        B = params.M * abs(params.delta_f)
    counts = np.bincount(seq.indices, minlength=seq.M)
    L = len(seq)
    tone = (2.0 * math.pi * params.delta_f / L) ** 2 * _pair_sum(counts)
    return _shape_term(params.T, B) + tone


def rms_bw_stats(
    L: int, M: int, delta_f: float, T: float, B: float | None = None
) -> tuple[float, float]:
    """Mean and variance of the squared RMS bandwidth over random symbols.

    Over i.i.d. uniform tone choices,

        E[sigma_w^2]   = shape + (2 pi df)^2 (L-1)(M-1)(M+1) / (12 L),
        Var[sigma_w^2] = (2 pi df)^4 (L-1)(M-1)(M+1)
                         * (2 L M^2 - 8 L + 3 M^2 + 3) / (360 L^3).

    The variance vanishes as L grows, so the bandwidth stabilizes at the
    evenly-spread-tones value (2 pi df)^2 (M-1)(M+1)/12 plus the shape term.
    """
    if L < 1 or M < 2:
        raise ValueError("need L >= 1 and M >= 2")
    if B is None:
        B = M * abs(delta_f)
    w = (2.0 * math.pi * delta_f) ** 2
    mean = _shape_term(T, B) + w * (L - 1) * (M - 1) * (M + 1) / (12.0 * L)
    var = (
        w * w * (L - 1) * (M - 1) * (M + 1)
        * (2 * L * M * M - 8 * L + 3 * M * M + 3)
        / (360.0 * L**3)
    )
    return mean, var


def crlb_delay(C: float, sigma_w_sq: float) -> float:
    """Delay error-variance floor 1/(C * sigma_w^2) in seconds**2."""
    if C <= 0 or sigma_w_sq <= 0:
        raise ValueError("C and sigma_w_sq must be positive")
    return 1.0 / (C * sigma_w_sq)


def crlb_doppler(C: float, sigma_t_sq: float) -> float:
    """Doppler error-variance floor 1/(C * sigma_t^2) in (rad/s)**2."""
    if C <= 0 or sigma_t_sq <= 0:
        raise ValueError("C and sigma_t_sq must be positive")
    return 1.0 / (C * sigma_t_sq)
