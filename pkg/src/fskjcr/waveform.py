"""FSK waveform parameterization, symbol-sequence generation, and synthesis.

The waveform is a train of constant-frequency subpulses. Subpulse ``l`` lasts
``T`` seconds and carries the tone ``2*pi*(f0 + m_l*delta_f)`` for a symbol
index ``m_l`` in ``[0, M)``. Tones stay orthogonal over one subpulse exactly
when ``delta_f*T`` is a nonzero integer, which is enforced at construction.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

__all__ = [
    "WaveformParams",
    "FrequencySequence",
    "SampledWaveform",
    "random_sequence",
    "bits_to_sequence",
    "sequence_to_bits",
    "synthesize",
]


@dataclass(frozen=True)
class WaveformParams:
    """Static parameters shared by every subpulse of a waveform.

    Parameters
    ----------
    M : int
        Alphabet size (number of tones), at least 2.
    T : float
        Subpulse repetition interval in seconds.
    delta_f : float
        Tone separation in Hz. ``delta_f * T`` must be a nonzero integer.
    f0 : float
        Lowest tone frequency in Hz. The default 0 keeps the tone set at
        baseband, spanning ``[0, (M-1)*delta_f]``.
    samples_per_subpulse : int
        Samples per subpulse used by :func:`synthesize`. The default 0 is
        replaced by ``4*M*|delta_f|*T``, four times the minimal rate for the
        occupied tone span.
    """

    M: int
    T: float = 1.0
    delta_f: float = 1.0
    f0: float = 0.0
    samples_per_subpulse: int = 0

    def __post_init__(self) -> None:
        if not isinstance(self.M, (int, np.integer)) or self.M < 2:
            raise ValueError("alphabet size M must be an integer >= 2")
        if self.T <= 0:
            raise ValueError("subpulse interval T must be positive")
        spacing = self.delta_f * self.T
        if round(spacing) == 0 or abs(spacing - round(spacing)) > 1e-9:
            raise ValueError("delta_f*T must be a nonzero integer")
        if self.samples_per_subpulse == 0:
            nyq = int(round(4 * self.M * abs(spacing)))
            object.__setattr__(self, "samples_per_subpulse", nyq)
        if self.samples_per_subpulse < 1:
            raise ValueError("samples_per_subpulse must be a positive integer")

    @property
    def sample_rate(self) -> float:
        """Sampling rate in Hz implied by ``samples_per_subpulse``."""
        return self.samples_per_subpulse / self.T


@dataclass(frozen=True)
class FrequencySequence:
    """Symbol indices ``m_l`` of one waveform, each in ``[0, M)``."""

    indices: np.ndarray
    M: int

    def __post_init__(self) -> None:
        idx = np.asarray(self.indices, dtype=np.int64)
        if idx.ndim != 1 or idx.size < 1:
            raise ValueError("a sequence needs at least one symbol")
        if self.M < 2:
            raise ValueError("alphabet size M must be at least 2")
        if idx.min() < 0 or idx.max() >= self.M:
            raise ValueError("symbol index outside [0, M)")
        idx.flags.writeable = False
        object.__setattr__(self, "indices", idx)

    def __len__(self) -> int:
        return int(self.indices.size)


@dataclass(frozen=True)
class SampledWaveform:
    """Complex baseband samples of a synthesized waveform."""

    samples: np.ndarray
    sample_rate: float

    def __post_init__(self) -> None:
        s = np.asarray(self.samples, dtype=np.complex128)
        s.flags.writeable = False
        object.__setattr__(self, "samples", s)

    @property
    def duration(self) -> float:
        """Waveform length in seconds."""
        return self.samples.size / self.sample_rate


def random_sequence(rng: np.random.Generator, M: int, L: int) -> FrequencySequence:
    """Draw ``L`` i.i.d. symbols uniform on ``[0, M)``.

    Identical generator state yields an identical sequence.
    """
    if M < 2:
        raise ValueError("alphabet size M must be at least 2")
    if L < 1:
        raise ValueError("sequence length L must be at least 1")
    return FrequencySequence(rng.integers(0, M, size=L), M)


def bits_to_sequence(bits, M: int) -> FrequencySequence:
    """Map a bit stream to symbol indices, ``log2(M)`` bits per symbol.

    Bit groups are big-endian: the first bit of a group is the most
    significant. Inverse of :func:`sequence_to_bits`.
    """
    if M < 2 or M & (M - 1) != 0:
        raise ValueError("M must be a power of two")
    bits = np.asarray(bits, dtype=np.int64)
    if bits.ndim != 1 or bits.size == 0:
        raise ValueError("bit stream must be a nonempty 1-D sequence")
    if np.any((bits != 0) & (bits != 1)):
        raise ValueError("bit stream may contain only 0 and 1")
    width = M.bit_length() - 1
    if bits.size % width != 0:
        raise ValueError("bit count must be a multiple of log2(M)")
    groups = bits.reshape(-1, width)
    weights = 1 << np.arange(width - 1, -1, -1)
    return FrequencySequence(groups @ weights, M)


def sequence_to_bits(seq, M: int | None = None) -> np.ndarray:
    """Map symbol indices back to a bit stream (inverse of bits_to_sequence)."""
    if isinstance(seq, FrequencySequence):
        indices, M = seq.indices, seq.M
    else:
        if M is None:
            raise ValueError("M is required for a plain index sequence")
        indices = np.asarray(seq, dtype=np.int64)
    if M < 2 or M & (M - 1) != 0:
        raise ValueError("M must be a power of two")
    if indices.size == 0:
        return np.zeros(0, dtype=np.int64)
    if indices.min() < 0 or indices.max() >= M:
        raise ValueError("symbol index outside [0, M)")
    width = M.bit_length() - 1
    shifts = np.arange(width - 1, -1, -1)
    return ((indices[:, None] >> shifts) & 1).reshape(-1)


def synthesize(params: WaveformParams, seq: FrequencySequence) -> SampledWaveform:
    """Sample the unit-modulus complex envelope of an FSK subpulse train.

    Sample ``n`` of subpulse ``l`` is ``exp(j*w_l*n/fs)`` with
    ``w_l = 2*pi*(f0 + m_l*delta_f)``: the phase argument restarts at zero at
    every subpulse boundary (no phase continuity across subpulses).
    """
    # Nyquist for the tone span, only binding when samples are requested.
    if params.samples_per_subpulse < 2 * params.M * abs(params.delta_f) * params.T:
        raise ValueError("samples_per_subpulse below 2*M*delta_f*T")
    S = params.samples_per_subpulse
    t_local = np.arange(S) / params.sample_rate
    freqs = params.f0 + np.asarray(seq.indices) * params.delta_f
    phase = 2.0 * np.pi * freqs[:, None] * t_local[None, :]
    samples = np.exp(1j * phase).reshape(-1)
    return SampledWaveform(samples, params.sample_rate)
