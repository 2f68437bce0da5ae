"""Spectrum-flatness tracking and the dynamic waveform-length stopping rule.

The running statistic is the flatness of the tone-usage histogram,

    U(L) = (1/M) * sum_m (N_m/L - 1/M)**2,

where ``N_m`` counts how often tone ``m`` appeared in the first ``L``
subpulses. Generation stops at the first ``L`` where ``U(L)`` drops below a
threshold ``gamma2`` while ``L`` clears the deterministic lower bounds, or
when a hard cap ``gamma4`` forces the stop.

All comparisons use the integer identity

    U(L) = (M * sum_m N_m**2 - L**2) / (M**2 * L**2),

which makes threshold equality exact (a single symbol gives exactly
``(M-1)/M**2``) and allows an O(1) update per subpulse via
``sum_sq += 2*N_old + 1``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .waveform import FrequencySequence

__all__ = [
    "SpectrumState",
    "StoppingConfig",
    "StopDecision",
    "gamma1_from_rms_requirement",
    "gamma3_from_af_variance",
    "update",
    "flatness",
    "chi2_of",
    "decide",
    "generate_waveform",
    "sample_lengths",
    "flatness_mean_curve",
    "chi2_samples",
]


@dataclass
class SpectrumState:
    """Running tone-usage histogram of a waveform under construction.

    Owned by a single generator loop; :func:`update` mutates it in place so
    each subpulse costs O(1) regardless of the alphabet size.
    """

    counts: np.ndarray
    L: int = 0
    sum_sq: int = 0

    @classmethod
    def empty(cls, M: int) -> "SpectrumState":
        if M < 2:
            raise ValueError("alphabet size M must be at least 2")
        return cls(counts=np.zeros(M, dtype=np.int64))

    @property
    def M(self) -> int:
        return int(self.counts.size)

    def copy(self) -> "SpectrumState":
        return SpectrumState(self.counts.copy(), self.L, self.sum_sq)


@dataclass(frozen=True)
class StoppingConfig:
    """Thresholds of the stopping rule.

    ``gamma2`` bounds the flatness; ``gamma1`` and ``gamma3`` are minimum
    lengths derived from accuracy requirements (compared as ``L >= ceil(g)``
    to avoid float equality at the boundary); ``gamma4`` caps the length and
    may be ``math.inf``.
    """

    gamma2: float
    gamma1: float = 1.0
    gamma3: float = 1.0
    gamma4: float = math.inf

    def __post_init__(self) -> None:
        if not self.gamma2 > 0:
            raise ValueError("gamma2 must be positive")
        if min(self.gamma1, self.gamma3) < 1:
            raise ValueError("gamma1 and gamma3 must be at least 1")
        if self.gamma4 < max(self.gamma1, self.gamma3):
            raise ValueError("gamma4 must dominate the lower bounds")

    @property
    def min_length(self) -> int:
        return max(math.ceil(self.gamma1), math.ceil(self.gamma3))


@dataclass(frozen=True)
class StopDecision:
    stopped: bool
    L: int
    forced: bool = False


def gamma1_from_rms_requirement(sigma_t_sq_req: float, T: float) -> float:
    """Minimum length so the RMS time duration L**2 T**2/12 meets a target."""
    if sigma_t_sq_req <= 0 or T <= 0:
        raise ValueError("requirement and T must be positive")
    return math.sqrt(12.0 * sigma_t_sq_req) / T


def gamma3_from_af_variance(sigma_A_sq_req: float, M: int) -> float:
    """Minimum length bounding the worst grid-point sidelobe variance."""
    if sigma_A_sq_req <= 0:
        raise ValueError("requirement must be positive")
    if M < 2:
        raise ValueError("alphabet size M must be at least 2")
    return (M - 1) * (M * M - M + 1) / (M**4 * sigma_A_sq_req)


def update(state: SpectrumState, symbol_index: int) -> SpectrumState:
    """Fold one symbol into the histogram. Mutates and returns ``state``."""
    M = state.counts.size
    if not 0 <= symbol_index < M:
        raise ValueError("symbol index outside [0, M)")
    old = int(state.counts[symbol_index])
    state.counts[symbol_index] = old + 1
    state.sum_sq += 2 * old + 1
    state.L += 1
    return state


def flatness(state: SpectrumState) -> float:
    """Flatness U(L) of the current histogram (0 means exactly uniform)."""
    if state.L < 1:
        raise ValueError("flatness needs at least one symbol")
    M, L = state.M, state.L
    return (M * state.sum_sq - L * L) / (M * M * L * L)


def chi2_of(state: SpectrumState) -> float:
    """Uniformity test statistic: sum_m (N_m - L/M)**2 / (L/M) = L M^2 U(L)."""
    if state.L < 1:
        raise ValueError("chi2 needs at least one symbol")
    M, L = state.M, state.L
    return (M * state.sum_sq - L * L) / L


def decide(state: SpectrumState, config: StoppingConfig) -> StopDecision:
    """First-passage decision at the current prefix length."""
    L = state.L
    flat_ok = L >= config.min_length and flatness(state) <= config.gamma2
    capped = L >= config.gamma4
    return StopDecision(stopped=flat_ok or capped, L=L, forced=capped and not flat_ok)


def generate_waveform(
    rng: np.random.Generator, M: int, config: StoppingConfig
) -> tuple[FrequencySequence, StopDecision]:
    """Draw uniform symbols until the stopping rule fires.

    Returns the emitted sequence and the decision at its final prefix.
    Symbols are drawn in blocks purely as an RNG amortization; the decision
    is still evaluated after every symbol, so replaying the sequence through
    :func:`update` and :func:`decide` reproduces the same stop index.
    """
    counts = np.zeros(M, dtype=np.int64)
    sum_sq = 0
    L = 0
    min_len = config.min_length
    g2, g4 = config.gamma2, config.gamma4
    out: list[int] = []
    block = 64
    while True:
        for sym in rng.integers(0, M, size=block):
            sym = int(sym)
            old = int(counts[sym])
            counts[sym] = old + 1
            sum_sq += 2 * old + 1
            L += 1
            out.append(sym)
            # Same float expression as flatness(), so equality cases agree.
            u = (M * sum_sq - L * L) / (M * M * L * L)
            flat_ok = L >= min_len and u <= g2
            if flat_ok or L >= g4:
                seq = FrequencySequence(np.array(out, dtype=np.int64), M)
                return seq, StopDecision(True, L, forced=not flat_ok)


def sample_lengths(
    rng: np.random.Generator,
    M: int,
    config: StoppingConfig,
    runs: int,
    max_steps: int = 1_000_000,
) -> tuple[np.ndarray, np.ndarray]:
    """Stopping lengths of many independent symbol streams at once.

    Vectorized over runs (one RNG column per step, fancy-indexed histogram
    update). Returns ``(lengths, forced)`` arrays of shape ``(runs,)``.
    ``max_steps`` only guards against a runaway loop when ``gamma4`` is
    infinite; hitting it raises rather than truncating the sample.
    """
    if runs < 1:
        raise ValueError("runs must be at least 1")
    counts = np.zeros((runs, M), dtype=np.int64)
    sum_sq = np.zeros(runs, dtype=np.int64)
    lengths = np.zeros(runs, dtype=np.int64)
    forced = np.zeros(runs, dtype=bool)
    alive = np.arange(runs)
    g2, g4 = config.gamma2, config.gamma4
    min_len = config.min_length
    L = 0
    while alive.size:
        L += 1
        if L > max_steps:
            raise RuntimeError("stopping rule did not fire within max_steps")
        sym = rng.integers(0, M, size=alive.size)
        c = counts[alive, sym]
        sum_sq[alive] += 2 * c + 1
        counts[alive, sym] = c + 1
        u = (M * sum_sq[alive] - L * L) / (M * M * L * L)
        hit = u <= g2 if L >= min_len else np.zeros(alive.size, bool)
        if L >= g4:
            done = np.ones(alive.size, dtype=bool)
            forced[alive[~hit]] = True
        else:
            done = hit
        stopped_rows = alive[done]
        lengths[stopped_rows] = L
        alive = alive[~done]
    return lengths, forced


def flatness_mean_curve(
    rng: np.random.Generator, M: int, L_max: int, runs: int
) -> np.ndarray:
    """Empirical mean of U(L) for L = 1..L_max over independent streams."""
    counts = np.zeros((runs, M), dtype=np.int64)
    sum_sq = np.zeros(runs, dtype=np.int64)
    rows = np.arange(runs)
    mean_u = np.empty(L_max, dtype=float)
    for L in range(1, L_max + 1):
        sym = rng.integers(0, M, size=runs)
        c = counts[rows, sym]
        sum_sq += 2 * c + 1
        counts[rows, sym] = c + 1
        mean_u[L - 1] = np.mean(M * sum_sq - L * L) / (M * M * L * L)
    return mean_u


def chi2_samples(
    rng: np.random.Generator, M: int, checkpoints: list[int], runs: int
) -> np.ndarray:
    """Chi-square statistic of each stream at the given prefix lengths.

    Returns an array of shape ``(len(checkpoints), runs)``; checkpoints must
    be increasing.
    """
    marks = [int(c) for c in checkpoints]
    if marks != sorted(marks) or marks[0] < 1:
        raise ValueError("checkpoints must be increasing and >= 1")
    counts = np.zeros((runs, M), dtype=np.int64)
    sum_sq = np.zeros(runs, dtype=np.int64)
    rows = np.arange(runs)
    out = np.empty((len(marks), runs), dtype=float)
    pos = 0
    for L in range(1, marks[-1] + 1):
        sym = rng.integers(0, M, size=runs)
        c = counts[rows, sym]
        sum_sq += 2 * c + 1
        counts[rows, sym] = c + 1
        while pos < len(marks) and marks[pos] == L:
            out[pos] = (M * sum_sq - L * L) / L
            pos += 1
    return out
