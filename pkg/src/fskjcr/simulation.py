"""Radar channel simulation, matched-filter delay-Doppler estimation, and
Monte Carlo MSE harnesses.

The received radar signal is r(t) = b s(t - tau) e^{j omega t} + n(t) with a
circular complex Gaussian reflection gain b and white noise of PSD N0. The
estimator scans a delay-Doppler grid for the peak of

    | sum_n r[n] conj(s(t_n - tau_bar)) e^{-j omega_bar t_n} |^2.

Two evaluation routes exist: an exact per-sample sum, and a fast route that
correlates per subpulse chunk and applies the Doppler phase at chunk centers
(the phase is nearly constant over one subpulse for the Doppler spans used
here). The fast route is what the MSE harnesses use; tests tie the two
routes together.

SNR is defined as the received signal energy over the noise PSD,
snr = sigma_b^2 * L * T / N0, so N0 is rescaled per realization to hold the
SNR fixed while L varies.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .stopping import StoppingConfig, generate_waveform
from .waveform import (
    FrequencySequence,
    SampledWaveform,
    WaveformParams,
    random_sequence,
    synthesize,
)

__all__ = [
    "ChannelScenario",
    "SearchGrid",
    "EstimationResult",
    "Scheme",
    "RealizationMse",
    "SweepResult",
    "apply_channel",
    "ml_estimate",
    "detect_symbol",
    "default_grid",
    "run_mse_cdf",
    "run_mse_sweep",
]


@dataclass(frozen=True)
class ChannelScenario:
    """True delay/Doppler, reflection variance, and linear SNR."""

    tau_true: float = 0.0
    omega_true: float = 0.0
    sigma_b_sq: float = 1.0
    snr: float = math.inf

    def noise_psd(self, signal_duration: float) -> float:
        """N0 implied by the SNR definition for a given waveform duration."""
        return self.sigma_b_sq * signal_duration / self.snr


@dataclass(frozen=True)
class SearchGrid:
    """Ascending delay (seconds) and Doppler (rad/s) grid axes."""

    delays: np.ndarray
    dopplers: np.ndarray

    def __post_init__(self) -> None:
        d = np.atleast_1d(np.asarray(self.delays, dtype=float))
        w = np.atleast_1d(np.asarray(self.dopplers, dtype=float))
        if d.size == 0 or w.size == 0:
            raise ValueError("grid axes must be nonempty")
        if np.any(np.diff(d) <= 0) and d.size > 1 or np.any(np.diff(w) <= 0) and w.size > 1:
            raise ValueError("grid axes must be strictly increasing")
        d.flags.writeable = False
        w.flags.writeable = False
        object.__setattr__(self, "delays", d)
        object.__setattr__(self, "dopplers", w)


@dataclass(frozen=True)
class EstimationResult:
    tau_hat: float
    omega_hat: float
    peak_metric: float


@dataclass(frozen=True)
class Scheme:
    """Waveform-length policy for the Monte Carlo harnesses.

    ``fixed`` draws L i.i.d. symbols; ``dynamic`` runs the stopping rule;
    a bounded dynamic scheme rejects realizations whose length falls outside
    the bounds (conditioning, not forcing).
    """

    kind: str
    L: int | None = None
    gamma2: float | None = None
    bounds: tuple[int, int] | None = None

    def __post_init__(self) -> None:
        if self.kind == "fixed":
            if not self.L or self.L < 1:
                raise ValueError("fixed scheme needs a positive length")
        elif self.kind == "dynamic":
            if self.gamma2 is None or self.gamma2 <= 0:
                raise ValueError("dynamic scheme needs a positive gamma2")
            if self.bounds is not None and self.bounds[0] > self.bounds[1]:
                raise ValueError("bounds must be (lo, hi) with lo <= hi")
        else:
            raise ValueError("scheme kind must be 'fixed' or 'dynamic'")

    @classmethod
    def fixed(cls, L: int) -> "Scheme":
        return cls("fixed", L=L)

    @classmethod
    def dynamic(cls, gamma2: float, bounds: tuple[int, int] | None = None) -> "Scheme":
        return cls("dynamic", gamma2=gamma2, bounds=bounds)

    @property
    def label(self) -> str:
        if self.kind == "fixed":
            return f"fixed{self.L}"
        return "dynamic" if self.bounds is None else "dynamic_bounded"

    def realize(self, rng: np.random.Generator, M: int) -> FrequencySequence:
        if self.kind == "fixed":
            return random_sequence(rng, M, self.L)
        config = StoppingConfig(gamma2=self.gamma2)
        if self.bounds is None:
            return generate_waveform(rng, M, config)[0]
        lo, hi = self.bounds
        for _ in range(100_000):
            seq, _ = generate_waveform(rng, M, config)
            if lo <= len(seq) <= hi:
                return seq
        raise RuntimeError("bounded scheme rejected every realization")


@dataclass(frozen=True)
class RealizationMse:
    """Per-realization normalized MSEs and waveform lengths at one SNR."""

    lengths: np.ndarray
    delay_mse: np.ndarray # units of T**2
    doppler_mse: np.ndarray # (rad/s)**2


@dataclass(frozen=True)
class SweepResult:
    """Mean and extreme per-realization MSEs for each SNR point."""

    snr_db: np.ndarray
    delay_mean: np.ndarray
    delay_best: np.ndarray
    delay_worst: np.ndarray
    doppler_mean: np.ndarray
    doppler_best: np.ndarray
    doppler_worst: np.ndarray


def _shift_template(s: np.ndarray, shift_samples: float, n_obs: int) -> np.ndarray:
    """s delayed by a (possibly fractional) number of samples, zero outside."""
    out = np.zeros(n_obs, dtype=np.complex128)
    if abs(shift_samples - round(shift_samples)) < 1e-9:
        d = int(round(shift_samples))
        lo = max(0, -d)
        hi = min(s.size, n_obs - d)
        if hi > lo:
            out[lo + d : hi + d] = s[lo:hi]
    else:
        pos = np.arange(n_obs, dtype=float) - shift_samples
        grid = np.arange(s.size, dtype=float)
        out.real = np.interp(pos, grid, s.real, left=0.0, right=0.0)
        out.imag = np.interp(pos, grid, s.imag, left=0.0, right=0.0)
    return out


def apply_channel(
    w: SampledWaveform,
    scen: ChannelScenario,
    rng: np.random.Generator,
    obs_duration: float | None = None,
    gain: complex | None = None,
) -> np.ndarray:
    """One noisy received snapshot of the delayed, Doppler-shifted waveform.

    The reflection gain is drawn circular complex Gaussian with variance
    ``sigma_b_sq`` unless ``gain`` pins it. Noise samples are circular
    complex Gaussian with per-sample variance N0 * sample_rate. The RNG is
    consumed in the order gain, then noise.
    """
    fs = w.sample_rate
    if obs_duration is None:
        obs_duration = w.duration
    n_obs = int(round(obs_duration * fs))
    if scen.tau_true >= obs_duration:
        raise ValueError("true delay falls beyond the observation window")
    delayed = _shift_template(w.samples, scen.tau_true * fs, n_obs)
    if gain is None:
        g = math.sqrt(scen.sigma_b_sq / 2.0)
        gain = complex(g * rng.standard_normal(), g * rng.standard_normal())
    t = np.arange(n_obs) / fs
    r = gain * delayed * np.exp(1j * scen.omega_true * t)
    n0 = scen.noise_psd(w.duration)
    if n0 > 0:
        sd = math.sqrt(n0 * fs / 2.0)
        r = r + sd * (rng.standard_normal(n_obs) + 1j * rng.standard_normal(n_obs))
    return r


def _chunked_metric(
    R: np.ndarray,
    templates: np.ndarray,
    dopplers: np.ndarray,
    chunk: int,
    fs: float,
) -> np.ndarray:
    """|metric|^2 on the grid for a batch of snapshots, chunk approximation.

    ``R`` is (trials, n_obs), ``templates`` is (n_delays, n_obs). Correlates
    chunk-by-chunk (BLAS batched products), then applies each Doppler phase
    at chunk centers. Returns (trials, n_delays, n_dopplers).
    """
    trials, n_obs = R.shape
    n_pad = ((n_obs + chunk - 1) // chunk) * chunk
    n_c = n_pad // chunk
    Rp = np.zeros((trials, n_pad), dtype=np.complex128)
    Rp[:, :n_obs] = R
    Tp = np.zeros((templates.shape[0], n_pad), dtype=np.complex128)
    Tp[:, :n_obs] = templates.conj()
    R3 = Rp.reshape(trials, n_c, chunk).transpose(1, 0, 2) # (c, trials, S)
    T3 = Tp.reshape(-1, n_c, chunk).transpose(1, 2, 0) # (c, S, delays)
    C = np.matmul(R3, T3) # (c, trials, delays)
    t_c = (np.arange(n_c) + 0.5) * chunk / fs
    P = np.exp(-1j * np.outer(t_c, dopplers)) # (c, dopplers)
    met = np.tensordot(C, P, axes=([0], [0])) # (trials, delays, dopplers)
    return np.abs(met) ** 2


def _exact_metric(
    received: np.ndarray, templates: np.ndarray, dopplers: np.ndarray, fs: float
) -> np.ndarray:
    """|metric|^2 by direct per-sample summation, (n_delays, n_dopplers)."""
    n_obs = received.size
    t = np.arange(n_obs) / fs
    phases = np.exp(-1j * np.outer(dopplers, t)) # (J, n)
    prod = received[None, :] * templates.conj() # (D, n)
    return np.abs(prod @ phases.T) ** 2


def ml_estimate(
    received: np.ndarray,
    w: SampledWaveform,
    grid: SearchGrid,
    chunk: int | None = None,
) -> EstimationResult:
    """Grid point maximizing the matched-filter metric.

    Ties break toward the smallest delay, then the smallest Doppler (the
    grids are ascending and the argmax takes the first maximum in row-major
    delay-then-Doppler order). ``chunk`` switches to the per-subpulse fast
    route; the default is the exact summation.
    """
    received = np.asarray(received, dtype=np.complex128)
    fs = w.sample_rate
    templates = np.stack(
        [_shift_template(w.samples, tau * fs, received.size) for tau in grid.delays]
    )
    if chunk is None:
        met = _exact_metric(received, templates, grid.dopplers, fs)
    else:
        met = _chunked_metric(received[None, :], templates, grid.dopplers, chunk, fs)[0]
    flat = int(np.argmax(met))
    i, j = divmod(flat, grid.dopplers.size)
    return EstimationResult(
        float(grid.delays[i]), float(grid.dopplers[j]), float(met[i, j])
    )


def detect_symbol(received: np.ndarray, params: WaveformParams) -> int:
    """Noncoherent symbol decision over one subpulse window.

    Correlates against all M tones and picks the largest magnitude, so an
    unknown phase rotation on the subpulse does not affect the decision.
    """
    received = np.asarray(received, dtype=np.complex128)
    if received.size != params.samples_per_subpulse:
        raise ValueError("window length must equal samples_per_subpulse")
    t = np.arange(params.samples_per_subpulse) / params.sample_rate
    freqs = params.f0 + np.arange(params.M) * params.delta_f
    bank = np.exp(-2j * np.pi * np.outer(freqs, t)) # conjugate tones
    return int(np.argmax(np.abs(bank @ received)))


def default_grid(params: WaveformParams, L_max: int = 400) -> SearchGrid:
    """Shared search grid: delay step T/8 spanning +-2T, Doppler step
    2*pi/(8*L_max*T) spanning +-2*pi/(L_max*T)."""
    T = params.T
    delays = np.arange(-16, 17) * (T / 8.0)
    dw = 2.0 * math.pi / (8.0 * L_max * T)
    dopplers = np.arange(-8, 9) * dw
    return SearchGrid(delays, dopplers)


def run_mse_cdf(
    rng: np.random.Generator,
    scheme: Scheme,
    params: WaveformParams,
    grid: SearchGrid,
    snr_db: float,
    realizations: int,
    trials: int,
) -> RealizationMse:
    """Per-realization delay/Doppler MSEs at one SNR.

    Each realization draws one waveform from the scheme and ``trials`` noisy
    snapshots with truth on-grid at (tau, omega) = (0, 0); its MSE averages
    the squared grid-point errors. Delay MSE is normalized by T**2. N0 is
    set per realization from the waveform duration, holding the SNR fixed
    across lengths.
    """
    if realizations < 1 or trials < 1:
        raise ValueError("realizations and trials must be at least 1")
    snr = 10.0 ** (snr_db / 10.0)
    fs = params.sample_rate
    S = params.samples_per_subpulse
    sigma_b_sq = 1.0
    max_delay = max(float(grid.delays.max()), 0.0)
    pad = int(round(max_delay * fs))
    J = grid.dopplers.size
    lengths = np.empty(realizations, dtype=np.int64)
    delay_mse = np.empty(realizations)
    doppler_mse = np.empty(realizations)
    g = math.sqrt(sigma_b_sq / 2.0)
    for i in range(realizations):
        seq = scheme.realize(rng, params.M)
        w = synthesize(params, seq)
        n_obs = w.samples.size + pad
        templates = np.stack(
            [_shift_template(w.samples, tau * fs, n_obs) for tau in grid.delays]
        )
        clean = _shift_template(w.samples, 0.0, n_obs)
        n0 = sigma_b_sq * w.duration / snr
        sd = math.sqrt(n0 * fs / 2.0)
        gains = g * (rng.standard_normal(trials) + 1j * rng.standard_normal(trials))
        R = gains[:, None] * clean[None, :]
        R += sd * (
            rng.standard_normal((trials, n_obs))
            + 1j * rng.standard_normal((trials, n_obs))
        )
        met = _chunked_metric(R, templates, grid.dopplers, S, fs)
        flat = np.argmax(met.reshape(trials, -1), axis=1)
        di, ji = np.divmod(flat, J)
        tau_err = grid.delays[di]
        dop_err = grid.dopplers[ji]
        lengths[i] = len(seq)
        delay_mse[i] = float(np.mean(tau_err**2)) / params.T**2
        doppler_mse[i] = float(np.mean(dop_err**2))
    return RealizationMse(lengths, delay_mse, doppler_mse)


def run_mse_sweep(
    rng: np.random.Generator,
    scheme: Scheme,
    params: WaveformParams,
    grid: SearchGrid,
    snr_db_list,
    realizations: int,
    trials: int,
) -> SweepResult:
    """Mean/best/worst per-realization MSEs across an SNR sweep."""
    snrs = np.asarray(list(snr_db_list), dtype=float)
    shape = snrs.size
    dm, db_, dw_ = np.empty(shape), np.empty(shape), np.empty(shape)
    om, ob, ow = np.empty(shape), np.empty(shape), np.empty(shape)
    for i, snr_db in enumerate(snrs):
        res = run_mse_cdf(rng, scheme, params, grid, float(snr_db), realizations, trials)
        dm[i] = res.delay_mse.mean()
        db_[i] = res.delay_mse.min()
        dw_[i] = res.delay_mse.max()
        om[i] = res.doppler_mse.mean()
        ob[i] = res.doppler_mse.min()
        ow[i] = res.doppler_mse.max()
    return SweepResult(snrs, dm, db_, dw_, om, ob, ow)
