"""Grid-point ambiguity-function sidelobes of FSK subpulse trains.

For a length-L symbol sequence, the delay-Doppler grid is
``(tau, omega) = (k*T, 2*pi*r*delta_f)`` with integer ``k`` and ``r``. At
those points the normalized ambiguity value reduces to a pure count:

    A(k, r) = (1/L) * #{ l in [k, L) : m_{l-k} - m_l = r }.

The summands are 0/1 so no magnitude is needed, and ``L*A`` is an integer.
The grid domain D excludes only the origin (0, 0).

Two kinds of statistics are exposed: :func:`af_stats` gives the published
independent-binomial mean/variance, and :func:`af_stats_exact` gives the
exact values, which differ at ``k = 0, r != 0`` (the count is identically
zero there) and wherever summand pairs share a symbol (``r != 0`` with
``L - 2k >= 1``, where a covariance term appears).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .waveform import FrequencySequence, SampledWaveform

__all__ = [
    "GridPoint",
    "SidelobeStats",
    "VarianceScan",
    "PmfResult",
    "af_sidelobe",
    "af_stats",
    "af_stats_exact",
    "af_variance_monotone_check",
    "empirical_pmf",
    "cross_ambiguity",
]


@dataclass(frozen=True)
class GridPoint:
    """Delay index k >= 0 and Doppler index r of one grid cell."""

    k: int
    r: int


@dataclass(frozen=True)
class SidelobeStats:
    mean: float
    variance: float


@dataclass(frozen=True)
class VarianceScan:
    """Result of an exhaustive variance scan over the grid domain."""

    argmax: GridPoint
    max_variance: float
    cardinality: int


@dataclass(frozen=True)
class PmfResult:
    """Normalized histogram of sidelobe samples plus their mean."""

    edges: np.ndarray
    mass: np.ndarray
    sample_mean: float


def _require_in_domain(point: GridPoint, L: int, M: int) -> None:
    if not 0 <= point.k < L:
        raise ValueError("delay index k outside [0, L)")
    if abs(point.r) > M - 1:
        raise ValueError("Doppler index |r| larger than M-1")
    if point.k == 0 and point.r == 0:
        raise ValueError("(0, 0) is the mainlobe, not a sidelobe")


def af_sidelobe(seq: FrequencySequence, point: GridPoint) -> float:
    """Sidelobe value A(k, r) of one sequence at one grid point."""
    L = len(seq)
    _require_in_domain(point, L, seq.M)
    k, r = point.k, point.r
    m = seq.indices
    return int(np.sum(m[: L - k] - m[k:] == r)) / L


def af_stats(L: int, M: int, point: GridPoint) -> SidelobeStats:
    """Published mean and variance of A(k, r) over uniform random symbols.

    Treats the (L - k) indicator summands as independent Bernoulli draws
    with success probability (M - |r|)/M**2. See :func:`af_stats_exact` for
    where that model is off.
    """
    _require_in_domain(point, L, M)
    k, ar = point.k, abs(point.r)
    mean = (L - k) / L * (M - ar) / M**2
    var = (L - k) / L**2 * (M - ar) * (M * M - M + ar) / M**4
    return SidelobeStats(mean, var)


def af_stats_exact(L: int, M: int, point: GridPoint) -> SidelobeStats:
    """Exact mean and variance of A(k, r) over uniform random symbols.

    At k = 0 with r != 0 the indicator compares a symbol with itself, so the
    count is identically zero. For k >= 1 the summands at lag k share a
    symbol in pairs (l, l + k); with p = (M - |r|)/M**2 the variance is

        [ (L-k) p (1-p) + 2 max(0, L-2k) cov ] / L**2,
        cov = ( max(0, M - 2|r|) * M - (M - |r|)**2 ) / M**4,

    and cov vanishes at r = 0, where the published formula is exact.
    """
    _require_in_domain(point, L, M)
    k, ar = point.k, abs(point.r)
    if k == 0:
        return SidelobeStats(0.0, 0.0)
    p = (M - ar) / M**2
    mean = (L - k) * p / L
    cov = 0.0 if ar == 0 else (max(0, M - 2 * ar) * M - (M - ar) ** 2) / M**4
    var = ((L - k) * p * (1.0 - p) + 2 * max(0, L - 2 * k) * cov) / L**2
    return SidelobeStats(mean, var)


def af_variance_monotone_check(L: int, M: int) -> VarianceScan:
    """Exhaustively scan the published variance over the whole grid domain.

    Ties go to the smallest k, then the smallest |r|, positive r first, so
    the reported argmax is deterministic. The scan also counts |D|, which is
    L*(2M - 1) - 1.
    """
    if L < 1 or M < 2:
        raise ValueError("need L >= 1 and M >= 2")
    best: GridPoint | None = None
    best_var = -1.0
    cardinality = 0
    for k in range(L):
        rs = [r for a in range(M) for r in ((a, -a) if a else (0,))]
        for r in rs:
            if k == 0 and r == 0:
                continue
            cardinality += 1
            var = af_stats(L, M, GridPoint(k, r)).variance
            if var > best_var:
                best, best_var = GridPoint(k, r), var
    assert best is not None
    return VarianceScan(best, best_var, cardinality)


def empirical_pmf(
    realizations: list[FrequencySequence], point: GridPoint, bins: int = 50
) -> PmfResult:
    """Histogram of A(k, r) across waveform realizations, mass normalized to 1."""
    if not realizations:
        raise ValueError("need at least one realization")
    values = np.array([af_sidelobe(seq, point) for seq in realizations])
    counts, edges = np.histogram(values, bins=bins)
    return PmfResult(edges, counts / counts.sum(), float(values.mean()))


def cross_ambiguity(
    w: SampledWaveform, delays: np.ndarray, dopplers: np.ndarray
) -> np.ndarray:
    """Magnitude of the delay-Doppler correlation surface of a waveform.

    Evaluates |integral s(t) conj(s(t - tau)) exp(-j*omega*t) dt| by discrete
    sum, normalized by the origin value (the waveform energy), so the
    mainlobe peak is 1. Delays are realized by linear interpolation with
    zeros outside the waveform support. ``dopplers`` are in rad/s.

    With this kernel sign, the surface at ``(k*T, 2*pi*r*delta_f)`` equals
    ``af_sidelobe(seq, GridPoint(k, -r))``: the phase factor selects symbol
    pairs with ``m_l - m_{l-k} = r``, the r-mirror of the sidelobe count.
    """
    delays = np.atleast_1d(np.asarray(delays, dtype=float))
    dopplers = np.atleast_1d(np.asarray(dopplers, dtype=float))
    if delays.size == 0 or dopplers.size == 0:
        raise ValueError("delay and Doppler grids must be nonempty")
    s = w.samples
    n = s.size
    fs = w.sample_rate
    t = np.arange(n) / fs
    phases = np.exp(-1j * np.outer(dopplers, t))
    grid = np.arange(n, dtype=float)
    out = np.empty((delays.size, dopplers.size))
    for i, tau in enumerate(delays):
        pos = grid - tau * fs
        re = np.interp(pos, grid, s.real, left=0.0, right=0.0)
        im = np.interp(pos, grid, s.imag, left=0.0, right=0.0)
        prod = s * (re - 1j * im)
        out[i] = np.abs(phases @ prod) / n
    return out
