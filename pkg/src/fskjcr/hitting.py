"""First-passage analysis of the flatness stopping rule.

The scaled statistic chi2(L) = L M^2 U(L) has mean M-1 and variance
2(M-1)(1-1/L) under uniform symbols, and for large L behaves like a
Gaussian process. Setting

    chi2_BM(t) = M - 1 + sqrt(2(M-1)(1 - 1/t)) * W(t^2) / t

for a standard Brownian motion W reproduces those moments and the lag
correlation t/(t+k). The stop event U(L) <= gamma2 then becomes a boundary
crossing, W(x) <= b(x) on the stretched clock x = t^2, with

    b(x) = (gamma2 M^2 x - (M-1) sqrt(x)) / sqrt(2(M-1)(1 - 1/sqrt(x))).

The boundary is crossed from above; by the W <-> -W reflection the hitting
law equals that of W first exceeding -b, which is how the simulator is
phrased. The tangent approximation turns the crossing density into a closed
form; it is accurate but not exactly normalized, so the CDF here is left
unnormalized on purpose and its total mass is exposed for inspection.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable, NamedTuple

import numpy as np
from scipy.integrate import quad

from .stopping import StoppingConfig, sample_lengths

__all__ = [
    "HittingModel",
    "HitSample",
    "CdfTable",
    "chi2_mean",
    "chi2_var",
    "chi2_corr_exact",
    "chi2_corr_approx",
    "boundary_b",
    "boundary_db",
    "tangent_pdf",
    "tangent_cdf",
    "tangent_mass",
    "tangent_cdf_grid",
    "simulate_brownian_hit",
    "simulate_brownian_hits",
    "empirical_hitting_cdf",
    "gamma2_for_quantile",
]

# Quadrature lower edge: the density vanishes at t -> 1+, but the closed form
# divides by (1 - 1/t), so integration starts just above 1.
_T_LO = 1.0 + 1e-9
_SQRT_2PI = math.sqrt(2.0 * math.pi)


@dataclass(frozen=True)
class HittingModel:
    """Alphabet size and flatness threshold of one stopping problem."""

    M: int
    gamma2: float

    def __post_init__(self) -> None:
        if self.M < 2:
            raise ValueError("alphabet size M must be at least 2")
        if not self.gamma2 > 0:
            raise ValueError("gamma2 must be positive")


@dataclass(frozen=True)
class HitSample:
    L0: int
    forced: bool


class CdfTable(NamedTuple):
    """Empirical CDF support points and cumulative probabilities."""

    t: np.ndarray
    p: np.ndarray


def chi2_mean(M: int) -> float:
    """Mean of the uniformity statistic: M - 1 for any L."""
    if M < 2:
        raise ValueError("alphabet size M must be at least 2")
    return float(M - 1)


def chi2_var(M: int, L: int) -> float:
    """Variance 2(M-1)(1 - 1/L); exact for i.i.d. uniform symbols."""
    if M < 2 or L < 1:
        raise ValueError("need M >= 2 and L >= 1")
    return 2.0 * (M - 1) * (1.0 - 1.0 / L)


def chi2_corr_exact(L: int, k: int) -> float:
    """Correlation of chi2(L) and chi2(L + k)."""
    if L < 2 or k < 0:
        raise ValueError("need L >= 2 and k >= 0")
    return (
        (L - 1)
        / (L + k)
        / math.sqrt((1.0 - 1.0 / L) * (1.0 - 1.0 / (L + k)))
    )


def chi2_corr_approx(L: int, k: int) -> float:
    """Large-L correlation L/(L + k); off by O(k/L^2)."""
    if L < 2 or k < 0:
        raise ValueError("need L >= 2 and k >= 0")
    return L / (L + k)


def _ab(model: HittingModel) -> tuple[float, float]:
    return model.gamma2 * model.M**2, float(model.M - 1)


def boundary_b(x, model: HittingModel):
    """Crossing boundary b(x) on the stretched clock x = t**2, for x > 1."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 1.0):
        raise ValueError("boundary is defined for x > 1")
    A, B = _ab(model)
    rx = np.sqrt(x)
    val = (A * x - B * rx) / np.sqrt(2.0 * B * (1.0 - 1.0 / rx))
    return float(val) if val.ndim == 0 else val


def boundary_db(x, model: HittingModel):
    """Derivative db/dx of the crossing boundary, for x > 1.

    Closed form (matches central finite differences to ~1e-10 relative):

        db/dx = (A x - (5A/4 + B/2) sqrt(x) + 3B/4)
                / (sqrt(2B) (1 - 1/sqrt(x))**(3/2) x).
    """
    x = np.asarray(x, dtype=float)
    if np.any(x <= 1.0):
        raise ValueError("boundary is defined for x > 1")
    A, B = _ab(model)
    rx = np.sqrt(x)
    num = A * x - (1.25 * A + 0.5 * B) * rx + 0.75 * B
    val = num / (math.sqrt(2.0 * B) * (1.0 - 1.0 / rx) ** 1.5 * x)
    return float(val) if val.ndim == 0 else val


def tangent_pdf(t, model: HittingModel):
    """Tangent approximation to the stopping-length density, on t > 1.

    In the stretched clock the crossing density of a moving boundary c(x) is
    approximately (c(x)/x - c'(x)) phi(c(x)/sqrt(x)) / sqrt(x); with
    c = -b (the upward-crossing mirror) and x = t**2 this collapses to

        f(t) = ((B - A/2) t - B/2) / (sqrt(2B) (1 - 1/t)^{3/2} t^2)
               * exp(-(A t - B)^2 / (4 B (1 - 1/t))) / sqrt(2 pi),

    which is nonnegative on t > 1 for every threshold below the flatness
    maximum (A < 2B, i.e. gamma2 < 2(M-1)/M^2).
    """
    t = np.asarray(t, dtype=float)
    if np.any(t <= 1.0):
        raise ValueError("density is defined for t > 1")
    A, B = _ab(model)
    shrink = 1.0 - 1.0 / t
    slope = ((B - 0.5 * A) * t - 0.5 * B) / (
        math.sqrt(2.0 * B) * shrink**1.5 * t * t
    )
    val = slope * np.exp(-((A * t - B) ** 2) / (4.0 * B * shrink)) / _SQRT_2PI
    return float(val) if val.ndim == 0 else val


def tangent_cdf(t: float, model: HittingModel) -> float:
    """Unnormalized tangent CDF: quadrature of the density from 1+ to t.

    Absolute quadrature tolerance 1e-8. The approximation carries total mass
    slightly different from 1 (see :func:`tangent_mass`); no renormalization
    is applied, so tail values can exceed 1.
    """
    if t <= 1.0:
        raise ValueError("CDF is defined for t > 1")
    val, _ = quad(tangent_pdf, _T_LO, t, args=(model,), epsabs=1e-8, limit=200)
    return val


def tangent_mass(model: HittingModel) -> float:
    """Total mass of the tangent density on (1, inf)."""
    val, _ = quad(
        tangent_pdf, _T_LO, np.inf, args=(model,), epsabs=1e-10, limit=400
    )
    return val


def tangent_cdf_grid(ts, model: HittingModel) -> np.ndarray:
    """Tangent CDF at many ascending points, by cumulative segment quadrature."""
    ts = np.asarray(ts, dtype=float)
    if np.any(ts <= 1.0):
        raise ValueError("CDF is defined for t > 1")
    if np.any(np.diff(ts) < 0):
        raise ValueError("evaluation points must be ascending")
    out = np.empty(ts.size)
    acc = 0.0
    prev = _T_LO
    for i, t in enumerate(ts):
        if t > prev:
            seg, _ = quad(
                tangent_pdf, prev, t, args=(model,), epsabs=1e-10, limit=200
            )
            acc += seg
            prev = t
        out[i] = acc
    return out


def simulate_brownian_hit(
    rng: np.random.Generator,
    model: HittingModel,
    t_max: int,
    barrier: Callable[[float], float] | None = None,
) -> HitSample:
    """First integer t >= 2 where a Brownian path exceeds the barrier.

    The path is sampled on the stretched clock x = t**2 at integer t, so
    increments have variance (t+1)**2 - t**2. The default barrier is -b
    (the mirror image of the crossing boundary; see the module docstring),
    making this the Brownian surrogate of the stopping rule. If the barrier
    is never exceeded by t_max the sample is forced.
    """
    if t_max <= 1:
        raise ValueError("t_max must exceed 1")
    if barrier is None:
        barrier = lambda x: -boundary_b(x, model)
    w = rng.standard_normal() # W(1), variance 1
    for t in range(2, t_max + 1):
        w += math.sqrt(2.0 * t - 1.0) * rng.standard_normal()
        if w > barrier(t * t):
            return HitSample(t, False)
    return HitSample(t_max, True)


def simulate_brownian_hits(
    rng: np.random.Generator,
    model: HittingModel,
    runs: int,
    t_max: int,
    barrier: Callable[[float], float] | None = None,
) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized batch of :func:`simulate_brownian_hit` draws.

    Returns ``(hit_times, forced)``. One RNG column per step over the alive
    paths, so results for a given seed are reproducible but differ from
    looping the scalar version.
    """
    if t_max <= 1 or runs < 1:
        raise ValueError("need t_max > 1 and runs >= 1")
    if barrier is None:
        barrier = lambda x: -boundary_b(x, model)
    w = rng.standard_normal(runs)
    times = np.full(runs, t_max, dtype=np.int64)
    forced = np.ones(runs, dtype=bool)
    alive = np.arange(runs)
    for t in range(2, t_max + 1):
        w[alive] += math.sqrt(2.0 * t - 1.0) * rng.standard_normal(alive.size)
        hit = w[alive] > barrier(float(t * t))
        rows = alive[hit]
        times[rows] = t
        forced[rows] = False
        alive = alive[~hit]
        if alive.size == 0:
            break
    return times, forced


def empirical_hitting_cdf(
    rng: np.random.Generator, model: HittingModel, runs: int
) -> CdfTable:
    """Empirical CDF of the stopping length from true symbol streams.

    Uses the flatness-only rule (unit lower bounds, no cap).
    """
    config = StoppingConfig(gamma2=model.gamma2)
    lengths, _ = sample_lengths(rng, model.M, config, runs)
    t = np.unique(lengths)
    p = np.searchsorted(np.sort(lengths), t, side="right") / runs
    return CdfTable(t.astype(np.int64), p)


def gamma2_for_quantile(L1: int, alpha: float, M: int) -> float:
    """Threshold gamma2 whose tangent CDF puts mass 1 - alpha below L1.

    Solves tangent_cdf(L1) = 1 - alpha by bisection on gamma2 (geometric
    midpoints, 1e-8 relative width). The CDF is checked to be nondecreasing
    in gamma2 across the bracket before bisecting.
    """
    if not 0.0 < alpha < 1.0:
        raise ValueError("alpha must lie in (0, 1)")
    if L1 <= 1:
        raise ValueError("L1 must exceed 1")
    target = 1.0 - alpha

    def cdf_at(g2: float) -> float:
        return tangent_cdf(float(L1), HittingModel(M, g2))

    # The CDF at L1 rises steeply with gamma2 near the threshold whose
    # drift crossing b = 0 sits exactly at L1, i.e. gamma2 = (M-1)/(M^2 L1).
    # Anchor there and expand; far looser thresholds leave the regime the
    # approximation is built for, so they are not used as bracket ends.
    cap = (M - 1) / M**2 # loosest admissible threshold
    anchor = cap / L1
    if cdf_at(anchor) >= target:
        hi = anchor
        lo = anchor
        for _ in range(200):
            lo /= 2.0
            if cdf_at(lo) < target:
                break
        else:
            raise ValueError("no bracket: CDF never drops below the target")
    else:
        lo = anchor
        hi = anchor
        while True:
            if hi >= cap:
                raise ValueError(
                    "no bracket: even the loosest threshold is too strict"
                )
            hi = min(hi * 2.0, cap)
            if cdf_at(hi) >= target:
                break
            lo = hi

    probe = np.geomspace(lo, hi, 6)
    vals = [cdf_at(g) for g in probe]
    if any(b < a - 1e-9 for a, b in zip(vals, vals[1:])):
        raise ValueError("tangent CDF is not monotone in gamma2 on the bracket")

    while (hi - lo) / lo > 1e-8:
        mid = math.sqrt(lo * hi)
        if cdf_at(mid) < target:
            lo = mid
        else:
            hi = mid
    return math.sqrt(lo * hi)
