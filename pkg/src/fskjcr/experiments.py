"""Named experiments and their CSV panels.

Each experiment is a function from a validated configuration and a seeded
generator to a set of named result tables; the CLI writes each panel to
``<experiment>_<panel>.csv``. Configurations are flat key=value files with
command-line overrides; every experiment is reproducible bit-for-bit from
(config, seed).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields, replace

import numpy as np

from . import __version__
from .ambiguity import GridPoint, af_sidelobe, af_stats, empirical_pmf
from .hitting import (
    HittingModel,
    empirical_hitting_cdf,
    gamma2_for_quantile,
    simulate_brownian_hits,
    tangent_cdf,
    tangent_cdf_grid,
    tangent_mass,
)
from .results import ResultTable, config_hash
from .simulation import Scheme, default_grid, run_mse_cdf, run_mse_sweep
from .stopping import StoppingConfig, flatness_mean_curve, sample_lengths
from .waveform import WaveformParams, random_sequence

__all__ = ["ExperimentConfig", "EXPERIMENTS", "run_experiment"]


@dataclass(frozen=True)
class ExperimentConfig:
    """Flat scalar knobs shared by all experiments (unused ones ignored)."""

    M: int = 32
    T: float = 1.0
    delta_f: float = 1.0
    gamma1: float = 1.0
    gamma2: float = 1e-4
    gamma3: float = 1.0
    gamma4: float = math.inf
    snr_db: tuple = (0.0, 5.0, 10.0, 15.0, 20.0)
    cdf_snr_db: float = 20.0
    hit_runs: int = 10_000
    t_max: int = 1500
    mse_realizations: int = 200
    mse_trials: int = 50
    cdf_realizations: int = 1000
    cdf_trials: int = 100
    af_lengths: tuple = (2, 5, 10, 20, 50, 100, 200, 500, 1000)
    af_realizations: int = 1000
    pmf_points: tuple = ((1, 0), (2, 0), (1, 1))
    bins: int = 40
    L_max: int = 600
    fixed_lengths: tuple = (200, 300, 400)
    bound_lo: int = 200
    bound_hi: int = 400
    L1: int = 450
    alpha: float = 0.1
    seed: int = 1234

    def scaled(self, factor: int) -> "ExperimentConfig":
        """Multiply the realization-count knobs (the paper-scale switch)."""
        return replace(
            self,
            hit_runs=self.hit_runs * factor,
            af_realizations=self.af_realizations * factor,
            mse_realizations=self.mse_realizations * factor,
            cdf_realizations=self.cdf_realizations * factor,
        )

    def params(self) -> WaveformParams:
        return WaveformParams(M=self.M, T=self.T, delta_f=self.delta_f)

    def stopping(self) -> StoppingConfig:
        return StoppingConfig(
            gamma2=self.gamma2,
            gamma1=self.gamma1,
            gamma3=self.gamma3,
            gamma4=self.gamma4,
        )

    def as_mapping(self) -> dict:
        out = {}
        for f in fields(self):
            v = getattr(self, f.name)
            if isinstance(v, tuple):
                v = ",".join(str(x) for x in v)
            out[f.name] = str(v)
        return out


def _parse_value(name: str, text: str, like):
    text = text.strip()
    if isinstance(like, tuple):
        if name == "pmf_points":
            pts = []
            for item in text.split(","):
                k, _, r = item.partition(":")
                pts.append((int(k), int(r)))
            return tuple(pts)
        items = [t for t in text.split(",") if t.strip()]
        caster = float if any(isinstance(x, float) for x in like) else int
        return tuple(caster(t) for t in items)
    if isinstance(like, bool):
        return text.lower() in ("1", "true", "yes")
    return type(like)(float(text)) if isinstance(like, int) else type(like)(text)


def config_from_items(items: dict[str, str]) -> ExperimentConfig:
    """Build a config from string key=value pairs, rejecting unknown keys."""
    defaults = ExperimentConfig()
    known = {f.name for f in fields(defaults)}
    values = {}
    for key, text in items.items():
        if key not in known:
            raise ValueError(f"unknown config key: {key}")
        values[key] = _parse_value(key, text, getattr(defaults, key))
    return replace(defaults, **values)


def _meta(config: ExperimentConfig) -> dict[str, str]:
    return {
        "config_hash": config_hash(config.as_mapping()),
        "seed": str(config.seed),
        "version": __version__,
    }


def run_af_vs_l(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    """Sidelobe samples and statistics at the grid point (1, 0) versus L."""
    point = GridPoint(1, 0)
    meta = _meta(config)
    stat_rows = []
    sample_rows = []
    for L in config.af_lengths:
        vals = np.empty(config.af_realizations)
        for i in range(config.af_realizations):
            vals[i] = af_sidelobe(random_sequence(rng, config.M, L), point)
        ref = af_stats(L, config.M, point)
        stat_rows.append(
            (L, vals.mean(), vals.var(ddof=1), ref.mean, ref.variance)
        )
        sample_rows.extend((L, v) for v in vals)
    stats = ResultTable(
        ["L", "sample_mean", "sample_var", "analytic_mean", "analytic_var"],
        stat_rows,
        dict(meta),
    )
    samples = ResultTable(["L", "sidelobe"], sample_rows, dict(meta))
    return {"stats": stats, "samples": samples}


def run_flatness_stats(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    """Mean flatness versus L with the analytic band and threshold crossings."""
    M = config.M
    meta = _meta(config)
    emp = flatness_mean_curve(rng, M, config.L_max, config.hit_runs)
    L = np.arange(1, config.L_max + 1)
    mean = (M - 1) / (L * M * M)
    std = np.sqrt(2.0 * (M - 1) * (1.0 - 1.0 / L)) / (L * M * M)
    rows = list(zip(L, emp, mean, std, [config.gamma2] * L.size))
    curve = ResultTable(
        ["L", "mean_u_empirical", "mean_u_analytic", "std_u_analytic", "gamma2"],
        rows,
        dict(meta),
    )
    lower = mean - 2.0 * std <= config.gamma2
    upper = mean + 2.0 * std <= config.gamma2
    lo = int(L[lower][0]) if lower.any() else -1
    hi = int(L[upper][0]) if upper.any() else -1
    crossing = ResultTable(
        ["crossing_lower", "crossing_upper"], [(lo, hi)], dict(meta)
    )
    return {"curve": curve, "crossings": crossing}


def run_hitcdf(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    """Empirical, Brownian-surrogate, and tangent CDFs of the stopping length."""
    model = HittingModel(config.M, config.gamma2)
    meta = _meta(config)
    emp = empirical_hitting_cdf(rng, model, config.hit_runs)
    bm_times, _ = simulate_brownian_hits(rng, model, config.hit_runs, config.t_max)
    t_hi = int(max(emp.t.max(), bm_times.max()))
    ts = np.arange(2, t_hi + 1)
    idx = np.searchsorted(emp.t, ts, side="right") - 1
    emp_cdf = np.where(idx >= 0, emp.p[np.clip(idx, 0, None)], 0.0)
    bm_sorted = np.sort(bm_times)
    bm_cdf = np.searchsorted(bm_sorted, ts, side="right") / bm_times.size
    tan_cdf = tangent_cdf_grid(ts, model)
    curve = ResultTable(
        ["t", "cdf_empirical", "cdf_brownian", "cdf_tangent"],
        list(zip(ts, emp_cdf, bm_cdf, tan_cdf)),
        dict(meta),
    )
    keep = ts >= 200
    sup_emp_tan = float(np.max(np.abs(emp_cdf[keep] - tan_cdf[keep]))) if keep.any() else 0.0
    sup_tan_bm = float(np.max(np.abs(tan_cdf[keep] - bm_cdf[keep]))) if keep.any() else 0.0
    emp_mean = float(np.sum(emp.t * np.diff(np.concatenate(([0.0], emp.p)))))
    summary = ResultTable(
        [
            "tangent_mass",
            "sup_emp_vs_tangent_ge200",
            "sup_tangent_vs_brownian_ge200",
            "mean_empirical",
            "mean_brownian",
        ],
        [
            (
                tangent_mass(model),
                sup_emp_tan,
                sup_tan_bm,
                emp_mean,
                float(bm_times.mean()),
            )
        ],
        dict(meta),
    )
    return {"cdfs": curve, "summary": summary}


def run_af_pmf(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    """Sidelobe PMFs over dynamic-length realizations at chosen grid points."""
    meta = _meta(config)
    scheme = Scheme.dynamic(config.gamma2)
    seqs = [scheme.realize(rng, config.M) for _ in range(config.af_realizations)]
    pmf_rows = []
    summary_rows = []
    for k, r in config.pmf_points:
        point = GridPoint(k, r)
        res = empirical_pmf(seqs, point, bins=config.bins)
        for lo, hi, mass in zip(res.edges[:-1], res.edges[1:], res.mass):
            pmf_rows.append((k, r, lo, hi, mass))
        limit = (config.M - abs(r)) / config.M**2
        summary_rows.append((k, r, res.sample_mean, limit))
    pmf = ResultTable(["k", "r", "bin_lo", "bin_hi", "mass"], pmf_rows, dict(meta))
    summary = ResultTable(
        ["k", "r", "sample_mean", "mean_limit"], summary_rows, dict(meta)
    )
    return {"pmf": pmf, "summary": summary}


def _schemes_for_sweep(config: ExperimentConfig) -> list[Scheme]:
    schemes = [Scheme.dynamic(config.gamma2)]
    schemes += [Scheme.fixed(L) for L in config.fixed_lengths]
    return schemes


def _schemes_for_cdf(config: ExperimentConfig) -> list[Scheme]:
    bounded = Scheme.dynamic(config.gamma2, bounds=(config.bound_lo, config.bound_hi))
    return [bounded] + [Scheme.fixed(L) for L in config.fixed_lengths]


def run_mse_vs_snr(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    """Average and extreme MSEs versus SNR for dynamic and fixed schemes."""
    meta = _meta(config)
    params = config.params()
    grid = default_grid(params, L_max=max(config.fixed_lengths))
    delay_rows = []
    doppler_rows = []
    for scheme in _schemes_for_sweep(config):
        # Rows stay numeric: scheme_L is the fixed length, 0 for dynamic.
        tag = scheme.L or 0
        res = run_mse_sweep(
            rng,
            scheme,
            params,
            grid,
            config.snr_db,
            config.mse_realizations,
            config.mse_trials,
        )
        for i, snr in enumerate(res.snr_db):
            delay_rows.append(
                (tag, snr, res.delay_mean[i], res.delay_best[i], res.delay_worst[i])
            )
            doppler_rows.append(
                (tag, snr, res.doppler_mean[i], res.doppler_best[i], res.doppler_worst[i])
            )
    cols = ["scheme_L", "snr_db", "mean", "best", "worst"]
    return {
        "delay": ResultTable(cols, delay_rows, dict(meta)),
        "doppler": ResultTable(cols, doppler_rows, dict(meta)),
    }


def run_cdf_at_snr(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    """Per-realization MSE and latency CDFs at one SNR, plus the quantile table."""
    meta = _meta(config)
    params = config.params()
    grid = default_grid(params, L_max=max(config.fixed_lengths))
    results = {}
    for scheme in _schemes_for_cdf(config):
        results[scheme.label] = run_mse_cdf(
            rng,
            scheme,
            params,
            grid,
            config.cdf_snr_db,
            config.cdf_realizations,
            config.cdf_trials,
        )
    delay_rows, doppler_rows, latency_rows, summary_rows = [], [], [], []
    tags = {label: (0 if label.startswith("dynamic") else int(label[5:]))
            for label in results}
    for label, res in results.items():
        tag = tags[label]
        n = res.delay_mse.size
        cdf = (np.arange(n) + 1.0) / n
        for v, p in zip(np.sort(res.delay_mse), cdf):
            delay_rows.append((tag, v, p))
        for v, p in zip(np.sort(res.doppler_mse), cdf):
            doppler_rows.append((tag, v, p))
        for v, p in zip(np.sort(res.lengths), cdf):
            latency_rows.append((tag, v, p))
        summary_rows.append(
            (
                tag,
                res.delay_mse.mean(),
                res.delay_mse.var(ddof=1),
                res.doppler_mse.mean(),
                res.doppler_mse.var(ddof=1),
                res.lengths.mean(),
                res.lengths.var(ddof=1),
            )
        )
    dyn = results["dynamic_bounded"]
    table_rows = []
    for q in (90.0, 95.0, 99.0):
        threshold = float(np.quantile(dyn.delay_mse, q / 100.0))
        row = [q, threshold]
        for L in config.fixed_lengths:
            fixed = results[f"fixed{L}"]
            row.append(float(np.mean(fixed.delay_mse <= threshold)) * 100.0)
        table_rows.append(tuple(row))
    table_cols = ["quantile_pct", "dynamic_mse"] + [
        f"fixed{L}_pct" for L in config.fixed_lengths
    ]
    cols = ["scheme_L", "value", "cdf"]
    return {
        "delay_cdf": ResultTable(cols, delay_rows, dict(meta)),
        "doppler_cdf": ResultTable(cols, doppler_rows, dict(meta)),
        "latency_cdf": ResultTable(cols, latency_rows, dict(meta)),
        "table1": ResultTable(table_cols, table_rows, dict(meta)),
        "summary": ResultTable(
            [
                "scheme_L",
                "delay_mean",
                "delay_var",
                "doppler_mean",
                "doppler_var",
                "latency_mean",
                "latency_var",
            ],
            summary_rows,
            dict(meta),
        ),
    }


def run_gamma2_solve(config: ExperimentConfig, rng: np.random.Generator) -> dict:
    """Threshold solving for a target stopping-length quantile, with checks."""
    meta = _meta(config)
    g2 = gamma2_for_quantile(config.L1, config.alpha, config.M)
    model = HittingModel(config.M, g2)
    plugged = tangent_cdf(float(config.L1), model)
    lengths, _ = sample_lengths(
        rng, config.M, StoppingConfig(gamma2=g2), config.hit_runs
    )
    empirical = float(np.mean(lengths <= config.L1))
    table = ResultTable(
        ["L1", "alpha", "M", "gamma2", "cdf_at_L1", "target", "empirical_cdf_at_L1"],
        [(config.L1, config.alpha, config.M, g2, plugged, 1.0 - config.alpha, empirical)],
        dict(meta),
    )
    return {"solution": table}


EXPERIMENTS = {
    "af-vs-l": run_af_vs_l,
    "flatness-stats": run_flatness_stats,
    "hitcdf": run_hitcdf,
    "af-pmf": run_af_pmf,
    "mse-vs-snr": run_mse_vs_snr,
    "cdf-at-snr": run_cdf_at_snr,
    "gamma2-solve": run_gamma2_solve,
}


def run_experiment(name: str, config: ExperimentConfig) -> dict[str, ResultTable]:
    """Dispatch one named experiment with a generator seeded from the config."""
    if name not in EXPERIMENTS:
        raise ValueError(f"unknown experiment: {name}")
    rng = np.random.default_rng(config.seed)
    return EXPERIMENTS[name](config, rng)
