"""Declarative figure specs and deterministic SVG rendering.

One figure per experiment. Each spec lists the CSV panels it needs and the
columns it will touch; reading and column checks happen before any drawing
so a schema mismatch fails loudly with the file name in the message.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Callable

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np
from matplotlib.figure import Figure

from .reader import SchemaError, Table, read_table

__all__ = ["FigureSpec", "FIGURES", "build_figure", "render"]

# Stable ids inside the SVG output, so identical inputs give identical bytes.
matplotlib.rcParams["svg.hashsalt"] = "fskjcr-figs"


@dataclass(frozen=True)
class FigureSpec:
    name: str
    inputs: dict[str, Path]
    required: dict[str, tuple[str, ...]]
    out_path: Path
    draw: Callable[[dict[str, Table], Figure], None]


def build_figure(spec: FigureSpec) -> Figure:
    """Read the inputs, verify the schema, and draw onto a fresh figure."""
    tables = {label: read_table(path) for label, path in spec.inputs.items()}
    for label, cols in spec.required.items():
        tables[label].require(*cols)
    fig = Figure(figsize=(8.0, 4.5))
    spec.draw(tables, fig)
    return fig


def render(spec: FigureSpec) -> Path:
    fig = build_figure(spec)
    spec.out_path.parent.mkdir(parents=True, exist_ok=True)
    fig.savefig(spec.out_path, format="svg", metadata={"Date": None})
    plt.close(fig)
    return spec.out_path


def _scheme_label(tag: float) -> str:
    return "dynamic" if int(tag) == 0 else f"L = {int(tag)}"


def _positive(y: np.ndarray) -> np.ndarray:
    return np.where(y > 0, y, np.nan)


# ------------------------------------------------------------------ drawers

def _draw_af_vs_l(tables: dict[str, Table], fig: Figure) -> None:
    stats, samples = tables["stats"], tables["samples"]
    ax_mean, ax_var = fig.subplots(1, 2)
    ax_mean.scatter(samples.col("L"), samples.col("sidelobe"), s=4, alpha=0.25,
                    color="0.6", label="realizations")
    ax_mean.plot(stats.col("L"), stats.col("sample_mean"), "o-", label="sample mean")
    ax_mean.plot(stats.col("L"), stats.col("analytic_mean"), "k--", label="analytic mean")
    ax_mean.set_xlabel("subpulse count L")
    ax_mean.set_ylabel("sidelobe at (T, 0)")
    ax_mean.legend(fontsize=8)
    ax_var.plot(stats.col("L"), _positive(stats.col("sample_var")), "o-",
                label="sample variance")
    ax_var.plot(stats.col("L"), _positive(stats.col("analytic_var")), "k--",
                label="analytic variance")
    ax_var.set_yscale("log")
    ax_var.set_xlabel("subpulse count L")
    ax_var.set_ylabel("sidelobe variance")
    ax_var.legend(fontsize=8)


def _draw_flatness_stats(tables: dict[str, Table], fig: Figure) -> None:
    curve, crossings = tables["curve"], tables["crossings"]
    L = curve.col("L")
    emp = curve.col("mean_u_empirical")
    mean = curve.col("mean_u_analytic")
    std = curve.col("std_u_analytic")
    gamma2 = float(curve.col("gamma2")[0])
    ax = fig.subplots()
    ax.plot(L, _positive(emp), label="empirical mean")
    ax.plot(L, _positive(mean), "k--", label="analytic mean")
    ax.plot(L, _positive(mean + 2 * std), "r:", label="mean + 2 std")
    ax.plot(L, _positive(mean - 2 * std), "b:", label="mean - 2 std")
    ax.axhline(gamma2, color="0.3", lw=0.8)
    for name in ("crossing_lower", "crossing_upper"):
        value = float(crossings.col(name)[0])
        if value > 0:
            ax.axvline(value, color="0.6", lw=0.8, ls="--")
    ax.set_yscale("log")
    ax.set_xlabel("subpulse count L")
    ax.set_ylabel("flatness U(L)")
    ax.legend(fontsize=8, loc="upper right")
    # linear-scale zoom windows: the early drop, and a late slice if present
    lo_end = min(30.0, float(L.max()))
    windows = [(float(L.min()), lo_end, [0.55, 0.62, 0.3, 0.3])]
    if L.max() >= 330:
        windows.append((301.0, 330.0, [0.15, 0.2, 0.3, 0.3]))
    for x0, x1, rect in windows:
        inset = ax.inset_axes(rect)
        sel = (L >= x0) & (L <= x1)
        inset.plot(L[sel], emp[sel])
        inset.plot(L[sel], mean[sel], "k--")
        inset.plot(L[sel], (mean + 2 * std)[sel], "r:")
        inset.plot(L[sel], (mean - 2 * std)[sel], "b:")
        inset.tick_params(labelsize=6)


def _draw_hitcdf(tables: dict[str, Table], fig: Figure) -> None:
    cdfs = tables["cdfs"]
    ax = fig.subplots()
    t = cdfs.col("t")
    ax.plot(t, cdfs.col("cdf_empirical"), label="stopping rule")
    ax.plot(t, cdfs.col("cdf_brownian"), label="Brownian surrogate")
    ax.plot(t, cdfs.col("cdf_tangent"), "k--", label="tangent closed form")
    ax.set_xlabel("stopping length")
    ax.set_ylabel("CDF")
    ax.legend(fontsize=8, loc="lower right")


def _draw_af_pmf(tables: dict[str, Table], fig: Figure) -> None:
    pmf, summary = tables["pmf"], tables["summary"]
    ax = fig.subplots()
    points = sorted({(int(k), int(r)) for k, r in zip(pmf.col("k"), pmf.col("r"))})
    for k, r in points:
        sel = (pmf.col("k") == k) & (pmf.col("r") == r)
        lo, hi = pmf.col("bin_lo")[sel], pmf.col("bin_hi")[sel]
        centers = (lo + hi) / 2.0
        ax.bar(centers, pmf.col("mass")[sel], width=hi - lo, alpha=0.5,
               label=f"delay {k}T, offset {r}")
    for k, r, limit in zip(summary.col("k"), summary.col("r"),
                           summary.col("mean_limit")):
        ax.axvline(limit, color="0.3", lw=0.8, ls="--")
    ax.set_xlabel("sidelobe value")
    ax.set_ylabel("probability mass")
    ax.legend(fontsize=8)


def _draw_mse_vs_snr(tables: dict[str, Table], fig: Figure) -> None:
    axes = fig.subplots(1, 2)
    for ax, label, unit in (
        (axes[0], "delay", "delay MSE / T^2"),
        (axes[1], "doppler", "Doppler MSE (rad/s)^2"),
    ):
        table = tables[label]
        tags = sorted(set(table.col("scheme_L").astype(int)))
        for tag in tags:
            sel = table.col("scheme_L").astype(int) == tag
            snr = table.col("snr_db")[sel]
            ax.plot(snr, _positive(table.col("mean")[sel]), "o-",
                    label=f"{_scheme_label(tag)} mean")
            ax.plot(snr, _positive(table.col("best")[sel]), ":", lw=0.9)
            ax.plot(snr, _positive(table.col("worst")[sel]), ":", lw=0.9)
        ax.set_yscale("log")
        ax.set_xlabel("SNR (dB)")
        ax.set_ylabel(unit)
        ax.legend(fontsize=7)


def _cdf_panel(ax, table: Table, log_x: bool) -> None:
    tags = sorted(set(table.col("scheme_L").astype(int)))
    for tag in tags:
        sel = table.col("scheme_L").astype(int) == tag
        ax.step(table.col("value")[sel], table.col("cdf")[sel], where="post",
                label=_scheme_label(tag))
    if log_x and np.all(table.col("value") > 0):
        ax.set_xscale("log")
    ax.set_ylabel("CDF")
    ax.legend(fontsize=7)


def _draw_cdf_at_snr(tables: dict[str, Table], fig: Figure) -> None:
    axes = fig.subplots(1, 3)
    _cdf_panel(axes[0], tables["delay_cdf"], log_x=True)
    axes[0].set_xlabel("delay MSE / T^2")
    _cdf_panel(axes[1], tables["doppler_cdf"], log_x=True)
    axes[1].set_xlabel("Doppler MSE (rad/s)^2")
    _cdf_panel(axes[2], tables["latency_cdf"], log_x=False)
    axes[2].set_xlabel("subpulse count")
    # upper-tail zoom with the quantile markers from the extraction table
    table1 = tables["table1"]
    delay = tables["delay_cdf"]
    inset = axes[0].inset_axes([0.45, 0.12, 0.5, 0.45])
    tags = sorted(set(delay.col("scheme_L").astype(int)))
    for tag in tags:
        sel = delay.col("scheme_L").astype(int) == tag
        inset.step(delay.col("value")[sel], delay.col("cdf")[sel], where="post")
    for q, x in zip(table1.col("quantile_pct"), table1.col("dynamic_mse")):
        inset.axhline(q / 100.0, color="0.5", lw=0.6, ls=":")
        inset.axvline(x, color="0.5", lw=0.6, ls=":")
    inset.set_ylim(0.85, 1.005)
    inset.tick_params(labelsize=6)


def _draw_gamma2_solve(tables: dict[str, Table], fig: Figure) -> None:
    sol = tables["solution"]
    ax = fig.subplots()
    names = ["target", "cdf_at_L1", "empirical_cdf_at_L1"]
    values = [float(sol.col(n)[0]) for n in names]
    ax.bar(["target", "tangent model", "simulated"], values, color="0.7")
    ax.set_ylim(0.0, 1.05)
    ax.set_ylabel(f"P(stopping length <= {int(sol.col('L1')[0])})")
    ax.set_title(
        f"M = {int(sol.col('M')[0])}, alpha = {float(sol.col('alpha')[0]):g}, "
        f"solved gamma2 = {float(sol.col('gamma2')[0]):.4e}"
    )


# ----------------------------------------------------------------- registry

_PANELS: dict[str, tuple[dict[str, tuple[str, ...]], Callable]] = {
    "af-vs-l": (
        {
            "stats": ("L", "sample_mean", "sample_var", "analytic_mean", "analytic_var"),
            "samples": ("L", "sidelobe"),
        },
        _draw_af_vs_l,
    ),
    "flatness-stats": (
        {
            "curve": ("L", "mean_u_empirical", "mean_u_analytic", "std_u_analytic", "gamma2"),
            "crossings": ("crossing_lower", "crossing_upper"),
        },
        _draw_flatness_stats,
    ),
    "hitcdf": (
        {"cdfs": ("t", "cdf_empirical", "cdf_brownian", "cdf_tangent")},
        _draw_hitcdf,
    ),
    "af-pmf": (
        {
            "pmf": ("k", "r", "bin_lo", "bin_hi", "mass"),
            "summary": ("k", "r", "sample_mean", "mean_limit"),
        },
        _draw_af_pmf,
    ),
    "mse-vs-snr": (
        {
            "delay": ("scheme_L", "snr_db", "mean", "best", "worst"),
            "doppler": ("scheme_L", "snr_db", "mean", "best", "worst"),
        },
        _draw_mse_vs_snr,
    ),
    "cdf-at-snr": (
        {
            "delay_cdf": ("scheme_L", "value", "cdf"),
            "doppler_cdf": ("scheme_L", "value", "cdf"),
            "latency_cdf": ("scheme_L", "value", "cdf"),
            "table1": ("quantile_pct", "dynamic_mse"),
        },
        _draw_cdf_at_snr,
    ),
    "gamma2-solve": (
        {
            "solution": (
                "L1", "alpha", "M", "gamma2", "cdf_at_L1", "target",
                "empirical_cdf_at_L1",
            ),
        },
        _draw_gamma2_solve,
    ),
}


def make_spec(experiment: str, in_dir: str | Path, out_dir: str | Path) -> FigureSpec:
    """Spec for one experiment: panel CSVs in ``in_dir``, SVG in ``out_dir``."""
    if experiment not in _PANELS:
        raise SchemaError(f"unknown experiment: {experiment}")
    required, draw = _PANELS[experiment]
    in_dir, out_dir = Path(in_dir), Path(out_dir)
    inputs = {label: in_dir / f"{experiment}_{label}.csv" for label in required}
    return FigureSpec(
        name=experiment,
        inputs=inputs,
        required=required,
        out_path=out_dir / f"{experiment}.svg",
        draw=draw,
    )


FIGURES = tuple(sorted(_PANELS))
