"""Named experiments: schemas, analytic columns, and reproducibility.

Every run here uses shrunken counts so the whole module stays fast;
statistical claims at full scale live in the acceptance tests.
"""

import dataclasses

import numpy as np
import pytest

from fskjcr.experiments import (
    EXPERIMENTS,
    ExperimentConfig,
    config_from_items,
    run_experiment,
)

TINY = ExperimentConfig(
    M=4,
    gamma2=0.02,
    af_lengths=(2, 5, 10, 25),
    af_realizations=60,
    L_max=40,
    hit_runs=300,
    t_max=300,
    snr_db=(10.0, 20.0),
    cdf_snr_db=20.0,
    mse_realizations=4,
    mse_trials=5,
    cdf_realizations=5,
    cdf_trials=4,
    fixed_lengths=(10, 20),
    bound_lo=3,
    bound_hi=60,
    pmf_points=((1, 0), (2, 1)),
    bins=8,
    L1=40,
    alpha=0.2,
    seed=99,
)


def test_experiment_registry_names():
    assert sorted(EXPERIMENTS) == [
        "af-pmf",
        "af-vs-l",
        "cdf-at-snr",
        "flatness-stats",
        "gamma2-solve",
        "hitcdf",
        "mse-vs-snr",
    ]


def test_af_vs_l_analytic_column_and_variance_trend():
    tables = run_experiment("af-vs-l", TINY)
    stats = tables["stats"]
    ls = stats.column("L")
    analytic = stats.column("analytic_mean")
    assert np.allclose(analytic, (ls - 1) / ls * (1 / TINY.M))
    var = stats.column("sample_var")
    assert var[-1] < var[0] # tightens with length
    assert set(tables) == {"stats", "samples"}


def test_flatness_stats_columns():
    tables = run_experiment("flatness-stats", TINY)
    curve = tables["curve"]
    ls = curve.column("L")
    M = TINY.M
    assert np.allclose(curve.column("mean_u_analytic"), (M - 1) / (ls * M**2))
    want_sd = np.sqrt(2 * (M - 1) * (1 - 1 / ls)) / (ls * M**2)
    assert np.allclose(curve.column("std_u_analytic"), want_sd)
    # empirical mean stays inside a CLT band around the analytic mean
    emp = curve.column("mean_u_empirical")
    band = 6 * want_sd / np.sqrt(TINY.af_realizations)
    assert np.all(np.abs(emp - (M - 1) / (ls * M**2)) <= band)
    crossings = tables["crossings"]
    assert crossings.columns == ["crossing_lower", "crossing_upper"]


def test_hitcdf_monotone_columns():
    tables = run_experiment("hitcdf", TINY)
    cdfs = tables["cdfs"]
    for name in ("cdf_empirical", "cdf_brownian", "cdf_tangent"):
        col = cdfs.column(name)
        assert np.all(np.diff(col) >= -1e-12)
        assert col[-1] <= 1.2
    summary = tables["summary"]
    assert summary.columns[0] == "tangent_mass"


def test_af_pmf_mass_sums_to_one():
    tables = run_experiment("af-pmf", TINY)
    pmf = tables["pmf"]
    ks = pmf.column("k")
    rs = pmf.column("r")
    mass = pmf.column("mass")
    for (k, r) in {(1, 0), (2, 1)}:
        sel = (ks == k) & (rs == r)
        assert np.sum(mass[sel]) == pytest.approx(1.0)
    summary = tables["summary"]
    assert np.allclose(
        summary.column("mean_limit"),
        [(TINY.M - abs(r)) / TINY.M**2 for _, r in TINY.pmf_points],
    )


def test_mse_vs_snr_schema():
    tables = run_experiment("mse-vs-snr", TINY)
    for panel in ("delay", "doppler"):
        t = tables[panel]
        assert t.columns == ["scheme_L", "snr_db", "mean", "best", "worst"]
        tags = set(t.column("scheme_L"))
        assert tags == {0, 10, 20}
        assert np.all(t.column("best") <= t.column("mean") + 1e-15)
        assert np.all(t.column("mean") <= t.column("worst") + 1e-15)


def test_cdf_at_snr_panels():
    tables = run_experiment("cdf-at-snr", TINY)
    assert set(tables) == {"delay_cdf", "doppler_cdf", "latency_cdf",
                           "table1", "summary"}
    lat = tables["latency_cdf"]
    tags = lat.column("scheme_L")
    vals = lat.column("value")
    # fixed schemes are step functions at L
    for L in (10, 20):
        assert set(vals[tags == L]) == {float(L)}
    # bounded dynamic lengths stay inside the bounds
    dyn = vals[tags == 0]
    assert np.all((dyn >= TINY.bound_lo) & (dyn <= TINY.bound_hi))
    t1 = tables["table1"]
    assert t1.columns[:2] == ["quantile_pct", "dynamic_mse"]
    assert list(t1.column("quantile_pct")) == [90, 95, 99]
    pct = np.array([row[2:] for row in t1.rows], dtype=float)
    assert np.all((0 <= pct) & (pct <= 100))


def test_gamma2_solve_schema():
    tables = run_experiment("gamma2-solve", TINY)
    sol = tables["solution"]
    row = dict(zip(sol.columns, sol.rows[0]))
    assert row["L1"] == TINY.L1 and row["M"] == TINY.M
    assert abs(row["cdf_at_L1"] - row["target"]) < 1e-4
    assert 0 <= row["empirical_cdf_at_L1"] <= 1


def test_experiments_reproducible():
    for name in ("af-vs-l", "hitcdf", "mse-vs-snr"):
        a = run_experiment(name, TINY)
        b = run_experiment(name, TINY)
        for panel in a:
            assert a[panel].rows == b[panel].rows


def test_seed_changes_rows():
    other = dataclasses.replace(TINY, seed=100)
    a = run_experiment("af-vs-l", TINY)["samples"]
    b = run_experiment("af-vs-l", other)["samples"]
    assert a.rows != b.rows


def test_scaled_multiplies_realization_counts():
    big = TINY.scaled(10)
    assert big.hit_runs == 10 * TINY.hit_runs
    assert big.af_realizations == 10 * TINY.af_realizations
    assert big.mse_realizations == 10 * TINY.mse_realizations
    assert big.cdf_realizations == 10 * TINY.cdf_realizations
    assert big.mse_trials == TINY.mse_trials # per-realization counts fixed
    assert big.M == TINY.M


def test_config_from_items_parsing():
    cfg = config_from_items(
        {
            "M": "8",
            "gamma2": "5e-3",
            "snr_db": "0,10",
            "fixed_lengths": "50,60",
            "pmf_points": "1:0,3:-2",
            "seed": "7",
        }
    )
    assert cfg.M == 8 and cfg.gamma2 == 5e-3 and cfg.seed == 7
    assert cfg.snr_db == (0.0, 10.0)
    assert cfg.fixed_lengths == (50, 60)
    assert cfg.pmf_points == ((1, 0), (3, -2))


def test_config_from_items_rejects_unknown_key():
    with pytest.raises(ValueError):
        config_from_items({"not_a_knob": "1"})


def test_config_from_items_rejects_bad_value():
    with pytest.raises(ValueError):
        config_from_items({"M": "many"})


def test_unknown_experiment_name():
    with pytest.raises(ValueError):
        run_experiment("not-an-experiment", TINY)
