"""Chi-square process statistics, boundary, and tangent approximation."""

import itertools
import math

import numpy as np
import pytest

from fskjcr.hitting import (
    HittingModel,
    boundary_b,
    boundary_db,
    chi2_corr_approx,
    chi2_corr_exact,
    chi2_mean,
    chi2_var,
    empirical_hitting_cdf,
    gamma2_for_quantile,
    simulate_brownian_hit,
    simulate_brownian_hits,
    tangent_cdf,
    tangent_cdf_grid,
    tangent_mass,
    tangent_pdf,
)
from fskjcr.stopping import chi2_samples

MODEL = HittingModel(M=32, gamma2=1e-4)


def chi2_value(counts, L, M):
    return float(np.sum((np.asarray(counts) - L / M) ** 2) / (L / M))


def test_chi2_moments_enumeration():
    # every binary stream of length up to 10, exact expectation
    M = 2
    for L in range(2, 11):
        vals = []
        for s in itertools.product(range(M), repeat=L):
            counts = np.bincount(np.array(s), minlength=M)
            vals.append(chi2_value(counts, L, M))
        vals = np.array(vals)
        assert np.mean(vals) == pytest.approx(chi2_mean(M), abs=1e-12)
        assert np.var(vals) == pytest.approx(chi2_var(M, L), abs=1e-12)


def test_chi2_moments_edge_values():
    assert chi2_mean(32) == 31
    assert chi2_var(4, 1) == 0.0
    assert chi2_var(2, 2) == 1.0


def test_chi2_corr_forms():
    assert chi2_corr_exact(50, 0) == pytest.approx(1.0)
    L, k = 100, 100
    gap = abs(chi2_corr_approx(L, k) - chi2_corr_exact(L, k))
    assert gap < 1e-2 * (k / L)


def test_chi2_corr_monte_carlo():
    # lag correlation of the running statistic across 1e5 streams
    rng = np.random.default_rng(19)
    M, L, k, runs = 16, 200, 100, 100_000
    samples = chi2_samples(rng, M, [L, L + k], runs)
    rho_hat = np.corrcoef(samples[0], samples[1])[0, 1]
    rho = chi2_corr_exact(L, k)
    se_z = 1 / math.sqrt(runs - 3)
    assert abs(math.atanh(rho_hat) - math.atanh(rho)) < 4 * se_z


def test_chi2_brownian_construction_moments():
    # M - 1 + sqrt(2(M-1)(1-1/t)) W(t^2)/t reproduces mean, variance, and
    # the lag correlation t/(t+k) of the running statistic
    rng = np.random.default_rng(23)
    M, runs = 16, 200_000
    ts = np.array([50, 100, 200])
    xs = (ts.astype(float)) ** 2
    w = np.zeros((runs, ts.size))
    prev = 0.0
    acc = rng.standard_normal(runs) * math.sqrt(xs[0])
    w[:, 0] = acc
    for i in range(1, ts.size):
        acc = acc + rng.standard_normal(runs) * math.sqrt(xs[i] - xs[i - 1])
        w[:, i] = acc
    proc = (M - 1) + np.sqrt(2 * (M - 1) * (1 - 1 / ts)) * w / ts
    for i, t in enumerate(ts):
        se = np.std(proc[:, i]) / math.sqrt(runs)
        assert abs(np.mean(proc[:, i]) - chi2_mean(M)) < 4 * se
        assert np.var(proc[:, i]) == pytest.approx(chi2_var(M, t), rel=0.03)
    # the construction's lag correlation is t/(t+k)
    rho_hat = np.corrcoef(proc[:, 0], proc[:, 1])[0, 1]
    assert rho_hat == pytest.approx(50 / (50 + 50), rel=0.02)


def test_boundary_zero_crossing():
    # numerator root at sqrt(x) = (M-1)/(gamma2 M^2)
    root = (MODEL.M - 1) / (MODEL.gamma2 * MODEL.M**2)
    assert root == pytest.approx(302.734375)
    assert boundary_b(root**2, MODEL) == pytest.approx(0.0, abs=1e-9)
    assert boundary_b(200.0**2, MODEL) < 0 < boundary_b(400.0**2, MODEL)


def test_boundary_domain_and_vectorization():
    with pytest.raises(ValueError):
        boundary_b(1.0, MODEL)
    with pytest.raises(ValueError):
        boundary_db(0.5, MODEL)
    xs = np.array([2.0, 10.0, 1e4])
    assert boundary_b(xs, MODEL).shape == (3,)
    assert boundary_db(xs, MODEL).shape == (3,)


def test_boundary_derivative_finite_difference():
    for x in (2.0, 10.0, 100.0, 1e4, 1e5):
        h = x * 1e-6
        fd = (boundary_b(x + h, MODEL) - boundary_b(x - h, MODEL)) / (2 * h)
        assert boundary_db(x, MODEL) == pytest.approx(fd, rel=1e-6)


def test_tangent_pdf_nonnegative_on_grid():
    ts = np.linspace(1.0 + 1e-6, 2000.0, 10_000)
    assert np.all(tangent_pdf(ts, MODEL) >= 0.0)


def test_tangent_pdf_matches_composition_route():
    # closed t-form vs the change-of-variables composition through b, db
    A = MODEL.gamma2 * MODEL.M**2
    for t in (1.5, 5.0, 100.0, 300.0, 900.0):
        x = t * t
        b = boundary_b(x, MODEL)
        db = boundary_db(x, MODEL)
        phi = math.exp(-0.5 * (b / math.sqrt(x)) ** 2) / math.sqrt(2 * math.pi)
        # crossing density in x of the mirrored problem, mapped to t
        dens_x = (db - b / x) * phi / math.sqrt(x)
        assert tangent_pdf(t, MODEL) == pytest.approx(2 * t * dens_x, rel=1e-10)
    assert A < 2 * (MODEL.M - 1) # positivity condition for this model


def test_tangent_pdf_domain():
    with pytest.raises(ValueError):
        tangent_pdf(1.0, MODEL)
    with pytest.raises(ValueError):
        tangent_cdf(0.9, MODEL)


def test_tangent_cdf_monotone_and_grid_consistent():
    ts = np.array([2.0, 50.0, 150.0, 250.0, 300.0, 350.0, 500.0, 1000.0])
    grid = tangent_cdf_grid(ts, MODEL)
    assert np.all(np.diff(grid) >= 0)
    for t, g in zip(ts, grid):
        assert g == pytest.approx(tangent_cdf(float(t), MODEL), abs=1e-8)


def test_tangent_cdf_center_value():
    # the central mass sits near the zero-drift crossing point
    assert 0.35 <= tangent_cdf(300.0, MODEL) <= 0.65


def test_tangent_mass_frozen():
    assert tangent_mass(MODEL) == pytest.approx(1.0832961719710554, abs=1e-7)


def test_simulate_brownian_hit_trivial_barriers():
    rng = np.random.default_rng(0)
    hit = simulate_brownian_hit(rng, MODEL, 50, barrier=lambda x: -np.inf)
    assert hit.L0 == 2 and not hit.forced
    hit = simulate_brownian_hit(rng, MODEL, 50, barrier=lambda x: np.inf)
    assert hit.L0 == 50 and hit.forced


def test_simulate_brownian_hits_matches_scalar_law():
    # batch and scalar engines draw from the same law
    runs = 4000
    times, forced = simulate_brownian_hits(np.random.default_rng(7), MODEL, 1500, runs)
    assert not forced.any()
    singles = np.array(
        [simulate_brownian_hit(np.random.default_rng(50_000 + i), MODEL, 1500).L0
         for i in range(800)]
    )
    se = math.sqrt(np.var(times) / runs + np.var(singles) / 800)
    assert abs(np.mean(times) - np.mean(singles)) < 4 * se


def test_empirical_hitting_cdf_shape():
    table = empirical_hitting_cdf(np.random.default_rng(3), HittingModel(8, 0.01), 500)
    assert np.all(np.diff(table.p) >= 0)
    assert table.p[-1] == pytest.approx(1.0)
    assert np.all(table.t >= 1)


def test_loosest_threshold_all_mass_at_one():
    m = HittingModel(4, 3 / 16)
    table = empirical_hitting_cdf(np.random.default_rng(1), m, 300)
    assert table.t[0] == 1 and table.p[0] == pytest.approx(1.0)


def test_gamma2_solver_fixed_point():
    for (L1, alpha, M) in ((450, 0.1, 32), (50, 0.2, 8), (300, 0.05, 16)):
        g2 = gamma2_for_quantile(L1, alpha, M)
        f = tangent_cdf(float(L1), HittingModel(M, g2))
        assert abs(f - (1 - alpha)) < 1e-4


def test_gamma2_solver_direction():
    # a looser latency target tolerates a smaller threshold
    gs = [gamma2_for_quantile(450, a, 32) for a in (0.05, 0.1, 0.2, 0.3)]
    assert all(a > b for a, b in zip(gs, gs[1:]))


def test_gamma2_solver_named_case():
    g2 = gamma2_for_quantile(450, 0.1, 32)
    assert 1e-5 < g2 < 1e-3
    assert g2 == pytest.approx(7.92e-5, rel=0.01)


def test_gamma2_solver_validation():
    with pytest.raises(ValueError):
        gamma2_for_quantile(450, 0.0, 32)
    with pytest.raises(ValueError):
        gamma2_for_quantile(1, 0.1, 32)


def test_hitting_model_validation():
    with pytest.raises(ValueError):
        HittingModel(1, 1e-4)
    with pytest.raises(ValueError):
        HittingModel(32, 0.0)
