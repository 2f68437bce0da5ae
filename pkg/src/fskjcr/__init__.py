"""Frequency hopped waveforms with a data driven stopping rule.

The package covers waveform synthesis, the spectral flatness stopping
rule, ambiguity sidelobe statistics, accuracy bounds, a hitting time
model for the stopping length, and Monte Carlo delay/Doppler estimation
experiments with a CSV-writing command line front end.
"""

__version__ = "0.1.0"

from .ambiguity import (
    GridPoint,
    PmfResult,
    SidelobeStats,
    VarianceScan,
    af_sidelobe,
    af_stats,
    af_stats_exact,
    af_variance_monotone_check,
    cross_ambiguity,
    empirical_pmf,
)
from .hitting import (
    CdfTable,
    HitSample,
    HittingModel,
    boundary_b,
    boundary_db,
    chi2_corr_approx,
    chi2_corr_exact,
    empirical_hitting_cdf,
    gamma2_for_quantile,
    simulate_brownian_hit,
    simulate_brownian_hits,
    tangent_cdf,
    tangent_cdf_grid,
    tangent_mass,
    tangent_pdf,
)
from .rms import (
    crlb_delay,
    crlb_doppler,
    rms_bw_sq,
    rms_bw_stats,
    rms_time_sq,
    sine_integral,
)
from .simulation import (
    ChannelScenario,
    EstimationResult,
    Scheme,
    SearchGrid,
    apply_channel,
    default_grid,
    detect_symbol,
    ml_estimate,
    run_mse_cdf,
    run_mse_sweep,
)
from .stopping import (
    SpectrumState,
    StopDecision,
    StoppingConfig,
    chi2_of,
    decide,
    flatness,
    gamma1_from_rms_requirement,
    gamma3_from_af_variance,
    generate_waveform,
    sample_lengths,
    update,
)
from .waveform import (
    FrequencySequence,
    SampledWaveform,
    WaveformParams,
    bits_to_sequence,
    random_sequence,
    sequence_to_bits,
    synthesize,
)

__all__ = [
    "__version__",
    "WaveformParams",
    "FrequencySequence",
    "SampledWaveform",
    "random_sequence",
    "bits_to_sequence",
    "sequence_to_bits",
    "synthesize",
    "SpectrumState",
    "StoppingConfig",
    "StopDecision",
    "update",
    "flatness",
    "chi2_of",
    "decide",
    "generate_waveform",
    "sample_lengths",
    "gamma1_from_rms_requirement",
    "gamma3_from_af_variance",
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
    "rms_time_sq",
    "rms_bw_sq",
    "rms_bw_stats",
    "sine_integral",
    "crlb_delay",
    "crlb_doppler",
    "HittingModel",
    "HitSample",
    "CdfTable",
    "boundary_b",
    "boundary_db",
    "tangent_pdf",
    "tangent_cdf",
    "tangent_cdf_grid",
    "tangent_mass",
    "chi2_corr_exact",
    "chi2_corr_approx",
    "simulate_brownian_hit",
    "simulate_brownian_hits",
    "empirical_hitting_cdf",
    "gamma2_for_quantile",
    "ChannelScenario",
    "SearchGrid",
    "EstimationResult",
    "Scheme",
    "apply_channel",
    "ml_estimate",
    "detect_symbol",
    "default_grid",
    "run_mse_cdf",
    "run_mse_sweep",
]
