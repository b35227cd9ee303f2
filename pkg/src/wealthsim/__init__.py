"""Seed-reproducible agent-based wealth-exchange simulations.

Three exchange mechanisms (coin-toss expropriation, a two-good
competitive market, and pairwise trade with monopolists) plus the
statistics to characterize the wealth distributions they generate.
"""

from .config import (
    AngleParams,
    ExperimentConfig,
    MarketParams,
    PairwiseParams,
    SweepSpec,
    derive_seed,
)
from .errors import (
    ConfigError,
    ContractError,
    DegenerateMarketError,
    DegenerateSampleError,
    DomainError,
    SimulationError,
    WealthsimError,
)
from .rng import (
    RandomStream,
    draw_uniform,
    flag_fraction,
    partition_monopolists,
    sample_full_matching,
    sample_single_pair,
    sample_single_pairs,
)
from .angle import AngleResult, encounter_step, run_angle, winner_toss
from .market import (
    MarketResult,
    draw_preferences,
    endowment_price,
    equilibrium_price,
    execute_demands,
    run_market,
    wealth_valuation,
)
from .pairwise import (
    PairwiseResult,
    PairTradeOutcome,
    cobb_douglas_utility,
    execute_pair_trade,
    monopoly_price,
    pairwise_competitive_price,
    resolve_pair_trade,
    run_pairwise,
)
from .stats import (
    GammaFit,
    KdeEstimate,
    TailDiagnostic,
    analyze_sample,
    fit_gamma_mle,
    fit_gamma_moments,
    gamma_loglik,
    gini_empirical,
    gini_gamma,
    kde_gaussian,
    ks_distance,
    silverman_bandwidth,
    tail_diagnostic,
)
from .snapshots import (
    SnapshotFile,
    SnapshotFrame,
    atomic_write_text,
    read_kde_csv,
    read_snapshot_csv,
    write_config_json,
    write_kde_csv,
    write_report_json,
    write_result_csv,
)

__version__ = "0.1.0"

__all__ = [
    "AngleParams",
    "AngleResult",
    "ConfigError",
    "ContractError",
    "DegenerateMarketError",
    "DegenerateSampleError",
    "DomainError",
    "ExperimentConfig",
    "GammaFit",
    "KdeEstimate",
    "MarketParams",
    "MarketResult",
    "PairTradeOutcome",
    "PairwiseParams",
    "PairwiseResult",
    "RandomStream",
    "SimulationError",
    "SnapshotFile",
    "SnapshotFrame",
    "SweepSpec",
    "TailDiagnostic",
    "WealthsimError",
    "analyze_sample",
    "atomic_write_text",
    "cobb_douglas_utility",
    "derive_seed",
    "draw_preferences",
    "draw_uniform",
    "encounter_step",
    "endowment_price",
    "equilibrium_price",
    "execute_demands",
    "execute_pair_trade",
    "fit_gamma_mle",
    "fit_gamma_moments",
    "flag_fraction",
    "gamma_loglik",
    "gini_empirical",
    "gini_gamma",
    "kde_gaussian",
    "ks_distance",
    "monopoly_price",
    "pairwise_competitive_price",
    "partition_monopolists",
    "read_kde_csv",
    "read_snapshot_csv",
    "resolve_pair_trade",
    "run_angle",
    "run_market",
    "run_pairwise",
    "sample_full_matching",
    "sample_single_pair",
    "sample_single_pairs",
    "silverman_bandwidth",
    "tail_diagnostic",
    "wealth_valuation",
    "winner_toss",
    "write_config_json",
    "write_kde_csv",
    "write_report_json",
    "write_result_csv",
]
