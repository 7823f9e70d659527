"""Growth-optimal analysis and pricing of discrete payoff games."""

from .errors import (
    DomainError,
    GameValidationError,
    GrowthPriceError,
    InternalConsistencyError,
    SpecParseError,
)
from .games import (
    Game,
    GameStats,
    Outcome,
    ValidationResult,
    compute_stats,
    game_from_nodes,
    load_spec,
    save_spec,
    translate,
    validate,
)
from .oracle import (
    SimulationResult,
    TwoPointGame,
    grid_argmax_growth,
    simulate_wealth,
    two_point_closed_form,
)
from .solver import (
    PricingSolution,
    ProportionSolution,
    Regime,
    growth_rate,
    optimal_price,
    optimal_proportion,
    pre_optimal_proportion,
    proportion_residual,
)
from .translation import (
    AsymptoticRow,
    ThresholdResult,
    ThresholdStatus,
    TranslationReport,
    asymptotic_sweep,
    boundary_growth,
    check_growth_invariance,
    check_ratio_invariance,
    price_translated,
    threshold_shift,
)

__version__ = "0.1.0"

__all__ = [
    "AsymptoticRow",
    "DomainError",
    "Game",
    "GameStats",
    "GameValidationError",
    "GrowthPriceError",
    "InternalConsistencyError",
    "Outcome",
    "PricingSolution",
    "ProportionSolution",
    "Regime",
    "SimulationResult",
    "SpecParseError",
    "ThresholdResult",
    "ThresholdStatus",
    "TranslationReport",
    "TwoPointGame",
    "ValidationResult",
    "asymptotic_sweep",
    "boundary_growth",
    "check_growth_invariance",
    "check_ratio_invariance",
    "compute_stats",
    "game_from_nodes",
    "grid_argmax_growth",
    "growth_rate",
    "load_spec",
    "optimal_price",
    "optimal_proportion",
    "pre_optimal_proportion",
    "price_translated",
    "proportion_residual",
    "save_spec",
    "simulate_wealth",
    "threshold_shift",
    "translate",
    "two_point_closed_form",
    "validate",
]
