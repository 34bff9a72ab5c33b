from .rng import STREAM_NULL, STREAM_ALTERNATIVE, substream, child_seed
from .scenarios import (
    NullScenario,
    AlternativeSpec,
    SparseMixture,
    SingleRow,
    EvenSpread,
    MixturePrior,
    MixtureScenario,
    Scenario,
    sparse_mixture_from_beta,
)
from .generators import (
    generate_null,
    alternative_mean,
    generate_alternative,
    draw_mixture_mean,
    generate_mixture,
    draw,
)
from .likelihood import (
    log_lr_terms,
    likelihood_ratio,
    lrt_test,
    log_lr_second_moment,
    lr_second_moment,
    cross_term_mean,
)
from .lemmas import (
    chernoff_bound,
    chernoff_moment_bound,
    sample_order_statistic,
    lrt_error_lower_bound,
    in_alternative_space,
)
from .harness import TestKind, ErrorConfig, McErrorReport, wilson_interval, estimate_errors
from .sweep import (
    CSV_COLUMNS,
    PhasePlan,
    PhasePoint,
    PhaseSweepEngine,
    boundary_at,
    phase_sweep,
    points_to_frame,
    isotonic_violations,
)
from .config_loader import SimulationConfigLoader

__all__ = [
    "STREAM_NULL",
    "STREAM_ALTERNATIVE",
    "substream",
    "child_seed",
    "NullScenario",
    "AlternativeSpec",
    "SparseMixture",
    "SingleRow",
    "EvenSpread",
    "MixturePrior",
    "MixtureScenario",
    "Scenario",
    "sparse_mixture_from_beta",
    "generate_null",
    "alternative_mean",
    "generate_alternative",
    "draw_mixture_mean",
    "generate_mixture",
    "draw",
    "log_lr_terms",
    "likelihood_ratio",
    "lrt_test",
    "log_lr_second_moment",
    "lr_second_moment",
    "cross_term_mean",
    "chernoff_bound",
    "chernoff_moment_bound",
    "sample_order_statistic",
    "lrt_error_lower_bound",
    "in_alternative_space",
    "TestKind",
    "ErrorConfig",
    "McErrorReport",
    "wilson_interval",
    "estimate_errors",
    "CSV_COLUMNS",
    "PhasePlan",
    "PhasePoint",
    "PhaseSweepEngine",
    "boundary_at",
    "phase_sweep",
    "points_to_frame",
    "isotonic_violations",
    "SimulationConfigLoader",
]
