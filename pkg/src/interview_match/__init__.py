"""Two-sided matching market simulator with a capacity-constrained interview
stage ahead of the centralized match.

The library generates random markets from a common-plus-idiosyncratic utility
model, runs one-to-one deferred acceptance (plain, top-k truncated, and
interview-truncated), and computes the match statistics used to compare the
mechanisms: unmatched rates, reported-rank distributions, core size under the
proposer swap, and blocking-pair incidence.
"""

__version__ = "0.1.0"

from .market import (
    ACCEPTABILITY_MODES,
    DISTRIBUTIONS,
    DOCTORS,
    HOSPITALS,
    MarketConfig,
    MarketInstance,
    PreferenceProfile,
    generate_market,
    profile_from_lists,
    to_preferences,
)
from .da import (
    UNMATCHED,
    Matching,
    deferred_acceptance,
    rank_of_match,
    serial_dictatorship,
)
from .interviews import (
    InterviewSchedule,
    int_da,
    interview_schedule,
    truncate_by_interviews,
    truncate_top_k,
)
from .metrics import (
    MECHANISMS,
    MetricsRecord,
    RankFractions,
    blocking_proportions,
    identical_to_da,
    rank_fractions,
    same_partner_on_swap,
    unmatched_fraction,
)
from .experiments import (
    ExperimentResult,
    ExperimentSpec,
    SweepGrid,
    paper_example_profiles,
    replication_seed,
    run_experiment,
    run_paper_example,
    run_replication,
    run_sweep,
    run_verification,
)

__all__ = [
    "ACCEPTABILITY_MODES",
    "DISTRIBUTIONS",
    "DOCTORS",
    "HOSPITALS",
    "MECHANISMS",
    "UNMATCHED",
    "ExperimentResult",
    "ExperimentSpec",
    "InterviewSchedule",
    "MarketConfig",
    "MarketInstance",
    "Matching",
    "MetricsRecord",
    "PreferenceProfile",
    "RankFractions",
    "SweepGrid",
    "blocking_proportions",
    "deferred_acceptance",
    "generate_market",
    "identical_to_da",
    "int_da",
    "interview_schedule",
    "paper_example_profiles",
    "profile_from_lists",
    "rank_fractions",
    "rank_of_match",
    "replication_seed",
    "run_experiment",
    "run_paper_example",
    "run_replication",
    "run_sweep",
    "run_verification",
    "same_partner_on_swap",
    "serial_dictatorship",
    "to_preferences",
    "truncate_by_interviews",
    "truncate_top_k",
    "unmatched_fraction",
]
