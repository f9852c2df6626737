"""Optimal coalition manipulation strategies for positional scoring elections.

Workflow: sample sincere profiles from a belief model (`distributions`),
summarize and solve for the best strategy matrix (`optimizer`), turn it into
explicit ballots (`matching`), and measure the welfare impact (`welfare`).
The `cli` module wraps the pipeline in a reproducible experiment harness.
"""

from ._backend import COMPILED, backend_name
from .distributions import (
    EmpiricalPool,
    ImpartialAnonymousCulture,
    ImpartialCulture,
    MallowsMixture,
    MallowsModel,
    PointMass,
    kendall_tau,
    load_ballots,
    mallows_normalizer,
    mallows_pmf,
    sample_profile,
    sample_profiles,
    sample_ranking,
)
from .matching import recover_votes, validate_psm
from .optimizer import (
    PruneResult,
    SampleSet,
    SolveResult,
    balanced_strategy,
    borda3_strategy,
    brute_force_optimal,
    near_balanced_strategy,
    prune,
    sample_complexity_general,
    sample_complexity_kapproval,
    solve_optimal,
    strategy_objective,
    summarize,
)
from .voting import (
    Profile,
    ScoringRule,
    StrategyPSM,
    enumerate_profiles,
    psm_of_votes,
    score_profile,
    total_scores,
    winner,
)
from .welfare import (
    RegretReport,
    bound_general,
    bound_kapproval,
    expected_regret,
    regret,
    worst_case_instance,
    worst_case_regret,
    worst_case_strategy,
)

__version__ = "0.1.0"

__all__ = [
    "COMPILED",
    "backend_name",
    "EmpiricalPool",
    "ImpartialAnonymousCulture",
    "ImpartialCulture",
    "MallowsMixture",
    "MallowsModel",
    "PointMass",
    "kendall_tau",
    "load_ballots",
    "mallows_normalizer",
    "mallows_pmf",
    "sample_profile",
    "sample_profiles",
    "sample_ranking",
    "recover_votes",
    "validate_psm",
    "PruneResult",
    "SampleSet",
    "SolveResult",
    "balanced_strategy",
    "borda3_strategy",
    "brute_force_optimal",
    "near_balanced_strategy",
    "prune",
    "sample_complexity_general",
    "sample_complexity_kapproval",
    "solve_optimal",
    "strategy_objective",
    "summarize",
    "Profile",
    "ScoringRule",
    "StrategyPSM",
    "enumerate_profiles",
    "psm_of_votes",
    "score_profile",
    "total_scores",
    "winner",
    "RegretReport",
    "bound_general",
    "bound_kapproval",
    "expected_regret",
    "regret",
    "worst_case_instance",
    "worst_case_regret",
    "worst_case_strategy",
]
