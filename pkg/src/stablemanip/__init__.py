"""Stable manipulation of elections under Kendall-Tau uncertainty.

Decides whether a manipulator can cast ballots keeping a distinguished
alternative a co-winner under every bounded perturbation of the other
voters' ballots, with polynomial deciders for scoring rules, k-approval,
maximin, and both Bucklin variants, brute-force oracles for everything,
and a Monte-Carlo harness measuring manipulability of random profiles.
"""

__version__ = "0.1.0"

from .deciders import (
    Decision,
    decide,
    decide_bucklin,
    decide_kapproval,
    decide_maximin,
    decide_scoring,
    decide_simplified_bucklin,
)
from .model import (
    Alternative,
    Instance,
    Profile,
    Ranking,
    kendall_tau,
    margin,
    max_swap_distance,
    rank,
    shift_left,
    shift_right,
)
from .oracle import (
    KTBall,
    ResourceBudgetError,
    decide_anonymous,
    decide_exhaustive,
    feasible_assignment,
    kt_ball,
    verify_witness,
)
from .rules import Rule, UnsupportedRuleError, score_table, top_k_count, winners
from .experiments import (
    ExperimentConfig,
    ExperimentRow,
    is_stably_manipulable,
    random_profile,
    run_grid,
    sweep,
    trial_rng,
)

__all__ = [
    "Alternative",
    "Decision",
    "ExperimentConfig",
    "ExperimentRow",
    "Instance",
    "KTBall",
    "Profile",
    "Ranking",
    "ResourceBudgetError",
    "Rule",
    "UnsupportedRuleError",
    "decide",
    "decide_anonymous",
    "decide_bucklin",
    "decide_exhaustive",
    "decide_kapproval",
    "decide_maximin",
    "decide_scoring",
    "decide_simplified_bucklin",
    "feasible_assignment",
    "is_stably_manipulable",
    "kendall_tau",
    "kt_ball",
    "margin",
    "max_swap_distance",
    "random_profile",
    "rank",
    "run_grid",
    "score_table",
    "shift_left",
    "shift_right",
    "sweep",
    "top_k_count",
    "trial_rng",
    "verify_witness",
    "winners",
]
