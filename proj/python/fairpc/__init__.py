"""Fairness-constrained combinatorial bandit simulation.

Thin wrapper over the compiled core: feasible-family enumeration and sampling,
the pick-and-compare policy primitives, the benchmark LP oracle, analytical
bound reports, and the replicated experiment runner.
"""

from fairpc._core import (
    ArgumentError,
    ConfigError,
    FeasibleFamily,
    InfeasibleError,
    SuperArm,
    compare_policies,
    compute_bounds,
    full_argmax,
    max_slack,
    queue_update,
    run_experiment,
    sample_distinct,
    solve_benchmark,
    superarm_weight,
    ucb_weight,
)

__all__ = [
    "ArgumentError",
    "ConfigError",
    "FeasibleFamily",
    "InfeasibleError",
    "SuperArm",
    "compare_policies",
    "compute_bounds",
    "full_argmax",
    "max_slack",
    "queue_update",
    "run_experiment",
    "sample_distinct",
    "solve_benchmark",
    "superarm_weight",
    "ucb_weight",
]

__version__ = "0.1.0"
