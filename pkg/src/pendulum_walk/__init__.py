"""Escape times of heterogeneous random walks on a finite line.

A walk on states ``0 .. d+1`` starts at 0, steps back from interior site
``i`` with probability ``p_i`` (reflecting at 0, absorbing at ``d+1``),
and its expected escape time depends on the *arrangement* of the
``p_i``.  This package computes that escape time exactly and by
simulation, constructs the pendulum arrangement that maximizes it,
and verifies the optimality claims with brute-force oracles and
randomized property suites.
"""

from .arrangements import (
    Permutation,
    improving_permutation,
    inversion_count,
    is_pendulum,
    mirror_permutation,
    odd_even_pass,
    pendulum_arrangement,
    pendulum_sort,
    sorted_to_pendulum_permutation,
)
from .errors import DimensionError, DomainError, SizeCapError, StepLimitError
from .escape import (
    expected_escape_closed_form,
    expected_escape_linear_system,
    expected_escape_many,
    log10_expected_escape,
    log10_expected_escape_many,
    odds,
    total_value,
    total_value_many,
    value_profile,
    value_profile_many,
    window_product,
    window_value,
    window_value_decomposition,
)
from .experiments import (
    EnvironmentSpec,
    ExperimentRecord,
    detect_crossover,
    exact_random_arrangement_mean,
    run_d_sweep,
    run_variance_sweep,
    write_records_csv,
)
from .optimize import (
    ArgmaxReport,
    BudgetConstraint,
    best_over_extreme_points,
    brute_force_max,
    brute_force_min,
    budget_optimal,
    multiset_permutations,
    verify_convexity,
    verify_theorem1,
    verify_theorem3,
)
from .simulate import (
    EscapeEstimate,
    estimate_escape,
    max_step_guard,
    simulate_walk,
    trial_seed,
    walk_many,
)

__version__ = "0.1.0"

__all__ = [
    "Permutation",
    "mirror_permutation",
    "sorted_to_pendulum_permutation",
    "pendulum_arrangement",
    "is_pendulum",
    "improving_permutation",
    "pendulum_sort",
    "odd_even_pass",
    "inversion_count",
    "odds",
    "window_product",
    "window_value",
    "value_profile",
    "total_value",
    "window_value_decomposition",
    "expected_escape_closed_form",
    "expected_escape_linear_system",
    "log10_expected_escape",
    "total_value_many",
    "value_profile_many",
    "expected_escape_many",
    "log10_expected_escape_many",
    "EscapeEstimate",
    "simulate_walk",
    "walk_many",
    "estimate_escape",
    "max_step_guard",
    "trial_seed",
    "ArgmaxReport",
    "BudgetConstraint",
    "multiset_permutations",
    "brute_force_max",
    "brute_force_min",
    "verify_theorem1",
    "verify_theorem3",
    "budget_optimal",
    "best_over_extreme_points",
    "verify_convexity",
    "EnvironmentSpec",
    "ExperimentRecord",
    "run_variance_sweep",
    "run_d_sweep",
    "exact_random_arrangement_mean",
    "detect_crossover",
    "write_records_csv",
    "DimensionError",
    "DomainError",
    "SizeCapError",
    "StepLimitError",
]
