"""Exact tail-probability lower bounds for sums of independent symmetric
random variables, with brute-force oracles and comparison checks."""

from .bounds import (
    BoundReport,
    evaluate_bounds,
    extremal_distribution,
    extremal_interval_check,
    improved_bound,
    kanter_supremum,
    kanter_supremum_via_stpc,
    nagaev_bound,
    optimize_h,
)
from .distributions import (
    LatticeDistribution,
    abs_stochastically_geq,
    abs_tail,
    as_success_vector,
    convolve,
    interval_mass,
    is_symmetric,
    is_unimodal_with_span,
    point_mass,
    poisson_binomial,
    symmetric_three_point,
)
from .exactmath import binomial, largest_binomial_ratio, largest_binomial_sum
from .oracles import (
    KleitmanInstance,
    SampleConfig,
    bound_soundness_sweep,
    equality_instance,
    exact_sum_distribution,
    kleitman_count,
    monte_carlo_tail,
    symmetric_lattice_family,
    tightness_search,
)
from .ordering import (
    ComparisonInstance,
    HypothesisViolation,
    birnbaum_check,
    birnbaum_pair_check,
    half_mass_check,
    pruss_check,
    wintner_check,
)

__all__ = [
    "BoundReport",
    "ComparisonInstance",
    "HypothesisViolation",
    "KleitmanInstance",
    "LatticeDistribution",
    "SampleConfig",
    "abs_stochastically_geq",
    "abs_tail",
    "as_success_vector",
    "binomial",
    "birnbaum_check",
    "birnbaum_pair_check",
    "bound_soundness_sweep",
    "convolve",
    "equality_instance",
    "evaluate_bounds",
    "exact_sum_distribution",
    "extremal_distribution",
    "extremal_interval_check",
    "half_mass_check",
    "improved_bound",
    "interval_mass",
    "is_symmetric",
    "is_unimodal_with_span",
    "kanter_supremum",
    "kanter_supremum_via_stpc",
    "kleitman_count",
    "largest_binomial_ratio",
    "largest_binomial_sum",
    "monte_carlo_tail",
    "nagaev_bound",
    "optimize_h",
    "point_mass",
    "poisson_binomial",
    "pruss_check",
    "symmetric_lattice_family",
    "symmetric_three_point",
    "tightness_search",
]
