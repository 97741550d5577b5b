"""Minimax-robust lossless prefix codes for a total-variation ball of sources."""

from .coding import CodeDesign, average_length, design, integerize, optimal_lengths, worst_case_payoff
from .core import (
    BallSpec,
    CodeLengthVector,
    NominalDistribution,
    WeightVector,
    entropy,
    kl_divergence,
    kraft_sum,
    tv_distance,
    validate_nominal,
)
from .merge import BreakpointSchedule, build_schedule, compute_weights, next_beta, next_gamma
from .oracle import enumerate_partitions, maximize_over_ball, sample_ball
from .waterfill import WaterLevels, alpha_max, solve_lower_level, solve_upper_level, water_levels, waterfill_weights

__version__ = "0.1.0"

__all__ = [
    "BallSpec",
    "BreakpointSchedule",
    "CodeDesign",
    "CodeLengthVector",
    "NominalDistribution",
    "WaterLevels",
    "WeightVector",
    "alpha_max",
    "average_length",
    "build_schedule",
    "compute_weights",
    "design",
    "entropy",
    "enumerate_partitions",
    "integerize",
    "kl_divergence",
    "kraft_sum",
    "maximize_over_ball",
    "next_beta",
    "next_gamma",
    "optimal_lengths",
    "sample_ball",
    "solve_lower_level",
    "solve_upper_level",
    "tv_distance",
    "validate_nominal",
    "water_levels",
    "waterfill_weights",
    "worst_case_payoff",
]
