"""Quantitative uncertainty and sensitivity analysis.

Monte Carlo propagation, Morris elementary-effects screening, Sobol
variance-based indices, and normalization of raw measures into the
diagnostic diagram's vertical-axis score.
"""
from .sampling import (
    GENERATOR_ID,
    QUANTILE_LEVELS,
    SampleMatrix,
    UncertaintyStats,
    evaluate_unit_rows,
    generate_sample,
    propagate_uncertainty,
)
from .morris import (
    EEResult,
    TrajectorySet,
    build_trajectories,
    elementary_effects,
    ee_result_from_dict,
    ee_result_to_csv,
    ee_result_to_dict,
)
from .sobol import (
    SobolResult,
    brute_force_sobol,
    estimate_sobol,
    sobol_result_from_dict,
    sobol_result_to_csv,
    sobol_result_to_dict,
)
from .scores import SensitivityScores, normalize_scores

__all__ = [
    "GENERATOR_ID",
    "QUANTILE_LEVELS",
    "SampleMatrix",
    "UncertaintyStats",
    "evaluate_unit_rows",
    "generate_sample",
    "propagate_uncertainty",
    "EEResult",
    "TrajectorySet",
    "build_trajectories",
    "elementary_effects",
    "ee_result_from_dict",
    "ee_result_to_csv",
    "ee_result_to_dict",
    "SobolResult",
    "brute_force_sobol",
    "estimate_sobol",
    "sobol_result_from_dict",
    "sobol_result_to_csv",
    "sobol_result_to_dict",
    "SensitivityScores",
    "normalize_scores",
]
