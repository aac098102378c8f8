"""Affine-invariant preference aggregation for multi-criteria decisions.

Raw preference scores are interval-scale points: only differences between
them mean anything, so any per-criterion rescaling ``p -> a*p + b`` with
``a > 0`` describes the same preferences.  This package normalizes each
criterion to mean 0 / population standard deviation 1 (an affine map, so
nothing is lost), aggregates with the weighted centroid of the normalized
scores, and ranks by that aggregate -- a pipeline whose ranking provably
cannot change under per-criterion rescaling of the inputs.

Rival aggregators in common use (weighted arithmetic/geometric means,
min-max centroids, distance-to-ideal rankings) are included, implemented
faithfully, so the diagnostics module can demonstrate on concrete data
which of them violate that invariance and how.
"""

from .aggregation import (
    AggregationResult,
    Direction,
    Method,
    Ranking,
    ScoreVector,
    minmax_scale,
    rank,
    rank_pstar,
    weighted_centroid,
    wlsd_objective,
)
from .baselines import (
    KMatrix,
    dist_euclid,
    dist_manhattan,
    k_centroid,
    k_scores,
    wam,
    wgm,
)
from .core import (
    AffineMap,
    NormalizationParams,
    PreferenceMatrix,
    WeightVector,
    ZMatrix,
    apply_affine,
    column_stats,
    k_ratio,
    normalization_as_affine,
    z_normalize,
)
from .diagnostics import (
    ComparabilityReport,
    ComparisonReport,
    Counterexample,
    EquilibriumReport,
    InvarianceReport,
    comparability_check,
    compare_methods,
    equilibrium_check,
    invariance_trial,
    score_method,
    trial_affine_maps,
)
from .errors import (
    DegenerateCriterion,
    DimensionMismatch,
    InvalidAffine,
    ParseError,
    PfmRankError,
    ValidationError,
    ZeroDenominator,
)
from .io import (
    PlotData,
    ProblemDocument,
    emit_plot_data,
    load_problem,
    parse_problem,
    write_problem,
    write_result,
)

__version__ = "0.1.0"

__all__ = [
    "AffineMap",
    "AggregationResult",
    "ComparabilityReport",
    "ComparisonReport",
    "Counterexample",
    "DegenerateCriterion",
    "DimensionMismatch",
    "Direction",
    "EquilibriumReport",
    "InvalidAffine",
    "InvarianceReport",
    "KMatrix",
    "Method",
    "NormalizationParams",
    "ParseError",
    "PfmRankError",
    "PlotData",
    "PreferenceMatrix",
    "ProblemDocument",
    "Ranking",
    "ScoreVector",
    "ValidationError",
    "WeightVector",
    "ZMatrix",
    "ZeroDenominator",
    "apply_affine",
    "column_stats",
    "comparability_check",
    "compare_methods",
    "dist_euclid",
    "dist_manhattan",
    "emit_plot_data",
    "equilibrium_check",
    "invariance_trial",
    "k_centroid",
    "k_ratio",
    "k_scores",
    "load_problem",
    "minmax_scale",
    "normalization_as_affine",
    "parse_problem",
    "rank",
    "rank_pstar",
    "score_method",
    "trial_affine_maps",
    "wam",
    "weighted_centroid",
    "wgm",
    "wlsd_objective",
    "write_problem",
    "write_result",
    "z_normalize",
]
