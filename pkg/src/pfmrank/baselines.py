"""Rival aggregators implemented faithfully so their failures can be shown.

Each of these is in wide practical use, and each violates at least one of
the invariance properties that the weighted-centroid aggregator satisfies
by construction.  They are implemented exactly as conventionally defined
(including the absolute values in WAM/WGM, which are part of the usual
definitions even though they behave oddly on negative scores) so that the
diagnostics module can demonstrate the violations on real inputs rather
than on strawmen.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aggregation import Direction, Method, ScoreVector
from .core import PreferenceMatrix, WeightVector, ZMatrix
from .errors import DegenerateCriterion, DimensionMismatch, ValidationError

__all__ = [
    "KMatrix",
    "wam",
    "wgm",
    "k_scores",
    "k_centroid",
    "dist_euclid",
    "dist_manhattan",
]


@dataclass(frozen=True, eq=False)
class KMatrix:
    """Per-criterion min-max scaled scores: each column spans [0, 1] exactly."""

    values: np.ndarray

    def __post_init__(self):
        arr = np.array(self.values, dtype=float)
        if arr.ndim != 2:
            raise ValidationError("k-scores must be two-dimensional")
        arr.setflags(write=False)
        object.__setattr__(self, "values", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def __eq__(self, other):
        if not isinstance(other, KMatrix):
            return NotImplemented
        return np.array_equal(self.values, other.values)


def _check_weights(matrix: PreferenceMatrix, w: WeightVector):
    if len(w) != len(matrix.criteria):
        raise DimensionMismatch(f"{len(w)} weights for {len(matrix.criteria)} criteria")


def _check_z_weights(z: ZMatrix, w: WeightVector):
    if len(w) != z.shape[1]:
        raise DimensionMismatch(f"{len(w)} weights for {z.shape[1]} z-columns")


def wam(matrix: PreferenceMatrix, w: WeightVector) -> ScoreVector:
    """Absolute weighted arithmetic mean, ``sum_j w_j * |p_ij|``.

    Operates on raw scores, so its ranking depends on the units each
    criterion happens to be expressed in: rescaling one criterion (say,
    a salary from currency units to thousands) can flip the winner.
    """
    _check_weights(matrix, w)
    scores = np.abs(matrix.values) @ w.weights
    return ScoreVector(Method.WAM, Direction.HIGHER_BETTER, scores)


def wgm(matrix: PreferenceMatrix, w: WeightVector) -> ScoreVector:
    """Absolute weighted geometric mean, ``prod_j |p_ij| ** w_j``.

    A zero score on any positively weighted criterion annihilates the
    whole product.  Factors with zero weight evaluate to 1 (0**0 == 1),
    so zero-weighted criteria never influence the result.
    """
    _check_weights(matrix, w)
    scores = np.prod(np.abs(matrix.values) ** w.weights, axis=1)
    return ScoreVector(Method.WGM, Direction.HIGHER_BETTER, scores)


def k_scores(matrix: PreferenceMatrix) -> KMatrix:
    """Min-max scale each criterion to [0, 1] using its column extremes.

    ``k_ij = (p_ij - min_j) / (max_j - min_j)``; invariant under positive
    affine rescaling of a column, but the zero always sits at whichever
    alternative happens to be worst, not at a stable reference.

    Raises
    ------
    DegenerateCriterion
        If some column is constant (no extremes to scale by).
    """
    values = matrix.values
    lo = values.min(axis=0)
    hi = values.max(axis=0)
    span = hi - lo
    flat = span == 0.0
    if np.any(flat):
        j = int(np.flatnonzero(flat)[0])
        raise DegenerateCriterion(j, matrix.criteria[j])
    return KMatrix((values - lo) / span)


def k_centroid(matrix: PreferenceMatrix, w: WeightVector) -> ScoreVector:
    """Weighted centroid of the min-max k-scores.

    Affine-invariant like the normalized-space centroid, but anchored to
    the per-column extremes: scores lie in [0, 1] and ties appear whenever
    weighted distances to the column extremes happen to coincide.
    """
    _check_weights(matrix, w)
    scores = k_scores(matrix).values @ w.weights
    return ScoreVector(Method.KCENTROID, Direction.HIGHER_BETTER, scores)


def dist_euclid(z: ZMatrix, w: WeightVector) -> ScoreVector:
    """Weighted squared Euclidean distance to the ideal point (1, ..., 1).

    ``D_i = sum_j w_j * (z_ij - 1)**2``, lower is better.  The squaring
    destroys the sign information of the normalized scores, so the induced
    ranking need not agree with the centroid ranking.
    """
    _check_z_weights(z, w)
    scores = ((z.values - 1.0) ** 2) @ w.weights
    return ScoreVector(Method.DEUCLID, Direction.LOWER_BETTER, scores)


def dist_manhattan(z: ZMatrix, w: WeightVector) -> ScoreVector:
    """Weighted Manhattan distance to the ideal point (1, ..., 1).

    ``D_i = sum_j w_j * |z_ij - 1|``, lower is better.  Chooses a different
    norm than :func:`dist_euclid` and can rank differently from it on the
    same data, which is the point: distance-to-ideal rankings are
    norm-dependent.
    """
    _check_z_weights(z, w)
    scores = np.abs(z.values - 1.0) @ w.weights
    return ScoreVector(Method.DMANHATTAN, Direction.LOWER_BETTER, scores)
