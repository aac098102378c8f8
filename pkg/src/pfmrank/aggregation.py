"""Weighted-centroid aggregation and ranking in the normalized space.

The aggregated preference of an alternative is the weighted centroid of
its normalized scores: the single point that balances the weighted
per-criterion scores like masses on a beam.  It is also the minimizer of
the weighted squared deviation (see :func:`wlsd_objective`), but only the
linear centroid form carries preference meaning; the quadratic objective
is a derivation device, which is why it is exposed solely for property
testing.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from typing import Sequence

import numpy as np

from .core import PreferenceMatrix, WeightVector, ZMatrix, z_normalize
from .errors import DimensionMismatch, ValidationError

__all__ = [
    "Method",
    "Direction",
    "ScoreVector",
    "Ranking",
    "AggregationResult",
    "weighted_centroid",
    "wlsd_objective",
    "minmax_scale",
    "rank",
    "rank_pstar",
]

#: Default absolute tolerance under which two scores count as tied.
DEFAULT_TIE_TOL = 1e-9


class Method(Enum):
    """Aggregation method tags; values double as the CLI / file names."""

    PSTAR = "pstar"
    WAM = "wam"
    WGM = "wgm"
    KCENTROID = "kcentroid"
    DEUCLID = "euclid"
    DMANHATTAN = "manhattan"


class Direction(Enum):
    HIGHER_BETTER = "higher_better"
    LOWER_BETTER = "lower_better"


#: Methods whose scores are distances, so smaller means better.
_LOWER_BETTER = frozenset({Method.DEUCLID, Method.DMANHATTAN})


@dataclass(frozen=True, eq=False)
class ScoreVector:
    """Per-alternative scores produced by one aggregation method."""

    method: Method
    direction: Direction
    scores: np.ndarray

    def __post_init__(self):
        arr = np.array(self.scores, dtype=float)
        if arr.ndim != 1:
            raise ValidationError("scores must be one-dimensional")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("scores must be finite")
        expected = (
            Direction.LOWER_BETTER if self.method in _LOWER_BETTER else Direction.HIGHER_BETTER
        )
        if self.direction is not expected:
            raise ValidationError(
                f"method {self.method.value} must have direction {expected.value}"
            )
        arr.setflags(write=False)
        object.__setattr__(self, "scores", arr)

    def __len__(self) -> int:
        return self.scores.size

    def __eq__(self, other):
        if not isinstance(other, ScoreVector):
            return NotImplemented
        return (
            self.method is other.method
            and self.direction is other.direction
            and np.array_equal(self.scores, other.scores)
        )


@dataclass(frozen=True)
class Ranking:
    """Tie-aware ordering of alternatives.

    ``tie_groups`` lists groups of alternative indices from best to worst;
    indices inside a group appear in input order.  ``dense_ranks`` maps
    each alternative to its group's 1-based position, so tied alternatives
    share a rank and the next distinct group takes the next integer.
    """

    tie_groups: tuple[tuple[int, ...], ...]
    dense_ranks: tuple[int, ...]

    def order_notation(self, labels: Sequence[str]) -> str:
        """Human-readable ordering like ``A1 > A2 = A3``."""
        return " > ".join(
            " = ".join(labels[i] for i in group) for group in self.tie_groups
        )


@dataclass(frozen=True)
class AggregationResult:
    """A score vector with its [0, 100] rescaling and induced ranking."""

    alternatives: tuple[str, ...]
    score_vector: ScoreVector
    scaled: tuple[float, ...] | None
    ranking: Ranking
    warnings: tuple[str, ...] = ()


def weighted_centroid(z: ZMatrix, w: WeightVector) -> ScoreVector:
    """Aggregate normalized scores into one value per alternative.

    ``score_i = sum_j w_j * z_ij`` -- the center of mass of alternative
    i's normalized scores with the criterion weights as masses.  Because
    the weights sum to one, the score lives on the same normalized scale
    as the inputs, and it inherits their invariance under per-criterion
    affine rescaling of the raw data.

    Raises
    ------
    DimensionMismatch
        If the weight count differs from the number of criteria.
    """
    if len(w) != z.shape[1]:
        raise DimensionMismatch(f"{len(w)} weights for {z.shape[1]} criteria")
    return ScoreVector(Method.PSTAR, Direction.HIGHER_BETTER, z.values @ w.weights)


def wlsd_objective(z_row: Sequence[float], w: WeightVector, value: float) -> float:
    """Weighted squared deviation of one alternative's scores from ``value``.

    ``sum_j w_j * (z_j - value)**2``.  Its minimizer over ``value`` is the
    weighted centroid, which is the only reason this function exists: the
    quadratic itself has no preference meaning and must not be used to
    compare alternatives.  See the argmin property tests.
    """
    row = np.asarray(z_row, dtype=float)
    if row.ndim != 1 or row.size != len(w):
        raise DimensionMismatch(f"z-row of length {row.size} for {len(w)} weights")
    return float(np.sum(w.weights * (row - value) ** 2))


def minmax_scale(
    scores: ScoreVector,
    lo: float = 0.0,
    hi: float = 100.0,
    *,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> tuple[list[float], bool]:
    """Affinely rescale scores so the extremes land on ``lo`` and ``hi``.

    An increasing affine map, so the ranking and all ratios of score
    differences are preserved.  When every score is tied (spread within
    ``tie_tol``) there is no spread to scale; all values become the
    midpoint ``(lo + hi) / 2`` and the second return value is True.

    Returns
    -------
    (scaled, all_tied) : (list of float, bool)
    """
    if not lo < hi:
        raise ValidationError(f"lo must be < hi (got {lo!r}, {hi!r})")
    s = scores.scores
    spread = float(s.max() - s.min())
    if spread <= tie_tol:
        return [(lo + hi) / 2.0] * len(s), True
    scaled = (s - s.min()) / spread * (hi - lo) + lo
    return [float(v) for v in scaled], False


def rank(scores: ScoreVector, tie_tol: float = DEFAULT_TIE_TOL) -> Ranking:
    """Order alternatives by score, grouping near-equal scores as ties.

    Sorting is descending for higher-is-better methods and ascending for
    distance methods.  Ties chain transitively: consecutive sorted scores
    within ``tie_tol`` of each other fall into one group, so ``a ~ b`` and
    ``b ~ c`` puts all three together even if ``|a - c| > tie_tol``.
    """
    s = scores.scores
    descending = scores.direction is Direction.HIGHER_BETTER
    order = sorted(range(len(s)), key=lambda i: (-s[i], i) if descending else (s[i], i))
    groups: list[list[int]] = [[order[0]]]
    for prev, idx in zip(order, order[1:]):
        if abs(s[idx] - s[prev]) <= tie_tol:
            groups[-1].append(idx)
        else:
            groups.append([idx])
    tie_groups = tuple(tuple(sorted(g)) for g in groups)
    dense = [0] * len(s)
    for position, group in enumerate(tie_groups, start=1):
        for i in group:
            dense[i] = position
    return Ranking(tie_groups, tuple(dense))


def rank_pstar(
    matrix: PreferenceMatrix,
    w: WeightVector,
    *,
    tie_tol: float = DEFAULT_TIE_TOL,
    degenerate: str = "reject",
) -> AggregationResult:
    """Full pipeline: normalize, aggregate, rescale to [0, 100], rank.

    Raises
    ------
    DegenerateCriterion
        For a zero-spread criterion under the default ``"reject"`` policy.
    DimensionMismatch
        If weights and criteria disagree in length.
    """
    if len(w) != len(matrix.criteria):
        raise DimensionMismatch(
            f"{len(w)} weights for {len(matrix.criteria)} criteria"
        )
    warnings: list[str] = []
    z = z_normalize(matrix, degenerate=degenerate)
    for j in np.flatnonzero(z.params.stddevs == 0.0):
        warnings.append(
            f"criterion {matrix.criteria[int(j)]!r} has zero spread; "
            "its normalized scores were set to 0"
        )
    scores = weighted_centroid(z, w)
    scaled, all_tied = minmax_scale(scores, tie_tol=tie_tol)
    if all_tied:
        warnings.append("all alternatives are tied; scaled scores set to the midpoint")
    return AggregationResult(
        alternatives=matrix.alternatives,
        score_vector=scores,
        scaled=tuple(scaled),
        ranking=rank(scores, tie_tol),
        warnings=tuple(warnings),
    )
