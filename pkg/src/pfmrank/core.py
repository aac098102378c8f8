"""Domain types and the linear preference space construction.

Preference scores live on per-criterion interval scales: only differences
between scores, and ratios of such differences, carry meaning.  The one
family of transformations that preserves all of that information is the
positive affine map ``p -> a*p + b`` with ``a > 0``.  Normalizing each
criterion to mean 0 and population standard deviation 1 is itself such a
map, so it loses nothing while placing every criterion on a common scale
with a shared zero reference.  That normalized coordinate system is the
linear preference space in which the aggregators of
:mod:`pfmrank.aggregation` operate.

All types here are immutable after construction and all operations are
pure functions, so everything is safe to share across threads.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .errors import (
    DegenerateCriterion,
    DimensionMismatch,
    InvalidAffine,
    ValidationError,
    ZeroDenominator,
)

__all__ = [
    "PreferenceMatrix",
    "WeightVector",
    "AffineMap",
    "NormalizationParams",
    "ZMatrix",
    "column_stats",
    "z_normalize",
    "normalization_as_affine",
    "apply_affine",
    "k_ratio",
]

#: Absolute tolerance used for equality checks on scores and weights.
TOLERANCE = 1e-9


def _frozen_array(values, dtype=float, ndim=None) -> np.ndarray:
    arr = np.array(values, dtype=dtype)
    if ndim is not None and arr.ndim != ndim:
        raise ValidationError(f"expected a {ndim}-dimensional array, got shape {arr.shape}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True, eq=False)
class PreferenceMatrix:
    """Raw preference scores for I alternatives rated on J criteria.

    Parameters
    ----------
    alternatives : sequence of str
        Row labels, unique and non-empty.  At least two alternatives are
        required: with a single alternative there is no difference to rank.
    criteria : sequence of str
        Column labels, unique and non-empty.
    values : array_like, shape (I, J)
        Finite raw scores.  Each column is a point set on its own
        interval scale; the absolute numbers carry no meaning beyond
        their differences.
    """

    alternatives: tuple[str, ...]
    criteria: tuple[str, ...]
    values: np.ndarray

    def __post_init__(self):
        alts = tuple(str(a) for a in self.alternatives)
        crits = tuple(str(c) for c in self.criteria)
        if len(alts) < 2:
            raise ValidationError("need at least 2 alternatives")
        if len(crits) < 1:
            raise ValidationError("need at least 1 criterion")
        for axis, labels in (("alternative", alts), ("criterion", crits)):
            if any(not lab for lab in labels):
                raise ValidationError(f"{axis} labels must be non-empty")
            if len(set(labels)) != len(labels):
                raise ValidationError(f"{axis} labels must be unique")
        arr = _frozen_array(self.values, ndim=2)
        if arr.shape != (len(alts), len(crits)):
            raise DimensionMismatch(
                f"values shape {arr.shape} does not match "
                f"{len(alts)} alternatives x {len(crits)} criteria"
            )
        if not np.all(np.isfinite(arr)):
            raise ValidationError("all preference scores must be finite")
        object.__setattr__(self, "alternatives", alts)
        object.__setattr__(self, "criteria", crits)
        object.__setattr__(self, "values", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    def column(self, j: int) -> np.ndarray:
        return self.values[:, j]

    def __eq__(self, other):
        if not isinstance(other, PreferenceMatrix):
            return NotImplemented
        return (
            self.alternatives == other.alternatives
            and self.criteria == other.criteria
            and np.array_equal(self.values, other.values)
        )


@dataclass(frozen=True, eq=False)
class WeightVector:
    """Non-negative criterion weights that sum to one.

    The unit-sum constraint is what makes the weighted centroid of a row
    coincide with the minimizer of the weighted squared deviation, so it
    is validated strictly (absolute tolerance 1e-9) rather than silently
    renormalized.  Use ``parse_problem(..., normalize_weights=True)`` when
    reading files with unnormalized weights.
    """

    weights: np.ndarray

    def __post_init__(self):
        arr = _frozen_array(self.weights, ndim=1)
        if arr.size < 1:
            raise ValidationError("need at least one weight")
        if not np.all(np.isfinite(arr)):
            raise ValidationError("weights must be finite")
        if np.any(arr < 0):
            raise ValidationError("weights must be non-negative")
        total = float(arr.sum())
        if abs(total - 1.0) > TOLERANCE:
            raise ValidationError(f"weights must sum to 1 (got {total!r})")
        object.__setattr__(self, "weights", arr)

    def __len__(self) -> int:
        return self.weights.size

    def __eq__(self, other):
        if not isinstance(other, WeightVector):
            return NotImplemented
        return np.array_equal(self.weights, other.weights)


@dataclass(frozen=True)
class AffineMap:
    """Order-preserving rescaling ``x -> slope*x + intercept``, slope > 0."""

    slope: float
    intercept: float

    def __post_init__(self):
        slope = float(self.slope)
        intercept = float(self.intercept)
        if not (np.isfinite(slope) and np.isfinite(intercept)):
            raise InvalidAffine("slope and intercept must be finite")
        if slope <= 0:
            raise InvalidAffine(f"slope must be strictly positive (got {slope!r})")
        object.__setattr__(self, "slope", slope)
        object.__setattr__(self, "intercept", intercept)

    def __call__(self, x):
        return self.slope * x + self.intercept

    @classmethod
    def identity(cls) -> "AffineMap":
        return cls(1.0, 0.0)


@dataclass(frozen=True, eq=False)
class NormalizationParams:
    """Per-criterion mean and population standard deviation of raw scores.

    ``stddevs`` uses the population definition (divide by I, not I - 1).
    A zero standard deviation is representable here; operations that need
    a usable scale reject it with :class:`DegenerateCriterion`.
    """

    means: np.ndarray
    stddevs: np.ndarray

    def __post_init__(self):
        means = _frozen_array(self.means, ndim=1)
        stds = _frozen_array(self.stddevs, ndim=1)
        if means.shape != stds.shape:
            raise DimensionMismatch("means and stddevs must have equal length")
        if np.any(stds < 0):
            raise ValidationError("standard deviations cannot be negative")
        object.__setattr__(self, "means", means)
        object.__setattr__(self, "stddevs", stds)

    def __len__(self) -> int:
        return self.means.size

    def __eq__(self, other):
        if not isinstance(other, NormalizationParams):
            return NotImplemented
        return np.array_equal(self.means, other.means) and np.array_equal(
            self.stddevs, other.stddevs
        )


@dataclass(frozen=True, eq=False)
class ZMatrix:
    """Normalized scores together with the parameters that produced them.

    Outputs of :func:`z_normalize` satisfy, per column, |mean| <= 1e-9 and
    |population std - 1| <= 1e-9 (exception: a column normalized under the
    ``"zero"`` degenerate policy is identically zero).  Direct construction
    does not re-check those properties, so externally supplied z-scores can
    be wrapped as-is.
    """

    values: np.ndarray
    params: NormalizationParams

    def __post_init__(self):
        arr = _frozen_array(self.values, ndim=2)
        if arr.shape[1] != len(self.params):
            raise DimensionMismatch(
                f"{arr.shape[1]} z-columns but {len(self.params)} normalization params"
            )
        object.__setattr__(self, "values", arr)

    @property
    def shape(self) -> tuple[int, int]:
        return self.values.shape

    @classmethod
    def from_values(cls, values) -> "ZMatrix":
        """Wrap externally supplied z-scores with identity parameters."""
        arr = np.asarray(values, dtype=float)
        j = arr.shape[1]
        return cls(arr, NormalizationParams(np.zeros(j), np.ones(j)))

    def __eq__(self, other):
        if not isinstance(other, ZMatrix):
            return NotImplemented
        return np.array_equal(self.values, other.values) and self.params == other.params


def column_stats(matrix: PreferenceMatrix) -> NormalizationParams:
    """Per-criterion mean and population standard deviation.

    Examples
    --------
    >>> m = PreferenceMatrix(("a", "b"), ("c",), [[15.0], [20.0]])
    >>> params = column_stats(m)
    >>> float(params.means[0]), float(params.stddevs[0])
    (17.5, 2.5)
    """
    values = matrix.values
    return NormalizationParams(values.mean(axis=0), values.std(axis=0))


def z_normalize(matrix: PreferenceMatrix, *, degenerate: str = "reject") -> ZMatrix:
    """Map every criterion onto the common normalized scale.

    Each column j is transformed by ``z = (p - mean_j) / std_j`` where the
    standard deviation is the population one.  This is the affine map with
    slope ``1/std_j`` and intercept ``-mean_j/std_j``, so all ratios of
    preference differences survive unchanged while every criterion gains
    mean 0 and unit spread.

    Parameters
    ----------
    matrix : PreferenceMatrix
    degenerate : {"reject", "zero"}
        What to do with a zero-spread column.  ``"reject"`` (default)
        raises :class:`DegenerateCriterion`; ``"zero"`` emits an all-zero
        column, treating the criterion as uninformative.  Downstream
        aggregation attaches a warning when the latter happens.

    Raises
    ------
    DegenerateCriterion
        If some column is constant and ``degenerate="reject"``.
    """
    if degenerate not in ("reject", "zero"):
        raise ValueError(f"degenerate policy must be 'reject' or 'zero', got {degenerate!r}")
    params = column_stats(matrix)
    flat = params.stddevs == 0.0
    if np.any(flat) and degenerate == "reject":
        j = int(np.flatnonzero(flat)[0])
        raise DegenerateCriterion(j, matrix.criteria[j])
    safe = np.where(flat, 1.0, params.stddevs)
    z = (matrix.values - params.means) / safe
    if np.any(flat):
        z[:, flat] = 0.0
    return ZMatrix(z, params)


def normalization_as_affine(params: NormalizationParams, criterion: int) -> AffineMap:
    """The affine map ``p -> (p - mean_j)/std_j`` for one criterion.

    Raises
    ------
    DegenerateCriterion
        If the criterion has zero standard deviation.
    """
    if not 0 <= criterion < len(params):
        raise IndexError(f"criterion index {criterion} out of range")
    sigma = float(params.stddevs[criterion])
    mu = float(params.means[criterion])
    if sigma == 0.0:
        raise DegenerateCriterion(criterion)
    return AffineMap(1.0 / sigma, -mu / sigma)


def apply_affine(matrix: PreferenceMatrix, maps: Sequence[AffineMap]) -> PreferenceMatrix:
    """Rescale each criterion with its own positive affine map.

    Because every map preserves difference ratios within its column, the
    transformed matrix describes exactly the same preferences; the
    normalized scores, and everything computed from them, are unchanged.
    """
    maps = tuple(maps)
    if len(maps) != len(matrix.criteria):
        raise DimensionMismatch(
            f"{len(maps)} affine maps for {len(matrix.criteria)} criteria"
        )
    for m in maps:
        if not isinstance(m, AffineMap):
            raise InvalidAffine(f"expected AffineMap, got {type(m).__name__}")
    slopes = np.array([m.slope for m in maps])
    intercepts = np.array([m.intercept for m in maps])
    return PreferenceMatrix(
        matrix.alternatives, matrix.criteria, matrix.values * slopes + intercepts
    )


def k_ratio(pa: float, pb: float, pc: float, pd: float) -> float:
    """Ratio of two preference differences, ``(pa - pb) / (pc - pd)``.

    This is the invariant of interval scales: applying one positive affine
    map to all four scores multiplies numerator and denominator by the same
    slope and cancels the shift, leaving the ratio untouched.

    Raises
    ------
    ZeroDenominator
        If ``|pc - pd|`` is below ``1e-12 * max(1, |pc|, |pd|)``.
    """
    denom = pc - pd
    if abs(denom) <= 1e-12 * max(1.0, abs(pc), abs(pd)):
        raise ZeroDenominator(f"pc - pd is numerically zero ({denom!r})")
    return (pa - pb) / denom
