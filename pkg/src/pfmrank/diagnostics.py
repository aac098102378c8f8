"""Executable checks for the properties a valid aggregator must satisfy.

Three kinds of evidence are produced here:

* :func:`comparability_check` inspects raw scales directly (equal minima
  and maxima across criteria) -- the precondition for aggregating raw
  scores without normalization.
* :func:`invariance_trial` stress-tests an aggregator's ranking against
  randomized per-criterion affine rescalings.  Rankings that change under
  such rescaling depend on arbitrary unit choices rather than on the
  preferences themselves.
* :func:`equilibrium_check` verifies the center-of-mass identities of the
  weighted centroid: each alternative's weighted scores balance exactly at
  its aggregated value, and each normalized column balances at zero.

Trial randomness is fully deterministic: the affine maps for trial ``t``
depend only on ``(seed, t, attempt)`` (see :func:`trial_affine_maps`), so
any reported counterexample can be replayed from the report's seed.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .aggregation import (
    DEFAULT_TIE_TOL,
    Method,
    Ranking,
    ScoreVector,
    rank,
    weighted_centroid,
)
from .baselines import dist_euclid, dist_manhattan, k_centroid, wam, wgm
from .core import (
    AffineMap,
    PreferenceMatrix,
    WeightVector,
    ZMatrix,
    apply_affine,
    z_normalize,
)
from .errors import PfmRankError, ValidationError

__all__ = [
    "ComparabilityReport",
    "InvarianceReport",
    "Counterexample",
    "EquilibriumReport",
    "ComparisonReport",
    "comparability_check",
    "trial_affine_maps",
    "invariance_trial",
    "equilibrium_check",
    "compare_methods",
    "score_method",
]

#: Slope range for random affine maps (sampled log-uniformly).  Three
#: orders of magnitude each way covers realistic unit changes such as
#: currency-to-thousands rescaling.
SLOPE_RANGE = (1e-3, 1e3)
#: Intercept range for random affine maps (sampled uniformly).
INTERCEPT_RANGE = (-1e4, 1e4)
#: How many times one trial is redrawn after an aggregator error before
#: the trial is abandoned.
MAX_REDRAWS = 10


def score_method(
    matrix: PreferenceMatrix,
    w: WeightVector,
    method: Method,
    *,
    z: ZMatrix | None = None,
) -> ScoreVector:
    """Run one aggregation method on a raw problem.

    Normalization-based methods accept a precomputed ``z`` so that several
    methods can share one normalization pass.
    """
    if method in (Method.PSTAR, Method.DEUCLID, Method.DMANHATTAN):
        if z is None:
            z = z_normalize(matrix)
        if method is Method.PSTAR:
            return weighted_centroid(z, w)
        if method is Method.DEUCLID:
            return dist_euclid(z, w)
        return dist_manhattan(z, w)
    if method is Method.WAM:
        return wam(matrix, w)
    if method is Method.WGM:
        return wgm(matrix, w)
    if method is Method.KCENTROID:
        return k_centroid(matrix, w)
    raise ValueError(f"unknown method {method!r}")


@dataclass(frozen=True)
class ComparabilityReport:
    """Whether raw criterion scales share their extremes.

    ``comparable`` is True iff every pair of criteria has equal minimum
    and equal maximum raw scores (within ``1e-9``).  When it is False,
    ``violating_pairs`` lists the offending criterion index pairs; those
    criteria would influence an unnormalized aggregation through their
    spread rather than through their weight.
    """

    comparable: bool
    criteria: tuple[str, ...]
    per_criterion: tuple[tuple[float, float, float], ...]
    violating_pairs: tuple[tuple[int, int], ...]


def comparability_check(
    matrix: PreferenceMatrix, tol: float = 1e-9
) -> ComparabilityReport:
    """Check that all criteria share equal min and max raw scores."""
    lo = matrix.values.min(axis=0)
    hi = matrix.values.max(axis=0)
    per = tuple(
        (float(lo[j]), float(hi[j]), float(hi[j] - lo[j]))
        for j in range(len(matrix.criteria))
    )
    bad = tuple(
        (j, k)
        for j in range(len(matrix.criteria))
        for k in range(j + 1, len(matrix.criteria))
        if abs(lo[j] - lo[k]) > tol or abs(hi[j] - hi[k]) > tol
    )
    return ComparabilityReport(not bad, matrix.criteria, per, bad)


def trial_affine_maps(
    seed: int, trial: int, n_criteria: int, attempt: int = 0
) -> tuple[AffineMap, ...]:
    """Deterministic per-trial affine maps.

    The generator contract, fixed so reports are reproducible across runs
    and platforms: a PCG64 generator is seeded with the entropy tuple
    ``(seed, trial, attempt)``; slopes are ``10**u`` with ``u`` uniform on
    ``[-3, 3]`` (log-uniform over :data:`SLOPE_RANGE`), then intercepts
    are drawn uniformly over :data:`INTERCEPT_RANGE`.
    """
    rng = np.random.default_rng((seed, trial, attempt))
    slopes = 10.0 ** rng.uniform(-3.0, 3.0, n_criteria)
    intercepts = rng.uniform(*INTERCEPT_RANGE, n_criteria)
    return tuple(AffineMap(a, b) for a, b in zip(slopes, intercepts))


@dataclass(frozen=True)
class Counterexample:
    """A replayable ranking change found by :func:`invariance_trial`."""

    trial: int
    maps: tuple[AffineMap, ...]
    matrix: PreferenceMatrix
    ranking_before: Ranking
    ranking_after: Ranking


@dataclass(frozen=True)
class InvarianceReport:
    """Outcome of randomized affine-rescaling trials for one method.

    A violation is a change in the ranking's tie groups -- either a
    different order or a different tie structure.  Score values are
    allowed to change; rankings are not.  ``skipped`` counts redrawn
    trials whose transformed matrix made the aggregator fail (for
    example, by collapsing a column numerically).
    """

    method: Method
    trials: int
    violations: int
    skipped: int
    seed: int
    first_counterexample: Counterexample | None

    def __post_init__(self):
        if self.violations > self.trials:
            raise ValidationError("violations cannot exceed trials")
        if (self.first_counterexample is None) == (self.violations > 0):
            raise ValidationError("counterexample must be present iff violations > 0")


def invariance_trial(
    matrix: PreferenceMatrix,
    w: WeightVector,
    method: Method,
    trials: int,
    seed: int,
    *,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> InvarianceReport:
    """Fuzz one aggregator with random per-criterion affine rescalings.

    Every trial rescales each criterion with a fresh random positive
    affine map and re-runs the aggregator.  The preferences described by
    the matrix are unchanged by construction, so any change in the
    ranking is a violation of scale invariance.

    Parameters
    ----------
    trials : int
        Number of trials, at least 1.
    seed : int
        Root seed of the deterministic map generator.  Identical
        ``(matrix, w, method, trials, seed)`` always produce an identical
        report.
    """
    if trials < 1:
        raise ValidationError("need at least one trial")
    before = rank(score_method(matrix, w, method), tie_tol)
    n = len(matrix.criteria)
    violations = 0
    skipped = 0
    counterexample = None
    for t in range(trials):
        for attempt in range(MAX_REDRAWS + 1):
            maps = trial_affine_maps(seed, t, n, attempt)
            try:
                transformed = apply_affine(matrix, maps)
                after = rank(score_method(transformed, w, method), tie_tol)
            except PfmRankError:
                skipped += 1
                continue
            if after != before:
                violations += 1
                if counterexample is None:
                    counterexample = Counterexample(t, maps, transformed, before, after)
            break
    return InvarianceReport(method, trials, violations, skipped, seed, counterexample)


@dataclass(frozen=True)
class EquilibriumReport:
    """Center-of-mass residuals of a centroid aggregation.

    ``horizontal[i] = sum_j w_j * (z_ij - score_i)`` must vanish because
    the weights sum to one; ``vertical[j] = mean_i z_ij`` must vanish
    because normalization centers each column.  Both are algebraic
    identities, so the maxima stay at floating-point noise level for any
    valid input.
    """

    horizontal: tuple[float, ...]
    vertical: tuple[float, ...]
    max_horizontal: float
    max_vertical: float


def equilibrium_check(
    z: ZMatrix, w: WeightVector, pstar: ScoreVector
) -> EquilibriumReport:
    """Residuals of the beam-balance identities for a computed centroid."""
    if pstar.method is not Method.PSTAR:
        raise ValidationError("equilibrium check applies to centroid scores")
    horizontal = (z.values - pstar.scores[:, None]) @ w.weights
    vertical = z.values.mean(axis=0)
    return EquilibriumReport(
        tuple(float(v) for v in horizontal),
        tuple(float(v) for v in vertical),
        float(np.abs(horizontal).max()),
        float(np.abs(vertical).max()),
    )


@dataclass(frozen=True)
class ComparisonReport:
    """Dense ranks of several methods side by side.

    ``rank_table[m][i]`` is the dense rank of alternative ``i`` under
    ``methods[m]``.  ``agreement`` holds, for each method pair in listing
    order, whether the two induced rankings have identical tie groups.
    Methods that failed appear in ``errors`` instead of the table.
    """

    alternatives: tuple[str, ...]
    methods: tuple[Method, ...]
    rank_table: tuple[tuple[int, ...], ...]
    rankings: tuple[Ranking, ...]
    agreement: tuple[tuple[Method, Method, bool], ...]
    errors: tuple[tuple[Method, str], ...]


def compare_methods(
    matrix: PreferenceMatrix,
    w: WeightVector,
    methods: tuple[Method, ...] | list[Method],
    *,
    tie_tol: float = DEFAULT_TIE_TOL,
) -> ComparisonReport:
    """Rank the same problem under several methods and compare the results.

    Disagreement between methods is the expected finding, not an error;
    per-method failures (such as a constant column for normalization-based
    methods) are reported inline and do not affect the other methods.
    """
    methods = tuple(methods)
    if not methods:
        raise ValidationError("need at least one method")
    if len(set(methods)) != len(methods):
        raise ValidationError("methods must be unique")
    shared_z = None
    z_error: PfmRankError | None = None
    if any(m in (Method.PSTAR, Method.DEUCLID, Method.DMANHATTAN) for m in methods):
        try:
            shared_z = z_normalize(matrix)
        except PfmRankError as exc:
            z_error = exc
    ok: list[Method] = []
    rankings: list[Ranking] = []
    errors: list[tuple[Method, str]] = []
    for method in methods:
        try:
            if method in (Method.PSTAR, Method.DEUCLID, Method.DMANHATTAN) and shared_z is None:
                raise z_error  # normalization failed once; same error for each
            scores = score_method(matrix, w, method, z=shared_z)
            rankings.append(rank(scores, tie_tol))
            ok.append(method)
        except PfmRankError as exc:
            errors.append((method, str(exc)))
    table = tuple(
        tuple(r.dense_ranks[i] for r in rankings) for i in range(len(matrix.alternatives))
    )
    agreement = tuple(
        (ok[a], ok[b], rankings[a].tie_groups == rankings[b].tie_groups)
        for a in range(len(ok))
        for b in range(a + 1, len(ok))
    )
    return ComparisonReport(
        alternatives=matrix.alternatives,
        methods=tuple(ok),
        rank_table=table,
        rankings=tuple(rankings),
        agreement=agreement,
        errors=tuple(errors),
    )
