"""Exception types shared across the package."""


class PfmRankError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(PfmRankError):
    """An input violates one of its documented invariants."""


class DimensionMismatch(PfmRankError):
    """Two inputs that must agree in shape do not."""


class DegenerateCriterion(PfmRankError):
    """A criterion column has zero spread and carries no ranking information."""

    def __init__(self, criterion: int, label: str | None = None):
        self.criterion = criterion
        self.label = label
        where = f"{label!r} (index {criterion})" if label is not None else f"index {criterion}"
        super().__init__(f"criterion {where} has zero spread (sigma = 0)")


class InvalidAffine(PfmRankError):
    """An affine map with non-positive slope would destroy preference order."""


class ZeroDenominator(PfmRankError):
    """The denominator of a k-ratio is numerically indistinguishable from zero."""


class ParseError(PfmRankError):
    """Problem bytes could not be parsed in the requested format."""
