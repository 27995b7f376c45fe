"""Exception hierarchy.

Every domain error raised by this package derives from HsdiscError so
callers (and the CLI) can distinguish contract violations from bugs.
"""


class HsdiscError(Exception):
    """Base class for all domain errors."""


class FormatError(HsdiscError):
    """Malformed file content or non-canonical scalar encoding."""


class DimensionMismatchError(HsdiscError):
    """Point, halfspace or instance dimensions disagree."""


class EmptyInstanceError(HsdiscError):
    """Operation requires at least one point."""


class EmptyColorClassError(HsdiscError):
    """Operation requires both color classes to be non-empty."""


class OutOfRangeError(HsdiscError):
    """A numeric parameter lies outside its admissible interval."""


class AffinelyDependentError(HsdiscError):
    """The given points do not span a hyperplane."""


class SingularMatrixError(HsdiscError):
    """Matrix inversion or solving attempted on a singular matrix."""


class ZeroDenominatorError(HsdiscError):
    """A rank-one update formula hit a vanishing denominator."""


class TooFewValuesError(HsdiscError):
    """k-sum instance holds fewer than k values."""


class TooFewPointsError(HsdiscError):
    """Point-set instance holds fewer than d+1 points."""


class WrongDimensionError(HsdiscError):
    """Solver called on an instance of an unsupported dimension."""


class TooLargeError(HsdiscError):
    """Instance exceeds a brute-force oracle's size guard."""


class UnsupportedKError(HsdiscError):
    """k-sum reduction requires k >= 3."""


class GammaOutOfRangeError(HsdiscError):
    """Shift parameter gamma violates its admissible open interval."""


class NoStraddledPairError(HsdiscError):
    """Witness recovery found a gadget line without a straddled pair."""


class BoundaryThroughPointError(HsdiscError):
    """Halfspace boundary passes exactly through a reduced point."""


class NonzeroSumError(HsdiscError):
    """Recovered k-sum witness failed its exact zero-sum check."""


class NotDegenerateError(HsdiscError):
    """Recovered point tuple failed its exact degeneracy check."""


class InfeasiblePlantError(HsdiscError):
    """Generator could not plant a witness within the given bounds."""
