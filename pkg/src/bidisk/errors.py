"""Exception hierarchy for the bidisk library."""


class BidiskError(Exception):
    """Base class for all bidisk-specific failures."""


class MissingIndex(BidiskError, LookupError):
    """A correlation coefficient outside the stored band was requested."""

    def __init__(self, index):
        super().__init__(tuple(index))
        self.index = tuple(index)

    def __str__(self):
        return "correlation coefficient c[%d,%d] is not available" % self.index


class NotHermitian(BidiskError):
    """A matrix required to be Hermitian deviates beyond tolerance."""


class NotPositiveDefinite(BidiskError):
    """A matrix required to be positive definite is not."""


class DegenerateDeterminant(BidiskError):
    """det A(z) vanishes identically, so root locations are undefined."""


class NotPositiveOnCircle(BidiskError):
    """A trigonometric matrix polynomial is not positive definite on the circle."""


class NoConvergence(BidiskError):
    """An iterative computation did not reach the requested accuracy."""


class Infeasible(BidiskError):
    """The correlation band admits no stable filter pair."""


class StructureViolation(BidiskError):
    """A structural zero pattern or Hankel/Toeplitz shape failed beyond tolerance."""

    def __init__(self, message, magnitude=None):
        super().__init__(message)
        self.magnitude = magnitude


class Unstable(BidiskError):
    """A filter polynomial failed the bidisk stability certificate."""


class SingularSection(BidiskError):
    """A finite multiplication-operator section is numerically singular."""


class NormAtLeastOne(BidiskError):
    """A contraction bound (operator norm < 1) required by the construction fails."""


class IllConditioned(BidiskError):
    """The contraction gap 1 - ||H|| is too small for a reliable solve."""


class CommutationViolation(BidiskError):
    """The two-variable commutation identity fails beyond tolerance."""
