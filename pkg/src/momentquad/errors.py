"""Exception types raised by the quadrature pipeline."""


class MomentQuadError(Exception):
    """Base class for all momentquad errors."""


class SingularMatrix(MomentQuadError):
    """LU elimination hit a column whose remaining pivot candidates are all exactly zero."""


class UnknownWeight(MomentQuadError):
    """Weight-function name is not registered."""


class DuplicateName(MomentQuadError):
    """Attempted to register a weight family under a name already in use."""


class InvalidParameter(MomentQuadError):
    """Weight-family parameters violate the family's domain (e.g. m <= 0, alpha <= -1)."""


class IllConditioned(MomentQuadError):
    """A Hankel determinant evaluated <= 0: the moment matrix lost positive-definiteness
    at the working precision.  The caller should retry with more bits."""


class NegativeVariance(MomentQuadError):
    """Root mean/variance extracted from polynomial coefficients is negative beyond
    rounding tolerance, indicating corrupted coefficients upstream."""


class EmptyIntersection(MomentQuadError):
    """Root bounds do not intersect the support of the weight function."""


class BracketCountMismatch(MomentQuadError):
    """Sign scan found a number of root brackets different from the polynomial degree."""


class NoConvergence(MomentQuadError):
    """Brent refinement exceeded its iteration cap."""


class NonPositiveWeight(MomentQuadError):
    """A computed quadrature weight is <= 0, which signals precision failure."""


class RungFailed(MomentQuadError):
    """A ladder rung failed with a numerical error.

    Attributes:
        rung: 1-based index of the first failed rung.
        cause: short description of the failure.
    """

    def __init__(self, rung: int, cause: str):
        super().__init__(f"ladder rung {rung} failed: {cause}")
        self.rung = rung
        self.cause = cause


class LadderInconclusive(MomentQuadError):
    """All rungs ran but the two finest rungs disagree after conversion to binary64,
    so no stabilization index can be assigned.  Raise b1 or add rungs."""
