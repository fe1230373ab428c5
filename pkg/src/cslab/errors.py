"""Exception types shared across the package."""


class CsLabError(ValueError):
    """Base class for all cslab failures."""


class DimensionMismatchError(CsLabError):
    pass


class NotSemisimpleError(CsLabError):
    """Raised when a matrix is (numerically) defective."""


class SingularMatrixError(CsLabError):
    pass


class DegenerateFrameError(CsLabError):
    """Raised when a line tuple is too close to linearly dependent."""


class CoincidentPointsError(CsLabError):
    """Raised when a divided-difference tuple has coincident points."""


class InsufficientSamplesError(CsLabError):
    """Raised when a domain cannot supply enough distinct sample points."""


class BudgetExceededError(CsLabError):
    """Raised when a configuration complex would exceed the node budget."""


class ModelResolutionError(CsLabError):
    """Raised when the discrete model is too coarse for a well-defined
    action on components; refine with smaller epsilon or more points."""
