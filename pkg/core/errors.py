"""Exception hierarchy shared by all eigentrilat modules."""


class TrilaterationError(ValueError):
    """Base class for every error raised by the library."""


# --- Input validation ---
class DimensionMismatch(TrilaterationError):
    """Sender, distance or weight shapes are inconsistent."""


class NonFiniteInput(TrilaterationError):
    """NaN/inf entries or negative distances."""


class NonPositiveWeights(TrilaterationError):
    """Weight matrix is not symmetric positive definite."""


class MalformedInput(TrilaterationError):
    """A problem, anchor or measurement file could not be parsed."""


# --- Numerical kernels ---
class NotSymmetric(TrilaterationError):
    """Matrix passed to the symmetric eigensolver is not symmetric."""


class NoConvergence(TrilaterationError):
    """An iterative routine exceeded its iteration cap.

    ``last`` holds the final iterate when the routine has one to offer.
    """

    def __init__(self, message: str, last=None):
        super().__init__(message)
        self.last = last


class NoRealEigenvalue(TrilaterationError):
    """No eigenvalue is real within the requested tolerance."""


class NearSingular(TrilaterationError):
    """Shifted system too ill-conditioned for the simplified solver."""


class RankDeficient(TrilaterationError):
    """Linear baseline system does not have full column rank."""


class NonSmoothPoint(TrilaterationError):
    """Iterate coincides with a sender where the residual gradient is undefined."""


class AllCoordinatesKnown(TrilaterationError):
    """Known-coordinate reduction left no unknowns."""


class UnsupportedModel(TrilaterationError):
    """Noise model lacks the closed-form transform the operation needs."""


# --- Measurement pipeline ---
class InsufficientData(TrilaterationError):
    """Too few calibration records."""


class DegenerateFit(TrilaterationError):
    """Calibration distances do not determine the path-loss exponent."""


class UnknownAnchor(TrilaterationError):
    """Measurement references an anchor missing from the registry."""


class EmptyProblem(TrilaterationError):
    """No measurements remained after resolution."""
