"""Exception hierarchy shared by the numeric pipeline and the CLI."""


class ProjmonoError(Exception):
    """Base class for every error raised by this package."""


class NumericFailure(ProjmonoError):
    """A numerical step failed; retrying with other random choices may help."""


class NonConvergence(NumericFailure):
    pass


class IllConditioned(NumericFailure):
    """Floating gcd could not decide whether a remainder vanishes."""


class DegenerateLeading(NumericFailure):
    pass


class AmbiguousCluster(NumericFailure):
    pass


class PathCollision(NumericFailure):
    pass


class NewtonDivergence(NumericFailure):
    pass


class AmbiguousMatching(NumericFailure):
    pass


class DegenerateDirection(NumericFailure):
    pass


class FloatingInconclusive(NumericFailure):
    pass


class ExactModeRequired(NumericFailure):
    pass


class RankDeficient(ProjmonoError):
    def __init__(self, message, rank):
        super().__init__(message)
        self.rank = rank


class CenterContainsCurveComponent(ProjmonoError):
    pass


class SpanDimensionMismatch(ProjmonoError):
    pass


class NotTransitive(ProjmonoError):
    pass


class UnknownConstruction(ProjmonoError):
    pass


class VerificationFailure(ProjmonoError):
    """A monodromy invariant did not hold; ``invariant`` names which one."""

    def __init__(self, message, invariant):
        super().__init__(message)
        self.invariant = invariant


class CycleParseError(ProjmonoError, ValueError):
    def __init__(self, message, position):
        super().__init__(f"{message} at position {position}")
        self.position = position
