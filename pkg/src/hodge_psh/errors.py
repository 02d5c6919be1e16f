"""Exception types raised by the library."""


class HodgePshError(Exception):
    """Base class for all library errors."""


class InvalidHodgeNumber(HodgePshError, ValueError):
    pass


class InvalidKind(HodgePshError, ValueError):
    pass


class DimensionError(HodgePshError, ValueError):
    pass


class NotNilpotent(HodgePshError, ValueError):
    pass


class SplittingFailure(HodgePshError):
    pass


class NoLeadingTerm(HodgePshError, ValueError):
    pass


class SingularEvaluation(HodgePshError, ValueError):
    def __init__(self, message, magnitude=None):
        super().__init__(message)
        self.magnitude = magnitude


class ConstructionFailure(HodgePshError):
    pass


class OutsideChart(HodgePshError):
    pass


class NotApplicable(HodgePshError):
    pass


class AmbiguousClassification(HodgePshError):
    pass


class DominanceViolation(HodgePshError):
    pass


class DivergenceViolation(HodgePshError):
    pass


class PshViolation(HodgePshError):
    pass


class NonnegativityViolation(HodgePshError):
    pass
