"""Exception hierarchy shared by all modules."""


class UnivalenceError(Exception):
    """Base class for every error raised by this package."""


class DivisionByZeroConstantTerm(UnivalenceError, ZeroDivisionError):
    pass


class CompositionNonzeroConstant(UnivalenceError, ValueError):
    pass


class NotLocallyUnivalent(UnivalenceError, ValueError):
    pass


class InvalidExponent(UnivalenceError, ValueError):
    pass


class OverflowAtOrder(UnivalenceError, OverflowError):
    def __init__(self, order: int):
        super().__init__(f"Euler number E_{order} exceeds double range")
        self.order = order


class ParameterDomain(UnivalenceError, ValueError):
    pass


class EndpointSingularity(UnivalenceError, ValueError):
    pass


class LimitUnavailable(UnivalenceError, ValueError):
    pass


class NoSeriesForm(UnivalenceError, ValueError):
    pass


class EvaluationFailure(UnivalenceError, ArithmeticError):
    pass


class NoLimit(UnivalenceError, ArithmeticError):
    pass


class SeriesDivergence(UnivalenceError, ValueError):
    pass


class StepUnderflow(UnivalenceError, ArithmeticError):
    def __init__(self, reach: float):
        super().__init__(f"step size underflow; integration reached x={reach!r}")
        self.reach = reach


class ZeroCrossed(UnivalenceError, ValueError):
    pass


class OscillatoryNearEndpoint(UnivalenceError, ArithmeticError):
    pass


class CandidateNotAdmissible(UnivalenceError, ValueError):
    pass


class EmptyAdmissibleSet(UnivalenceError, ValueError):
    pass


class IoFailure(UnivalenceError, OSError):
    pass
