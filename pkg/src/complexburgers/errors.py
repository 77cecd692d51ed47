"""Exception hierarchy shared by every module in the package."""


class BurgersError(Exception):
    """Base class for all package errors."""


class NumericalFailure(BurgersError, ArithmeticError):
    """A computation ran but could not deliver a trustworthy number."""


class InvalidInput(BurgersError, ValueError):
    """Arguments violate an operation's preconditions."""


class InvalidGrid(InvalidInput):
    pass


class InvalidOrder(InvalidInput):
    pass


class DomainError(InvalidInput):
    """Argument sits on a pole of the function being evaluated."""


class BranchCutError(InvalidInput):
    pass


class MultivaluedRegion(InvalidInput):
    pass


class ValidityRange(InvalidInput):
    pass


class SectorBoundary(InvalidInput):
    pass


class TooCloseToSingularity(InvalidInput):
    pass


class ConfigError(InvalidInput):
    """Bad run configuration (unknown keys, missing values)."""


class IntegrandBlowup(NumericalFailure):
    def __init__(self, message, node=None):
        super().__init__(message)
        self.node = node


class RangeError(NumericalFailure):
    pass


class ConvergenceError(NumericalFailure):
    pass


class NearPole(NumericalFailure):
    pass


class DenominatorZero(NumericalFailure):
    pass


class NotAPole(NumericalFailure):
    pass


class DegenerateSaddle(NumericalFailure):
    pass


class SeedRejected(NumericalFailure):
    pass


class StepFailure(NumericalFailure):
    pass


class NoInteriorMax(NumericalFailure):
    pass


class DegenerateData(InvalidInput):
    pass


class RankDeficiency(NumericalFailure):
    pass


class EigensolveFailure(NumericalFailure):
    pass


class EmptyPoleSet(NumericalFailure):
    pass


class BranchAmbiguity(NumericalFailure):
    pass
