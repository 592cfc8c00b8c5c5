"""Exception hierarchy shared by all modules."""


class ManyPointsError(Exception):
    """Base class for every error raised by this package."""


# field construction
class NonPrime(ManyPointsError, ValueError):
    pass


class ReducibleModulus(ManyPointsError, ValueError):
    pass


class SizeLimitExceeded(ManyPointsError, ValueError):
    pass


# curves
class NotReduced(ManyPointsError, ValueError):
    pass


class DependentBasis(ManyPointsError, ValueError):
    """Some nonzero F_p-combination of a basis is Artin-Schreier trivial."""


class NonIntegralResult(ManyPointsError, ArithmeticError):
    """A quotient that must be exact was not; always an implementation bug."""


class ArityMismatch(ManyPointsError, ValueError):
    pass


class ParseError(ManyPointsError, ValueError):
    pass


# codes
class BudgetExceeded(ManyPointsError, RuntimeError):
    pass


class DefinitionMismatch(ManyPointsError, AssertionError):
    pass


class RelationViolated(ManyPointsError, AssertionError):
    pass


# constructions
class RankOutOfRange(ManyPointsError, ValueError):
    pass


class NoSolution(ManyPointsError, RuntimeError):
    pass


class SearchExhausted(ManyPointsError, RuntimeError):
    def __init__(self, msg, best=None):
        super().__init__(msg)
        self.best = best


# bounds
class NotPrimePower(ManyPointsError, ValueError):
    pass


class NotSquare(ManyPointsError, ValueError):
    pass


class InvalidTestFunction(ManyPointsError, ValueError):
    pass


# tables
class UnknownFormat(ManyPointsError, ValueError):
    pass
