"""Exception hierarchy shared by all amono modules."""


class AmonoError(Exception):
    """Base class for every error raised by this package."""


class RankDeficient(AmonoError):
    pass


class Singular(AmonoError):
    pass


class DivisionByZero(AmonoError, ZeroDivisionError):
    pass


class NotSaturated(AmonoError):
    pass


class NoHomogeneityForm(AmonoError):
    pass


class ResonantParameter(AmonoError):
    pass


class InconsistentChambers(AmonoError):
    pass


class DegenerateDirection(AmonoError):
    pass


class NoMBBasis(AmonoError):
    pass


class NoUnimodularIndexSet(AmonoError):
    pass


class SingularTransition(AmonoError):
    pass


class NoInvariantForm(AmonoError):
    pass


class NonUniqueForm(AmonoError):
    def __init__(self, message, dimension):
        super().__init__(message)
        self.dimension = dimension


class DegenerateForm(AmonoError):
    pass


class ParseError(AmonoError):
    pass


class ValidationError(AmonoError):
    pass


class UnknownExample(AmonoError, KeyError):
    def __str__(self):
        return str(self.args[0]) if self.args else "unknown example"
