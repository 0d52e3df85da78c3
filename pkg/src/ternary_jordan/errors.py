"""Exception hierarchy shared by every module."""


class TernaryJordanError(Exception):
    """Base class for all errors raised by this package."""


class BadField(TernaryJordanError, ValueError):
    pass


class AmbientMismatch(TernaryJordanError, ValueError):
    pass


class DimensionMismatch(TernaryJordanError, ValueError):
    pass


class NotSquare(TernaryJordanError, ValueError):
    pass


class CharacteristicNotSupported(TernaryJordanError):
    pass


class InvalidAlgebra(TernaryJordanError):
    pass


class SymmetryConflict(TernaryJordanError, ValueError):
    pass


class IndexOutOfRange(TernaryJordanError, ValueError):
    pass


class ParseError(TernaryJordanError, ValueError):
    def __init__(self, message, position=None):
        super().__init__(message if position is None else f"{message} (at {position})")
        self.position = position


class WitnessError(TernaryJordanError):
    """An identity failed; ``witness`` names the basis indices where it did."""

    def __init__(self, message, witness=None):
        super().__init__(message if witness is None else f"{message}; witness {witness}")
        self.witness = witness


class NotAnIdeal(WitnessError):
    pass


class NotInDelta(WitnessError):
    pass


class NotAQuasiderivation(WitnessError):
    pass


class NotInQuasicentroid(WitnessError):
    pass


class AlphaNotVanishing(WitnessError):
    pass


class NotJordan(WitnessError):
    pass


class SliceConditionFails(WitnessError):
    pass


class NotCommutativeAssociative(WitnessError):
    pass


class NotADerivation(WitnessError):
    pass


class ConditionCheckInfeasible(TernaryJordanError):
    pass


class NotEpimorphism(TernaryJordanError):
    pass


class KernelNotInvariant(WitnessError):
    pass


class NotIdeals(WitnessError):
    pass


class NotIdempotentInCentroid(WitnessError):
    pass


class MissingExtras(TernaryJordanError, KeyError):
    pass


class IdentityViolated(WitnessError, AssertionError):
    """A result the theory guarantees did not hold; always a bug or a bad input."""
