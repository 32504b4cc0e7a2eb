"""Exception hierarchy.

``ValidationError`` covers violated preconditions (bad discriminant, a form
outside the level, incompatible congruences, ...).  ``InternalError`` is
raised when an internal consistency check fails; it always indicates a bug.
"""


class ValidationError(ValueError):
    pass


class InternalError(RuntimeError):
    pass


class IncompatibleCongruences(ValidationError):
    pass


class NotPrime(ValidationError):
    pass


class NotCoprime(ValidationError):
    pass


class RankDeficient(ValidationError):
    pass


class NotFundamental(ValidationError):
    pass


class NotNegative(ValidationError):
    pass


class ExcludedField(ValidationError):
    pass


class FieldMismatch(ValidationError):
    pass


class DependentGenerators(ValidationError):
    pass


class NotAnIdeal(ValidationError):
    pass


class WrongDiscriminant(ValidationError):
    pass


class Imprimitive(ValidationError):
    pass


class NotPositiveDefinite(ValidationError):
    pass


class NotUnimodular(ValidationError):
    pass


class LevelViolation(ValidationError):
    """A form's leading coefficient shares a factor with the level."""


class RootNotOfMaximalOrder(ValidationError):
    pass


class NotIntegral(ValidationError):
    pass


class NotPrimeToLevel(ValidationError):
    pass


class NotADivisor(ValidationError):
    pass
