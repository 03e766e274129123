"""Exception hierarchy shared by every loewner_lab module."""


class LabError(Exception):
    """Base class for all errors raised by loewner_lab."""


class NonConvergence(LabError):
    pass


class DomainViolation(LabError, ValueError):
    pass


class NotPositiveDefinite(LabError, ValueError):
    pass


class DimensionMismatch(LabError, ValueError):
    pass


class NotUnitVector(LabError, ValueError):
    pass


class NonPositiveInput(LabError, ValueError):
    pass


class OutOfRange(LabError, ValueError):
    pass


class InvalidBounds(LabError, ValueError):
    pass


class InvalidRange(LabError, ValueError):
    pass


class InvalidExponent(LabError, ValueError):
    pass


class NotInvertible(LabError, ValueError):
    pass


class NotCommuting(LabError, ValueError):
    pass


class HypothesisUnsatisfied(LabError, ValueError):
    """The instance does not meet the hypotheses of the inequality under test."""


class ConfigError(LabError, ValueError):
    pass
