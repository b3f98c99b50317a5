"""Exception hierarchy.

Two families matter to callers: :class:`ValidationError` for inputs that do
not describe a valid cookie-cutter system (CLI exit code 3) and
:class:`ComputationError` for numerical routines that fail on valid input
(CLI exit code 4).
"""


class LyapspecError(Exception):
    """Base class for all package errors."""


class ValidationError(LyapspecError, ValueError):
    pass


class InvalidInterval(ValidationError):
    pass


class OverlappingIntervals(ValidationError):
    pass


class NotExpanding(ValidationError):
    pass


class NonMonotone(ValidationError):
    pass


class TooFewBranches(ValidationError):
    pass


class BackendMismatch(ValidationError):
    pass


class ComputationError(LyapspecError):
    pass


class OutsideDomain(ComputationError, ValueError):
    pass


class BadWeights(ComputationError, ValueError):
    pass


class NotAffine(ComputationError):
    pass


class PowerIterationDiverged(ComputationError):
    pass


class NonFiniteValue(ComputationError):
    pass


class MaxIterationsExceeded(ComputationError):
    pass


class NoRootBracket(ComputationError):
    pass


class AlphaOutOfRange(ComputationError):
    pass


class DegeneratePressure(ComputationError):
    pass
