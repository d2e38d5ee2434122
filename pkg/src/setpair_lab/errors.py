"""Exception hierarchy shared by every module."""


class SetpairError(Exception):
    """Base class for all library errors."""


class PreconditionError(SetpairError, ValueError):
    """An operation was called outside its documented domain."""


class InvalidComparisonError(PreconditionError):
    """Reverse colex comparison of sets with different cardinalities."""


class GradeError(PreconditionError):
    """A wedge product would land above the top exterior power."""


class SingularMatrixError(PreconditionError):
    """A basis matrix has zero determinant."""


class InfeasibleParameterError(PreconditionError):
    """Parameters make a hypothesis unsatisfiable (e.g. a_i < t + 1)."""


class HypothesisViolation(SetpairError):
    """An instance fails a hypothesis that a proof step depends on."""


class ResampleFailure(SetpairError):
    """A randomized general-position construction exhausted its attempt budget."""

    def __init__(self, message, obstacle=None, attempts=0):
        super().__init__(message)
        self.obstacle = obstacle
        self.attempts = attempts


class ReductionFailure(SetpairError):
    """A verified postcondition of the dimension reduction failed."""

    def __init__(self, message, bullet=None):
        super().__init__(message)
        self.bullet = bullet


class ChainInvariantError(SetpairError):
    """dim(Z_{i+1}) != dim(Y_i) + 1 in a chain replay."""


class StabilityFailure(SetpairError):
    """An extremal candidate did not produce a full 1-star initial hypergraph."""
