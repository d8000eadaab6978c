"""Exception hierarchy. The CLI maps each family to an exit code."""


class MomentAngleError(Exception):
    """Base class for all errors raised by this package."""


class ValidationError(MomentAngleError, ValueError):
    """Malformed input: bad labels, broken polytope combinatorics, parse errors."""


class MalformedPolytopeError(ValidationError):
    pass


class PreconditionError(MomentAngleError):
    """Input is well formed but outside the domain of the requested operation."""


class NotFlagError(PreconditionError):
    pass


class NotPogorelovError(PreconditionError):
    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class NotDefinedError(PreconditionError):
    """A Massey product was requested for classes whose pairwise products do not vanish."""


class InternalConsistencyError(MomentAngleError, AssertionError):
    """A mathematical invariant failed. This indicates a bug, not bad input."""
