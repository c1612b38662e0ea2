"""Exception types shared across the package."""


class DecompositionError(Exception):
    """Base class for all errors raised by projdecomp."""


class ValidationError(DecompositionError, ValueError):
    """Input fails a type invariant (shape, Hermiticity, finiteness)."""


class SingularityError(DecompositionError):
    """A matrix required to be invertible is numerically singular."""


class InfeasibleError(DecompositionError):
    """A requested two-projection block does not exist.

    ``bound`` names the violated constraint, ``value`` is the offending number.
    """

    def __init__(self, message, bound=None, value=None):
        super().__init__(message)
        self.bound = bound
        self.value = value


class PreconditionError(DecompositionError, ValueError):
    """Input is well formed but outside an operation's domain."""


class UnsupportedInputError(DecompositionError):
    """Input is valid but the requested variant does not cover it."""
