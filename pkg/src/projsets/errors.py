"""Exception hierarchy shared by all modules."""


class ProjsetsError(Exception):
    """Base class for every error raised by projsets."""


class ValidationError(ProjsetsError, ValueError):
    """Input violates a precondition (wrong shape, non-prime dimension, ...)."""


class NumericalError(ProjsetsError, ArithmeticError):
    """A numerical routine failed to meet its tolerance or found an inconsistency."""
