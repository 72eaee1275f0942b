"""Exception hierarchy shared by every module."""


class FusionError(Exception):
    """Base class for all errors raised by this package."""


class StructuralError(FusionError, ValueError):
    """Malformed input: wrong shapes, indices out of range, non-group tables."""


class PreconditionError(FusionError, ValueError):
    """An operation was called outside of its stated hypotheses."""


class ConfigurationError(FusionError, ValueError):
    """Search bounds or guards that cannot support the requested computation."""


class ComputationError(FusionError, ArithmeticError):
    """A numerical routine failed to reach its certified accuracy."""


class PrecisionError(ComputationError):
    """Two quantities are too close to decide reliably at the current radii."""


class TheoryViolation(FusionError):
    """A result that would contradict a proven statement for this input."""
