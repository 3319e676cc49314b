"""Exception hierarchy. CLI error objects use the class name as ``error``."""


class HadamardError(Exception):
    """Base class for domain errors raised by this package."""


class InvalidPolynomial(HadamardError, ValueError):
    """Coefficients are missing, non-positive, or inconsistent with the degree."""


class DegreeMismatch(HadamardError, ValueError):
    pass


class DegreeTooSmall(HadamardError, ValueError):
    pass


class BadIndex(HadamardError, IndexError):
    """Row/column selection out of range, empty, unequal, or not strictly increasing."""


class NotStable(HadamardError, ValueError):
    pass


class QuotientNotStable(HadamardError, ValueError):
    pass


class ConvergenceFailure(HadamardError, RuntimeError):
    pass


class InvariantViolation(HadamardError, AssertionError):
    """An exactly checked mathematical invariant failed; indicates a bug."""
