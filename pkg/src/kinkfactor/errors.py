"""Exception hierarchy.

Domain errors derive from ``ValueError`` so callers that only care about bad
input can catch that; :class:`InstabilityError` is an ``ArithmeticError``.
"""


class KinkError(Exception):
    """Base class for every error raised by this package."""


class DomainError(KinkError, ValueError):
    """Input outside the domain of an operation."""


class DegenerateInputError(DomainError):
    pass


class UnsupportedNonlinearityError(DomainError):
    pass


class NoRealSplitError(DomainError):
    pass


class DegenerateNonlinearityError(DomainError):
    pass


class TrivialKinkError(DomainError):
    pass


class SingularFrameError(DomainError):
    pass


class NotAdmissibleError(DomainError):
    pass


class RangeError(DomainError):
    pass


class NoFrontError(DomainError):
    pass


class PlacementError(DomainError):
    pass


class InstabilityError(KinkError, ArithmeticError):
    """A non-finite value appeared during time stepping."""

    def __init__(self, t, message=None):
        self.t = float(t)
        super().__init__(message or f"non-finite field value at t = {self.t:.6g}")
