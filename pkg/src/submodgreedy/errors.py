"""Exception types shared across the package."""


class SubmodError(Exception):
    """Base class for all errors raised by this package."""


class InvalidArgument(SubmodError, ValueError):
    pass


class InvalidMask(InvalidArgument):
    pass


class ElementPresent(InvalidArgument):
    pass


class ModeMismatch(InvalidArgument):
    """Exact and floating values mixed within one instance."""


class DegenerateInstance(SubmodError):
    pass


class ResourceLimit(SubmodError):
    """Requested exhaustive computation exceeds the configured size limit."""


class MonotonicityViolation(SubmodError):
    pass


class SubmodularityViolation(SubmodError):
    pass


class UnsupportedCase(SubmodError):
    pass


class LPInfeasible(SubmodError):
    pass


class LPUnbounded(SubmodError):
    pass
