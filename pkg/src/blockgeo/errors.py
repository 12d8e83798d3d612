"""Exception types shared across the package."""


class BlockgeoError(Exception):
    """Base class for all package errors."""


class InputError(BlockgeoError, ValueError):
    """A caller-supplied value is outside its documented domain."""


class DegenerateSegmentError(InputError):
    """Segment construction was asked to join a point to itself."""


class InvalidSigmaError(BlockgeoError):
    """A sigma profile violates the corridor constraints.

    Carries the first offending parameter value in ``t`` when known.
    """

    def __init__(self, message: str, t: float | None = None):
        super().__init__(message)
        self.t = t


class ConstructionError(BlockgeoError):
    """An interior blend could not be made valid after shrinking.

    ``suggestion`` holds a human-readable hint (usually: shrink the germ
    intervals or the wiggle amplitude further).
    """

    def __init__(self, message: str, suggestion: str = ""):
        super().__init__(message)
        self.suggestion = suggestion


class ExistenceUnknownError(BlockgeoError):
    """A closed-form angle was requested for a sigma without the needed
    declared derivative; only the numeric engine can answer."""
