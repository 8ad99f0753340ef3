"""Exception types shared across the package."""


class PptSphereError(Exception):
    """Base class for all package errors."""


class InvalidSegment(PptSphereError):
    """Segment data inconsistent with the configuration it claims to live on."""


class InternalInvariantViolation(PptSphereError):
    """A theorem-backed invariant failed; indicates a bug or bad input."""


class NotPointed(PptSphereError):
    pass


class NotNonCrossing(PptSphereError):
    pass


class MalformedArc(PptSphereError):
    pass


class IndexOutOfRange(PptSphereError):
    pass


class UnsupportedVector(PptSphereError):
    """Support vector whose set-support is not contained in any ppt."""


class SplitFailure(PptSphereError):
    """A leaf of the resolution tree failed to be a ppt."""


class PathThroughPoint(PptSphereError):
    """A point move collides with another marked point; reroute via a waypoint."""


class NotInFundamentalDomain(PptSphereError):
    pass


class NotACocycle(PptSphereError):
    """Assembled differential does not square to zero."""


class NotAnArcObject(PptSphereError):
    """Complex whose differential graph is not a path."""


class GenericityViolation(PptSphereError):
    pass


class NotSeparated(PptSphereError):
    pass


class TooLargeToRender(PptSphereError):
    pass


class SchemaError(PptSphereError):
    """Malformed JSON input."""
