"""Exception hierarchy shared across the package."""


class LaserWallError(Exception):
    """Base class for all package errors."""


class GeometryError(LaserWallError):
    """A wall construction or transformation is geometrically invalid."""


class OutOfBounds(GeometryError):
    """A wall body cell would leave the plan rectangle."""


class DegenerateShape(GeometryError):
    """A segment rotation would fold one segment onto the other."""


class IllegalPlacement(LaserWallError):
    """A wall placement violates a hard constraint."""

    def __init__(self, message: str, pick_index: int | None = None):
        super().__init__(message)
        self.pick_index = pick_index


class InsufficientRegions(LaserWallError):
    """A finished layout has fewer regions than rooms."""


class RegionCountMismatch(LaserWallError):
    """Identity-less assignment requires exactly one region per room."""


class ConflictingAssignment(LaserWallError):
    """A wall has no unassigned adjacent region left to claim."""


class UnknownWall(LaserWallError):
    """A step referenced a wall id that does not exist."""


class EpisodeFinished(LaserWallError):
    """step() was called after the episode terminated or truncated."""


class ResetExhausted(LaserWallError):
    """No legal initial wall configuration was found within the attempt cap."""


class NoLegalAction(LaserWallError):
    """An agent was asked to act with an empty action mask."""


class DivergenceDetected(LaserWallError):
    """Training produced a non-finite loss; carries the partial report."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class ParseError(LaserWallError):
    """A scenario document could not be parsed."""


class ValidationError(LaserWallError):
    """A scenario document parsed but violates a field constraint."""
