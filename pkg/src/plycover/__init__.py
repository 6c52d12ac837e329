"""Low-ply covers of points by axis-parallel unit squares."""

from .errors import (
    DegenerateSquare,
    GeneralPositionViolation,
    InstanceParseError,
    MalformedRegion,
    PlyCoverError,
    UncoveredPoint,
    UniverseTooLarge,
)
from .geom import Cover, Point, Rect, UnitSquare, ply_of

__version__ = "0.1.0"

__all__ = [
    "Cover",
    "DegenerateSquare",
    "GeneralPositionViolation",
    "InstanceParseError",
    "MalformedRegion",
    "PlyCoverError",
    "Point",
    "Rect",
    "UncoveredPoint",
    "UniverseTooLarge",
    "UnitSquare",
    "ply_of",
]
