"""Axis-aligned rectangle primitives and the edge cost function.

Rectangles are stored as a center plus half extents. All predicates treat
rectangles as open regions: two rectangles that share only a boundary do
not overlap.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

# Relative slack added to the touching parameter so that a pair moved to
# "touching" stays non-overlapping after downstream rounding. Well below
# every documented tolerance (1e-9).
SEPARATION_SLACK = 1e-12


class CoincidentCentersError(ValueError):
    """Raised when an operation needs a direction between two identical centers."""


@dataclass(frozen=True, slots=True)
class Point:
    x: float
    y: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.x) and math.isfinite(self.y)):
            raise ValueError(f"point coordinates must be finite, got ({self.x}, {self.y})")


@dataclass(frozen=True, slots=True)
class Rect:
    center: Point
    half_width: float   # > 0
    half_height: float  # > 0

    def __post_init__(self) -> None:
        if not (math.isfinite(self.half_width) and self.half_width > 0.0):
            raise ValueError(f"half_width must be finite and > 0, got {self.half_width}")
        if not (math.isfinite(self.half_height) and self.half_height > 0.0):
            raise ValueError(f"half_height must be finite and > 0, got {self.half_height}")

    @property
    def min_x(self) -> float:
        return self.center.x - self.half_width

    @property
    def max_x(self) -> float:
        return self.center.x + self.half_width

    @property
    def min_y(self) -> float:
        return self.center.y - self.half_height

    @property
    def max_y(self) -> float:
        return self.center.y + self.half_height


def overlaps(a: Rect, b: Rect, eps: float = 0.0) -> bool:
    """True iff the open interiors of a and b overlap by more than eps per axis.

    Touching rectangles (shared boundary) do not overlap. A positive eps
    ignores overlaps of depth at most eps, which lets callers treat nearly
    separated pairs as resolved.
    """
    if eps < 0.0:
        raise ValueError(f"eps must be >= 0, got {eps}")
    return (
        abs(a.center.x - b.center.x) < a.half_width + b.half_width - eps
        and abs(a.center.y - b.center.y) < a.half_height + b.half_height - eps
    )


def rect_distance(a: Rect, b: Rect) -> float:
    """Shortest distance between the two rectangles, 0 if they touch or overlap."""
    gap_x = abs(a.center.x - b.center.x) - (a.half_width + b.half_width)
    gap_y = abs(a.center.y - b.center.y) - (a.half_height + b.half_height)
    return math.hypot(max(gap_x, 0.0), max(gap_y, 0.0))


def touching_parameter(a: Rect, b: Rect) -> float:
    """Scale factor t > 1 moving b's center along the center ray until it touches a.

    For an overlapping pair, b placed at a.center + t * (b.center - a.center)
    touches a: the tighter axis hits its combined half extent exactly. The
    result carries a tiny relative slack (SEPARATION_SLACK) so the moved pair
    is never reported as overlapping again due to rounding.
    """
    dx = abs(a.center.x - b.center.x)
    dy = abs(a.center.y - b.center.y)
    if dx == 0.0 and dy == 0.0:
        raise CoincidentCentersError(
            "rectangle centers coincide; jitter the layout before costing"
        )
    if not overlaps(a, b):
        raise ValueError("touching_parameter requires an overlapping pair")
    ratio_x = (a.half_width + b.half_width) / dx if dx > 0.0 else math.inf
    ratio_y = (a.half_height + b.half_height) / dy if dy > 0.0 else math.inf
    return min(ratio_x, ratio_y) * (1.0 + SEPARATION_SLACK)


def edge_cost(a: Rect, b: Rect) -> tuple[float, float]:
    """Cost of the edge between a and b, returned as (cost, t).

    Disjoint or touching pairs cost their separation distance with t = 1.
    Overlapping pairs cost -(t - 1) * s where s is the center distance and
    t the touching parameter, so deeper overlaps are more negative.
    """
    if overlaps(a, b):
        t = touching_parameter(a, b)
        s = math.hypot(b.center.x - a.center.x, b.center.y - a.center.y)
        return -(t - 1.0) * s, t
    return rect_distance(a, b), 1.0
