"""Exact planar primitives for unit squares and point sets.

Every coordinate is a :class:`fractions.Fraction`; no predicate in this module
uses floating point.  Squares are closed, so touching boundaries intersect.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional, Sequence

import networkx as nx

Coord = Fraction

ONE = Fraction(1)


def as_coord(value) -> Fraction:
    """Convert an int, Fraction or numeric string ("3", "0.35", "7/20")."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise TypeError("booleans are not coordinates")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot use {type(value).__name__} as an exact coordinate")


def coord_str(value: Fraction) -> str:
    """Canonical string form used in every serialized file."""
    return str(value)


@dataclass(frozen=True, order=True)
class Point:
    x: Fraction
    y: Fraction
    id: int = -1

    def __post_init__(self):
        object.__setattr__(self, "x", as_coord(self.x))
        object.__setattr__(self, "y", as_coord(self.y))


@dataclass(frozen=True)
class Rect:
    x_lo: Fraction
    x_hi: Fraction
    y_lo: Fraction
    y_hi: Fraction

    def __post_init__(self):
        for name in ("x_lo", "x_hi", "y_lo", "y_hi"):
            object.__setattr__(self, name, as_coord(getattr(self, name)))
        if self.x_lo > self.x_hi or self.y_lo > self.y_hi:
            raise ValueError(f"inverted rectangle {self}")

    def contains(self, p: Point) -> bool:
        return self.x_lo <= p.x <= self.x_hi and self.y_lo <= p.y <= self.y_hi

    def contains_open(self, p: Point) -> bool:
        return self.x_lo < p.x < self.x_hi and self.y_lo < p.y < self.y_hi

    def corners(self) -> tuple[Point, Point, Point, Point]:
        """Top-left, top-right, bottom-right, bottom-left."""
        return (
            Point(self.x_lo, self.y_hi),
            Point(self.x_hi, self.y_hi),
            Point(self.x_hi, self.y_lo),
            Point(self.x_lo, self.y_lo),
        )


@dataclass(frozen=True)
class UnitSquare:
    """Closed square ``[ax, ax+1] x [ay, ay+1]``."""

    id: int
    ax: Fraction
    ay: Fraction
    dummy: bool = False

    def __post_init__(self):
        object.__setattr__(self, "ax", as_coord(self.ax))
        object.__setattr__(self, "ay", as_coord(self.ay))

    @property
    def x_lo(self) -> Fraction:
        return self.ax

    @property
    def x_hi(self) -> Fraction:
        return self.ax + 1

    @property
    def y_lo(self) -> Fraction:
        return self.ay

    @property
    def y_hi(self) -> Fraction:
        return self.ay + 1

    @property
    def rect(self) -> Rect:
        return Rect(self.ax, self.ax + 1, self.ay, self.ay + 1)


@dataclass(frozen=True)
class Cover:
    square_ids: tuple[int, ...]
    ply: int
    witness: Optional[Point] = None

    def __post_init__(self):
        object.__setattr__(self, "square_ids", tuple(sorted(set(self.square_ids))))

    def __len__(self):
        return len(self.square_ids)


def sq_contains(s: UnitSquare, p: Point) -> bool:
    return s.ax <= p.x <= s.ax + 1 and s.ay <= p.y <= s.ay + 1


def sq_intersect(a: UnitSquare, b: UnitSquare) -> Optional[Rect]:
    x_lo = max(a.ax, b.ax)
    x_hi = min(a.ax, b.ax) + 1
    y_lo = max(a.ay, b.ay)
    y_hi = min(a.ay, b.ay) + 1
    if x_lo > x_hi or y_lo > y_hi:
        return None
    return Rect(x_lo, x_hi, y_lo, y_hi)


def common_intersection(squares: Iterable[UnitSquare]) -> Optional[Rect]:
    squares = list(squares)
    if not squares:
        return None
    x_lo = max(s.ax for s in squares)
    x_hi = min(s.ax for s in squares) + 1
    y_lo = max(s.ay for s in squares)
    y_hi = min(s.ay for s in squares) + 1
    if x_lo > x_hi or y_lo > y_hi:
        return None
    return Rect(x_lo, x_hi, y_lo, y_hi)


def _max_stab(intervals: Sequence[tuple[Fraction, Fraction]]) -> tuple[int, Optional[Fraction]]:
    # closed intervals: a start at y is counted before an end at the same y
    events = []
    for lo, hi in intervals:
        events.append((lo, 0))
        events.append((hi, 1))
    events.sort()
    best, best_y, depth = 0, None, 0
    for y, kind in events:
        if kind == 0:
            depth += 1
            if depth > best:
                best, best_y = depth, y
        else:
            depth -= 1
    return best, best_y


def ply_of(squares: Iterable[UnitSquare]) -> tuple[int, Optional[Point]]:
    """Maximum depth of the arrangement and the lexicographically smallest deepest point.

    Sweeps the vertical edges left to right; at each left edge the active
    squares' y-intervals are stabbed.
    """
    squares = list(squares)
    if not squares:
        return 0, None
    events = []
    for idx, s in enumerate(squares):
        events.append((s.ax, 0, idx))
        events.append((s.ax + 1, 1, idx))
    events.sort()
    active: set[int] = set()
    best, witness = 0, None
    i = 0
    while i < len(events):
        x = events[i][0]
        j = i
        starts = False
        while j < len(events) and events[j][0] == x and events[j][1] == 0:
            active.add(events[j][2])
            starts = True
            j += 1
        if starts:
            depth, y = _max_stab([(squares[k].ay, squares[k].ay + 1) for k in active])
            if depth > best:
                best, witness = depth, Point(x, y)
        while j < len(events) and events[j][0] == x:
            active.discard(events[j][2])
            j += 1
        i = j
    return best, witness


def ply_via_cliques(squares: Iterable[UnitSquare]) -> int:
    """Maximum clique of the intersection graph (boxes have Helly number 2)."""
    squares = list(squares)
    if not squares:
        return 0
    g = nx.Graph()
    g.add_nodes_from(range(len(squares)))
    for i in range(len(squares)):
        for j in range(i + 1, len(squares)):
            if sq_intersect(squares[i], squares[j]) is not None:
                g.add_edge(i, j)
    return max(len(c) for c in nx.find_cliques(g))


def make_cover(squares: Iterable[UnitSquare]) -> Cover:
    squares = [s for s in squares if not s.dummy]
    k, witness = ply_of(squares)
    return Cover(tuple(s.id for s in squares), k, witness)


def uncovered_points(points: Iterable[Point], squares: Sequence[UnitSquare]) -> list[Point]:
    return [p for p in points if not any(sq_contains(s, p) for s in squares)]


def covers(squares: Sequence[UnitSquare], points: Iterable[Point]) -> bool:
    return not uncovered_points(points, squares)


@dataclass(frozen=True)
class Violation:
    kind: str  # "shared_line" or "point_on_line"
    axis: str  # "x" for vertical lines, "y" for horizontal
    value: Fraction
    square_ids: tuple[int, ...]
    point_ids: tuple[int, ...] = ()

    def __str__(self):
        line = f"{self.axis}={self.value}"
        if self.kind == "shared_line":
            return f"squares {list(self.square_ids)} share the line {line}"
        return f"points {list(self.point_ids)} lie on the edge line {line} of squares {list(self.square_ids)}"


@dataclass
class GeneralPositionReport:
    violations: list[Violation] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_general_position(U: Iterable[UnitSquare], P: Iterable[Point] = ()) -> GeneralPositionReport:
    """Report shared edge lines between squares and points lying on edge lines."""
    U = [s for s in U if not s.dummy]
    P = list(P)
    report = GeneralPositionReport()
    for axis in ("x", "y"):
        lines: dict[Fraction, list[int]] = defaultdict(list)
        for s in U:
            lo = s.ax if axis == "x" else s.ay
            lines[lo].append(s.id)
            lines[lo + 1].append(s.id)
        for value in sorted(lines):
            ids = lines[value]
            if len(ids) > 1:
                report.violations.append(Violation("shared_line", axis, value, tuple(ids)))
        on_line: dict[Fraction, list[int]] = defaultdict(list)
        for p in P:
            v = p.x if axis == "x" else p.y
            if v in lines:
                on_line[v].append(p.id)
        for value in sorted(on_line):
            report.violations.append(
                Violation("point_on_line", axis, value, tuple(lines[value]), tuple(on_line[value]))
            )
    return report


def require_general_position(U, P=()) -> None:
    from .errors import GeneralPositionViolation

    report = check_general_position(U, P)
    if not report.ok:
        raise GeneralPositionViolation(report.violations)


def containment_key(p: Point, U: Sequence[UnitSquare]) -> tuple[int, ...]:
    return tuple(sorted(s.id for s in U if sq_contains(s, p)))


def face_representatives(P: Iterable[Point], U: Iterable[UnitSquare]) -> list[Point]:
    """Keep the smallest-id point of each class of points lying in the same squares."""
    U = list(U)
    reps: dict[tuple[int, ...], Point] = {}
    for p in sorted(P, key=lambda q: q.id):
        reps.setdefault(containment_key(p, U), p)
    return sorted(reps.values(), key=lambda q: q.id)
