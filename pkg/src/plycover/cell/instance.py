"""One grid cell's sub-instance: its points and the squares reaching it, split by corner."""

from __future__ import annotations

from dataclasses import dataclass, replace
from typing import Iterable, Sequence

from ..errors import DegenerateSquare, UncoveredPoint
from ..geom import Point, Rect, UnitSquare, sq_contains, sq_intersect

# corner classes: c1 top-left, c2 top-right, c3 bottom-right, c4 bottom-left
CORNERS = (1, 2, 3, 4)
ADJACENT = ((1, 2), (2, 3), (4, 3), (1, 4))

DUMMY_TOP = -1
DUMMY_RIGHT = -2
DUMMY_BOTTOM = -3
DUMMY_LEFT = -4


@dataclass(frozen=True)
class CellInstance:
    cell: Rect
    Q: tuple[Point, ...]
    W1: tuple[UnitSquare, ...]
    W2: tuple[UnitSquare, ...]
    W3: tuple[UnitSquare, ...]
    W4: tuple[UnitSquare, ...]
    dummies: tuple[UnitSquare, ...] = ()

    def corner_class(self, c: int) -> tuple[UnitSquare, ...]:
        return (self.W1, self.W2, self.W3, self.W4)[c - 1]

    @property
    def squares(self) -> list[UnitSquare]:
        return sorted(self.W1 + self.W2 + self.W3 + self.W4, key=lambda s: s.id)

    def class_of(self) -> dict[int, int]:
        out = {}
        for c in CORNERS:
            for s in self.corner_class(c):
                out[s.id] = c
        return out

    def nonempty_classes(self) -> tuple[int, ...]:
        return tuple(c for c in CORNERS if self.corner_class(c))

    def with_points(self, Q: Iterable[Point]) -> "CellInstance":
        return replace(self, Q=tuple(sorted(Q, key=lambda p: p.id)))

    def only_squares(self, keep_ids) -> "CellInstance":
        keep_ids = set(keep_ids)
        parts = [tuple(s for s in self.corner_class(c) if s.id in keep_ids) for c in CORNERS]
        return replace(self, W1=parts[0], W2=parts[1], W3=parts[2], W4=parts[3])

    def require_covered(self) -> None:
        squares = self.squares
        for p in self.Q:
            if not any(sq_contains(s, p) for s in squares):
                raise UncoveredPoint(p.id)


def dummy_squares(cell: Rect) -> tuple[UnitSquare, ...]:
    """Four squares flush with the cell's sides, outside it (top, right, bottom, left)."""
    return (
        UnitSquare(DUMMY_TOP, cell.x_lo, cell.y_hi, dummy=True),
        UnitSquare(DUMMY_RIGHT, cell.x_hi, cell.y_lo, dummy=True),
        UnitSquare(DUMMY_BOTTOM, cell.x_lo, cell.y_lo - 1, dummy=True),
        UnitSquare(DUMMY_LEFT, cell.x_lo - 1, cell.y_lo, dummy=True),
    )


def classify_by_corner(cell: Rect, W: Iterable[UnitSquare], Q: Iterable[Point] = ()) -> CellInstance:
    """Split the squares meeting ``cell`` by the single cell corner each contains.

    Raises DegenerateSquare when a square holds zero or several corners, which
    only happens if general position failed upstream.
    """
    corners = cell.corners()
    parts: list[list[UnitSquare]] = [[], [], [], []]
    for s in sorted(W, key=lambda s: s.id):
        if s.dummy:
            continue
        inside = [i for i, c in enumerate(corners) if sq_contains(s, c)]
        if len(inside) != 1:
            raise DegenerateSquare(s.id, len(inside))
        parts[inside[0]].append(s)
    return CellInstance(
        cell,
        tuple(sorted(Q, key=lambda p: p.id)),
        tuple(parts[0]),
        tuple(parts[1]),
        tuple(parts[2]),
        tuple(parts[3]),
        dummy_squares(cell),
    )


def squares_meeting(cell: Rect, U: Iterable[UnitSquare]) -> list[UnitSquare]:
    """Squares whose interior overlaps the cell's interior."""
    return [
        s
        for s in U
        if not s.dummy
        and s.ax < cell.x_hi
        and s.ax + 1 > cell.x_lo
        and s.ay < cell.y_hi
        and s.ay + 1 > cell.y_lo
    ]


def mirror_x(inst: CellInstance) -> CellInstance:
    """Reflect across the cell's vertical mid-line; ids are kept, classes 1<->2 and 3<->4 swap."""
    c = inst.cell
    total = c.x_lo + c.x_hi

    def sq(s: UnitSquare) -> UnitSquare:
        return UnitSquare(s.id, total - s.ax - 1, s.ay, s.dummy)

    Q = tuple(Point(total - p.x, p.y, p.id) for p in inst.Q)
    return CellInstance(
        c,
        Q,
        tuple(sq(s) for s in inst.W2),
        tuple(sq(s) for s in inst.W1),
        tuple(sq(s) for s in inst.W4),
        tuple(sq(s) for s in inst.W3),
        dummy_squares(c),
    )


def is_adjacent(a: int, b: int) -> bool:
    return a != b and (a - b) % 2 == 1


def scenario_of(squares: Sequence[UnitSquare], classes: dict[int, int]) -> dict[str, bool]:
    """Which cross-class intersection patterns a square set exhibits.

    Keys: ``adjacent`` (some adjacent-corner pair intersects), ``diag13``,
    ``diag24``.
    """
    flags = {"adjacent": False, "diag13": False, "diag24": False}
    for i, a in enumerate(squares):
        for b in squares[i + 1 :]:
            ca, cb = classes[a.id], classes[b.id]
            if ca == cb or sq_intersect(a, b) is None:
                continue
            if is_adjacent(ca, cb):
                flags["adjacent"] = True
            elif {ca, cb} == {1, 3}:
                flags["diag13"] = True
            else:
                flags["diag24"] = True
    return flags


def is_disjoint_scenario(squares, classes) -> bool:
    f = scenario_of(squares, classes)
    return not (f["adjacent"] or f["diag13"] or f["diag24"])


def is_diagonal_scenario(squares, classes, orientation: str = "24") -> bool:
    """Adjacent classes never meet; only the named diagonal pair may."""
    f = scenario_of(squares, classes)
    other = "diag13" if orientation == "24" else "diag24"
    return not (f["adjacent"] or f[other])
