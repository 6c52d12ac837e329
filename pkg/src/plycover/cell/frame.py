"""Bit-level view of a cell instance shared by the dynamic programs.

Squares are indexed by ascending id and points by ascending id, so masks from
a frame and from its mirror image are interchangeable.  Coordinates are
replaced by integer ranks; only their order matters to the programs.
"""

from __future__ import annotations

from dataclasses import dataclass

from .. import _kernels
from ..bitsets import witness_caps
from ..errors import MalformedRegion
from ..geom import UnitSquare, make_cover, sq_contains, sq_intersect
from .instance import (
    DUMMY_BOTTOM,
    DUMMY_LEFT,
    DUMMY_RIGHT,
    DUMMY_TOP,
    CellInstance,
)


@dataclass(frozen=True)
class BudgetVector:
    k1: int
    k2: int
    k3: int
    k4: int

    @classmethod
    def of(cls, b) -> "BudgetVector":
        if isinstance(b, BudgetVector):
            return b
        if isinstance(b, int):
            return cls(b, b, b, b)
        return cls(*b)

    def as_tuple(self) -> tuple[int, int, int, int]:
        return (self.k1, self.k2, self.k3, self.k4)

    @property
    def k(self) -> int:
        return max(self.as_tuple())


@dataclass(frozen=True)
class Region:
    """Rectangle bounded by four squares, given by id (dummy ids for cell sides).

    The open rectangle spans from the right side of ``left`` to the left side
    of ``right`` and from the top side of ``bottom`` to the bottom side of
    ``top``.  For the diagonal program ``left``/``bottom`` are bottom-left
    corner squares and ``right``/``top`` are top-right corner squares.
    """

    left: int = DUMMY_LEFT
    bottom: int = DUMMY_BOTTOM
    right: int = DUMMY_RIGHT
    top: int = DUMMY_TOP

    def key(self) -> tuple[int, int, int, int]:
        return (self.left, self.bottom, self.right, self.top)


FULL_REGION = Region()


def bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


class CellFrame:
    def __init__(self, inst: CellInstance):
        self.inst = inst
        self.squares: list[UnitSquare] = inst.squares
        self.points = sorted(inst.Q, key=lambda p: p.id)
        n = len(self.squares)
        self.n = n
        self.index = {s.id: i for i, s in enumerate(self.squares)}
        classes = inst.class_of()
        self.cls = [classes[s.id] for s in self.squares]
        self.clsmask = {c: 0 for c in (1, 2, 3, 4)}
        for i, c in enumerate(self.cls):
            self.clsmask[c] |= 1 << i

        cell = inst.cell
        xs = {cell.x_lo, cell.x_hi}
        ys = {cell.y_lo, cell.y_hi}
        for s in self.squares:
            xs.update((s.ax, s.ax + 1))
            ys.update((s.ay, s.ay + 1))
        for p in self.points:
            xs.add(p.x)
            ys.add(p.y)
        xr = {v: i for i, v in enumerate(sorted(xs))}
        yr = {v: i for i, v in enumerate(sorted(ys))}
        self.xrank, self.yrank = xr, yr
        self.x_lo, self.x_hi = xr[cell.x_lo], xr[cell.x_hi]
        self.y_lo, self.y_hi = yr[cell.y_lo], yr[cell.y_hi]

        # inner corner: the corner of the square's in-cell part facing the cell centre
        self.ix = []
        self.iy = []
        for s, c in zip(self.squares, self.cls):
            x = s.ax + 1 if c in (1, 4) else s.ax
            y = s.ay if c in (1, 2) else s.ay + 1
            self.ix.append(xr[x])
            self.iy.append(yr[y])
        self.px = [xr[p.x] for p in self.points]
        self.py = [yr[p.y] for p in self.points]
        self.full_points = (1 << len(self.points)) - 1

        self.cover = [0] * n
        for i, s in enumerate(self.squares):
            m = 0
            for j, p in enumerate(self.points):
                if sq_contains(s, p):
                    m |= 1 << j
            self.cover[i] = m
        self.inter = [0] * n
        for i in range(n):
            for j in range(n):
                if i != j and sq_intersect(self.squares[i], self.squares[j]) is not None:
                    self.inter[i] |= 1 << j
        self.caps = witness_caps(self.squares)
        self.front_cache: dict = {}

    # masks
    def covered_by(self, mask: int) -> int:
        c = 0
        for i in bits(mask):
            c |= self.cover[i]
        return c

    def ply(self, mask: int) -> int:
        return _kernels.max_depth(mask, self.caps) if mask else 0

    def counts(self, mask: int) -> tuple[int, int, int, int]:
        return tuple((mask & self.clsmask[c]).bit_count() for c in (1, 2, 3, 4))

    def ids(self, mask: int) -> tuple[int, ...]:
        return tuple(self.squares[i].id for i in bits(mask))

    def to_cover(self, mask: int):
        return make_cover([self.squares[i] for i in bits(mask)])

    def mask_of_ids(self, ids) -> int:
        m = 0
        for i in ids:
            m |= 1 << self.index[i]
        return m

    # regions
    def region_rect(self, region: Region, diagonal: bool = False) -> tuple[int, int, int, int]:
        def side(sid, dummy, kind, cls_ok):
            if sid == dummy:
                return {"l": self.x_lo, "r": self.x_hi, "b": self.y_lo, "t": self.y_hi}[kind]
            if sid < 0 or sid not in self.index:
                raise MalformedRegion(f"unknown boundary square {sid}")
            i = self.index[sid]
            if diagonal and self.cls[i] not in cls_ok:
                raise MalformedRegion(f"boundary square {sid} has corner class {self.cls[i]}")
            s = self.squares[i]
            return {
                "l": self.xrank[s.ax + 1],
                "r": self.xrank[s.ax],
                "b": self.yrank[s.ay + 1],
                "t": self.yrank[s.ay],
            }[kind]

        xl = side(region.left, DUMMY_LEFT, "l", (4,))
        yl = side(region.bottom, DUMMY_BOTTOM, "b", (4,))
        xr = side(region.right, DUMMY_RIGHT, "r", (2,))
        yh = side(region.top, DUMMY_TOP, "t", (2,))
        if not (xl < xr and yl < yh):
            raise MalformedRegion(f"empty region {region.key()}")
        return (xl, xr, yl, yh)

    def points_in(self, rect: tuple[int, int, int, int], pts: int) -> int:
        xl, xr, yl, yh = rect
        m = 0
        for j in bits(pts):
            if xl < self.px[j] < xr and yl < self.py[j] < yh:
                m |= 1 << j
        return m

    def irredundant(self, mask: int, pts: int) -> int:
        """Drop squares whose points stay covered, largest id first."""
        for i in sorted(bits(mask), reverse=True):
            rest = mask & ~(1 << i)
            if self.covered_by(rest) & pts == pts:
                mask = rest
        return mask


def mask_key(mask: int) -> tuple[int, tuple[int, ...]]:
    return (mask.bit_count(), tuple(bits(mask)))
