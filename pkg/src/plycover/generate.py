"""Deterministic instance generators that always satisfy general position.

Coordinates live on the lattice ``n / D``.  Square coordinates use odd
numerators with a distinct residue mod ``D`` per square and axis, points use
even numerators, so no two square sides share a line and no point sits on a
side.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from .geom import Point, Rect, UnitSquare, sq_contains

FAMILIES = ("uniform", "clustered", "corner-stack")


@dataclass
class _Lattice:
    D: int
    used_x: set = field(default_factory=set)
    used_y: set = field(default_factory=set)

    def _claim(self, n: int, used: set, rng: random.Random, lo: int, hi: int) -> Optional[int]:
        # nearest free odd numerator to n inside the open range (lo, hi)
        if n % 2 == 0:
            n += 1
        for step in range(0, self.D):
            for cand in (n + 2 * step, n - 2 * step):
                if lo < cand < hi and cand % self.D not in used:
                    used.add(cand % self.D)
                    return cand
        return None

    def square(self, sid, nx, ny, rng, xr=None, yr=None) -> Optional[UnitSquare]:
        D = self.D
        xr = xr or (nx - D, nx + D)
        yr = yr or (ny - D, ny + D)
        a = self._claim(nx, self.used_x, rng, *xr)
        if a is None:
            return None
        b = self._claim(ny, self.used_y, rng, *yr)
        if b is None:
            self.used_x.discard(a % D)
            return None
        return UnitSquare(sid, Fraction(a, D), Fraction(b, D))

    def even(self, n: int) -> int:
        return n if n % 2 == 0 else n + 1


def _lattice_for(n_squares: int) -> _Lattice:
    D = 1000
    while D // 2 < 2 * n_squares + 8:
        D *= 2
    return _Lattice(D)


def _point_in(rng: random.Random, lat: _Lattice, s: UnitSquare, pid: int, box: Optional[Rect] = None) -> Optional[Point]:
    D = lat.D
    x_lo, x_hi, y_lo, y_hi = s.ax, s.ax + 1, s.ay, s.ay + 1
    if box is not None:
        x_lo, x_hi = max(x_lo, box.x_lo), min(x_hi, box.x_hi)
        y_lo, y_hi = max(y_lo, box.y_lo), min(y_hi, box.y_hi)
    nx_lo, nx_hi = int(x_lo * D) + 1, int(x_hi * D) - 1
    ny_lo, ny_hi = int(y_lo * D) + 1, int(y_hi * D) - 1
    xs = [n for n in range(nx_lo, nx_hi + 1) if n % 2 == 0 and x_lo < Fraction(n, D) < x_hi]
    ys = [n for n in range(ny_lo, ny_hi + 1) if n % 2 == 0 and y_lo < Fraction(n, D) < y_hi]
    if not xs or not ys:
        return None
    return Point(Fraction(rng.choice(xs), D), Fraction(rng.choice(ys), D), pid)


def _fix_coverage(points, squares, lat: _Lattice, rng) -> list[UnitSquare]:
    """Add one square per uncovered point, centred on it as closely as the lattice allows."""
    squares = list(squares)
    D = lat.D
    next_id = max((s.id for s in squares), default=-1) + 1
    for p in points:
        if any(sq_contains(s, p) for s in squares):
            continue
        nx, ny = int(p.x * D), int(p.y * D)
        s = lat.square(next_id, nx - D // 2, ny - D // 2, rng, (nx - D, nx), (ny - D, ny))
        if s is None:
            raise RuntimeError("lattice exhausted; raise the denominator")
        squares.append(s)
        next_id += 1
    return squares


def generate(
    n_points: int,
    n_squares: int,
    seed: int = 0,
    width: int = 4,
    family: str = "uniform",
    corners: Iterable[int] = (1, 2, 3, 4),
) -> tuple[list[Point], list[UnitSquare], dict]:
    """Random instance of a named family; returns (points, squares, metadata)."""
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}")
    rng = random.Random(seed)
    lat = _lattice_for(n_squares + n_points)
    D = lat.D
    meta = {"generator": family, "seed": seed, "width": width}
    squares: list[UnitSquare] = []
    points: list[Point] = []

    def add_square(nx, ny, xr=None, yr=None):
        s = lat.square(len(squares), nx, ny, rng, xr, yr)
        if s is not None:
            squares.append(s)

    if family == "uniform":
        for _ in range(n_squares):
            add_square(rng.randrange(0, width * D), rng.randrange(0, width * D))
        for pid in range(n_points):
            x = lat.even(rng.randrange(0, (width + 1) * D))
            y = lat.even(rng.randrange(0, (width + 1) * D))
            points.append(Point(Fraction(x, D), Fraction(y, D), pid))
    elif family == "clustered":
        k = max(1, n_points // 8)
        hi = max(D + 1, width * D)
        centres = [(rng.randrange(D, hi), rng.randrange(D, hi)) for _ in range(k)]
        for _ in range(n_squares):
            cx, cy = rng.choice(centres)
            add_square(cx - D + rng.randrange(0, D), cy - D + rng.randrange(0, D))
        for pid in range(n_points):
            cx, cy = rng.choice(centres)
            x = lat.even(cx + rng.randrange(-D // 2, D // 2))
            y = lat.even(cy + rng.randrange(-D // 2, D // 2))
            points.append(Point(Fraction(x, D), Fraction(y, D), pid))
    else:
        corners = tuple(sorted(set(corners)))
        x0 = rng.randrange(1, max(2, width))
        y0 = rng.randrange(1, max(2, width))
        cell = Rect(Fraction(x0), Fraction(x0 + 1), Fraction(y0), Fraction(y0 + 1))
        meta["cell"] = [str(x0), str(y0)]
        meta["corners"] = list(corners)
        for _ in range(n_squares):
            c = rng.choice(corners)
            dx = 0 if c in (2, 3) else -D
            dy = 0 if c in (1, 2) else -D
            bx, by = x0 * D + dx, y0 * D + dy
            add_square(bx + rng.randrange(1, D), by + rng.randrange(1, D), (bx, bx + D), (by, by + D))
        for pid in range(n_points):
            for _ in range(50):
                p = _point_in(rng, lat, rng.choice(squares), pid, cell) if squares else None
                if p is not None:
                    points.append(p)
                    break
            else:
                x = lat.even(x0 * D + rng.randrange(2, D - 2))
                y = lat.even(y0 * D + rng.randrange(2, D - 2))
                points.append(Point(Fraction(x, D), Fraction(y, D), pid))
    squares = _fix_coverage(points, squares, lat, rng)
    return points, squares, meta


def random_cell_instance(
    rng: random.Random,
    n_squares: int,
    n_points: int,
    corners: Iterable[int] = (1, 2, 3, 4),
    spread: float = 1.0,
):
    """A CellInstance on [0,1]^2 with squares drawn around the given corners.

    ``spread`` < 1 pushes every square's inner corner toward the cell centre,
    which makes squares overlap heavily.
    """
    from .cell.instance import classify_by_corner

    corners = tuple(corners)
    lat = _lattice_for(n_squares + n_points)
    D = lat.D
    cell = Rect(Fraction(0), Fraction(1), Fraction(0), Fraction(1))
    squares = []
    for sid in range(n_squares):
        c = rng.choice(corners)
        bx = 0 if c in (2, 3) else -D
        by = 0 if c in (1, 2) else -D
        w = max(2, int(D * spread))
        ox = rng.randrange(1, w) if c in (2, 3) else D - rng.randrange(1, w)
        oy = rng.randrange(1, w) if c in (1, 2) else D - rng.randrange(1, w)
        s = lat.square(sid, bx + ox, by + oy, rng, (bx, bx + D), (by, by + D))
        if s is not None:
            squares.append(s)
    points = []
    for pid in range(n_points):
        for _ in range(50):
            p = _point_in(rng, lat, rng.choice(squares), pid, cell)
            if p is not None:
                points.append(p)
                break
    return classify_by_corner(cell, squares, points)
