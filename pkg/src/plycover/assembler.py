"""Whole-instance pipeline: unit grid, per-cell covers, neighbour pruning, dispatch."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Iterable, Optional

from .cell.instance import CellInstance, classify_by_corner
from .cell.search import solve_cell
from .errors import UncoveredPoint, UniverseTooLarge
from .geom import (
    Cover,
    Point,
    Rect,
    UnitSquare,
    as_coord,
    common_intersection,
    face_representatives,
    make_cover,
    require_general_position,
    sq_contains,
)
from .oracle import DEFAULT_MAX_UNIVERSE, exact_min_ply_cover

APPROX = "approx"
EXACT = "exact_small_k"
CERTIFY_THRESHOLD = 32

Cell = tuple[int, int]


@dataclass
class Grid:
    offset: tuple[Fraction, Fraction]
    cells: dict[Cell, CellInstance]
    marks: set[Cell] = field(default_factory=set)

    def rect(self, c: Cell) -> Rect:
        ox, oy = self.offset
        i, j = c
        return Rect(ox + i, ox + i + 1, oy + j, oy + j + 1)


@dataclass
class GlobalSolution:
    cover: Cover
    per_cell: dict[Cell, tuple[int, ...]]
    epsilon: Fraction
    path: str
    bound_certified: bool = False
    lower_bound: int = 0
    optimal_ply: Optional[int] = None
    max_cell_ply: int = 0
    pruned_cells: list[Cell] = field(default_factory=list)
    offset: Optional[tuple[Fraction, Fraction]] = None


def _gap_midpoint(values: Iterable[Fraction]) -> Fraction:
    fracs = sorted({v - math.floor(v) for v in values})
    if not fracs:
        return Fraction(1, 2)
    best_gap, best_mid = None, None
    for k, f in enumerate(fracs):
        nxt = fracs[k + 1] if k + 1 < len(fracs) else fracs[0] + 1
        gap = nxt - f
        if best_gap is None or gap > best_gap:
            best_gap, best_mid = gap, f + gap / 2
    return best_mid - math.floor(best_mid)


def grid_offset(P: Iterable[Point], U: Iterable[UnitSquare]) -> tuple[Fraction, Fraction]:
    """Offset whose grid lines avoid every square side and point coordinate."""
    P, U = list(P), list(U)
    ox = _gap_midpoint([s.ax for s in U] + [p.x for p in P])
    oy = _gap_midpoint([s.ay for s in U] + [p.y for p in P])
    return ox, oy


def cell_of(p: Point, offset) -> Cell:
    return (math.floor(p.x - offset[0]), math.floor(p.y - offset[1]))


def build_grid(P: Iterable[Point], U: Iterable[UnitSquare]) -> Grid:
    """Partition the points along a unit grid and build one instance per non-empty cell."""
    P = sorted(P, key=lambda p: p.id)
    U = sorted((s for s in U if not s.dummy), key=lambda s: s.id)
    offset = grid_offset(P, U)
    ox, oy = offset
    buckets: dict[Cell, list[Point]] = {}
    for p in P:
        buckets.setdefault(cell_of(p, offset), []).append(p)
    touching: dict[Cell, list[UnitSquare]] = {}
    for s in U:
        i0, j0 = math.floor(s.ax - ox), math.floor(s.ay - oy)
        for c in product((i0, i0 + 1), (j0, j0 + 1)):
            if c in buckets:
                touching.setdefault(c, []).append(s)
    grid = Grid(offset, {})
    for c in sorted(buckets):
        grid.cells[c] = classify_by_corner(grid.rect(c), touching.get(c, []), buckets[c])
    grid.marks = set(grid.cells)
    return grid


def solve_all_cells(grid: Grid, epsilon=Fraction(1)) -> GlobalSolution:
    per_cell: dict[Cell, tuple[int, ...]] = {}
    by_id: dict[int, UnitSquare] = {}
    max_ply = 0
    for c in sorted(grid.cells):
        inst = grid.cells[c]
        cov = solve_cell(inst)
        per_cell[c] = cov.square_ids
        max_ply = max(max_ply, cov.ply)
        for s in inst.squares:
            by_id[s.id] = s
    chosen = {i for ids in per_cell.values() for i in ids}
    cover = make_cover(by_id[i] for i in chosen)
    return GlobalSolution(cover, per_cell, Fraction(epsilon), APPROX, max_cell_ply=max_ply)


_NEIGHBOURS = [(di, dj) for di in (-1, 0, 1) for dj in (-1, 0, 1) if (di, dj) != (0, 0)]
_DIAGONALS = [(-1, 1), (1, 1), (1, -1), (-1, -1)]


def _meets(s: UnitSquare, r: Rect) -> bool:
    return s.ax < r.x_hi and s.ax + 1 > r.x_lo and s.ay < r.y_hi and s.ay + 1 > r.y_lo


def _quadruple(grid: Grid, c: Cell, survivors: list[UnitSquare]) -> Optional[tuple[UnitSquare, ...]]:
    """Four squares, one per diagonal neighbour of ``c``, sharing a point of ``c``."""
    r = grid.rect(c)
    groups = []
    for di, dj in _DIAGONALS:
        nr = grid.rect((c[0] + di, c[1] + dj))
        g = [s for s in survivors if _meets(s, nr) and _meets(s, r)]
        if not g:
            return None
        groups.append(g)
    for combo in product(*groups):
        common = common_intersection(combo)
        if common is None:
            continue
        if common.x_lo <= r.x_hi and common.x_hi >= r.x_lo and common.y_lo <= r.y_hi and common.y_hi >= r.y_lo:
            return combo
    return None


def prune_pass(grid: Grid, solution: GlobalSolution, points: Optional[Iterable[Point]] = None) -> GlobalSolution:
    """Drop a cell's private squares when four neighbour-owned squares already cover it.

    Cells are scanned in index order; after every removal the scan restarts.
    A cell whose check failed is not examined again, so the pass terminates.
    """
    points = list(points) if points is not None else [p for inst in grid.cells.values() for p in inst.Q]
    by_id = {s.id: s for inst in grid.cells.values() for s in inst.squares}
    per_cell = {c: set(ids) for c, ids in solution.per_cell.items()}
    marks = set(grid.cells)
    examined: set[Cell] = set()
    pruned: list[Cell] = []
    while True:
        target = None
        for c in sorted(marks):
            if c in examined:
                continue
            if all((c[0] + di, c[1] + dj) in marks for di, dj in _NEIGHBOURS):
                target = c
                break
        if target is None:
            break
        examined.add(target)
        owners: dict[int, set[Cell]] = {}
        for cc, ids in per_cell.items():
            for i in ids:
                owners.setdefault(i, set()).add(cc)
        survivors = [by_id[i] for i in sorted(owners) if owners[i] - {target}]
        if _quadruple(grid, target, survivors) is None:
            continue
        private = {i for i in per_cell[target] if owners[i] == {target}}
        per_cell[target] -= private
        marks.discard(target)
        pruned.append(target)
        remaining = [by_id[i] for ids in per_cell.values() for i in ids]
        for p in points:
            assert any(sq_contains(s, p) for s in remaining), f"pruning uncovered point {p.id}"
    chosen = sorted({i for ids in per_cell.values() for i in ids})
    out = GlobalSolution(
        make_cover(by_id[i] for i in chosen),
        {c: tuple(sorted(ids)) for c, ids in per_cell.items()},
        solution.epsilon,
        solution.path,
        max_cell_ply=solution.max_cell_ply,
        pruned_cells=pruned,
    )
    grid.marks = marks
    return out


def solve(
    P: Iterable[Point],
    U: Iterable[UnitSquare],
    epsilon=Fraction(1),
    path: str = "auto",
    max_universe: int = DEFAULT_MAX_UNIVERSE,
) -> GlobalSolution:
    """Low-ply cover of P by squares from U within a factor 8 + epsilon of optimal.

    ``path`` is "auto", "exact" or "approx".  On "auto" the exact search runs
    when the universe is small and its optimum k* satisfies epsilon * k* < 32;
    otherwise the grid pipeline runs and the factor is certified only when a
    lower bound on k* reaches 32 / epsilon.
    """
    P = sorted(P, key=lambda p: p.id)
    U = sorted((s for s in U if not s.dummy), key=lambda s: s.id)
    eps = as_coord(epsilon)
    if eps <= 0:
        raise ValueError("epsilon must be positive")
    if path not in ("auto", "exact", "approx"):
        raise ValueError(f"unknown path {path!r}")
    require_general_position(U, P)
    for p in P:
        if not any(sq_contains(s, p) for s in U):
            raise UncoveredPoint(p.id)
    reps = face_representatives(P, U)
    if not reps:
        return GlobalSolution(Cover((), 0, None), {}, eps, EXACT, True, 0, 0)

    k_star = None
    if path == "exact" or (path == "auto" and len(U) <= max_universe):
        if len(U) > max_universe:
            raise UniverseTooLarge(len(U), max_universe)
        res = exact_min_ply_cover(reps, U, max_universe=max_universe)
        k_star = res.optimal_ply
        if path == "exact" or eps * k_star < CERTIFY_THRESHOLD:
            return GlobalSolution(res.cover, {}, eps, EXACT, True, k_star, k_star)

    grid = build_grid(reps, U)
    sol = prune_pass(grid, solve_all_cells(grid, eps), reps)
    lower = k_star if k_star is not None else max(1, sol.max_cell_ply - 4)
    sol.lower_bound = lower
    sol.optimal_ply = k_star
    sol.bound_certified = eps * lower >= CERTIFY_THRESHOLD
    sol.offset = grid.offset
    return sol
