"""Exact solvers when the squares reach the cell from one corner or two adjacent corners."""

from __future__ import annotations

from typing import Iterable, Optional, Sequence

from ..errors import UncoveredPoint
from ..geom import Cover, Point, UnitSquare, make_cover, sq_contains


def _require_covered(Q: Sequence[Point], W: Sequence[UnitSquare]) -> None:
    missing = [p.id for p in Q if not any(sq_contains(s, p) for s in W)]
    if missing:
        raise UncoveredPoint(min(missing))


def _greedy(Q: Sequence[Point], Wc: Sequence[UnitSquare], corner: int) -> Optional[list[UnitSquare]]:
    # mirror so that the shared corner is the top-right one
    sx = 1 if corner in (2, 3) else -1
    sy = 1 if corner in (1, 2) else -1
    remaining = sorted(Q, key=lambda p: (sx * p.x, sy * p.y, p.id))
    chosen: list[UnitSquare] = []
    while remaining:
        z = remaining[0]
        holders = [s for s in Wc if sq_contains(s, z)]
        if not holders:
            return None
        best = min(holders, key=lambda s: (sy * s.ay, s.id))
        chosen.append(best)
        remaining = [p for p in remaining if not sq_contains(best, p)]
    return chosen


def solve_case1(Q: Iterable[Point], Wc: Iterable[UnitSquare], corner: int = 2) -> Cover:
    """Minimum-cardinality cover when every square holds the same cell corner.

    Repeatedly takes the uncovered point farthest from ``corner`` horizontally
    and the square containing it that reaches farthest from the corner
    vertically.  Cardinality equals ply here because all chosen squares share
    the corner.
    """
    Q = list(Q)
    Wc = sorted(Wc, key=lambda s: s.id)
    _require_covered(Q, Wc)
    return make_cover(_greedy(Q, Wc, corner))


def _split_axis(corners: tuple[int, int]):
    """(axis, low-side corner, high-side corner) for an adjacent corner pair."""
    a, b = corners
    pair = {a, b}
    if pair in ({1, 2}, {3, 4}):
        low = a if a in (1, 4) else b
        return "x", low, (b if low == a else a)
    if pair in ({1, 4}, {2, 3}):
        low = a if a in (3, 4) else b
        return "y", low, (b if low == a else a)
    raise ValueError(f"corners {corners} are not adjacent")


def solve_case2(
    Q: Iterable[Point],
    Wl: Iterable[UnitSquare],
    Wr: Iterable[UnitSquare],
    corners: tuple[int, int] = (1, 2),
) -> Cover:
    """Minimum ply cover when squares come from two adjacent corners.

    ``Wl`` holds corner ``corners[0]`` and ``Wr`` holds ``corners[1]``.  Some
    optimal cover becomes separable by an axis-parallel line through a square
    side after dropping at most one square, so every such line, with and
    without each single square set aside, is tried.
    """
    Q = list(Q)
    Wl = sorted(Wl, key=lambda s: s.id)
    Wr = sorted(Wr, key=lambda s: s.id)
    _require_covered(Q, Wl + Wr)
    if not Q:
        return Cover((), 0, None)
    axis, low_c, high_c = _split_axis(corners)
    low_set, high_set = (Wl, Wr) if low_c == corners[0] else (Wr, Wl)

    if axis == "x":
        def pc(p): return p.x
        def lo(s): return s.ax
    else:
        def pc(p): return p.y
        def lo(s): return s.ay

    def side_lines(squares):
        vals = set()
        for s in squares:
            vals.add(lo(s))
            vals.add(lo(s) + 1)
        return sorted(vals)

    def split(points, lows, highs, line):
        left_p = [p for p in points if pc(p) < line]
        right_p = [p for p in points if pc(p) > line]
        a = _greedy(left_p, [s for s in lows if lo(s) + 1 <= line], low_c)
        if a is None:
            return None
        b = _greedy(right_p, [s for s in highs if lo(s) >= line], high_c)
        if b is None:
            return None
        return a + b

    candidates: dict[tuple[int, ...], list[UnitSquare]] = {}

    def offer(squares):
        if squares is not None:
            candidates.setdefault(tuple(sorted(s.id for s in squares)), squares)

    crossing = any(
        lo(a) + 1 >= lo(b) for a in low_set for b in high_set
    )
    if not crossing:
        if not low_set or not high_set:
            offer(split(Q, low_set, high_set, _gap_line(low_set, high_set, lo)))
        else:
            gap = (max(lo(s) + 1 for s in low_set) + min(lo(s) for s in high_set)) / 2
            offer(split(Q, low_set, high_set, gap))
    else:
        everything = low_set + high_set
        for line in side_lines(everything):
            offer(split(Q, low_set, high_set, line))
        for M in everything:
            rest_q = [p for p in Q if not sq_contains(M, p)]
            lows = [s for s in low_set if s.id != M.id]
            highs = [s for s in high_set if s.id != M.id]
            for line in side_lines(lows + highs):
                got = split(rest_q, lows, highs, line)
                if got is not None:
                    offer(got + [M])
            if not rest_q:
                offer([M])

    best = None
    for ids, squares in candidates.items():
        cov = make_cover(squares)
        key = (cov.ply, len(cov), cov.square_ids)
        if best is None or key < best[0]:
            best = (key, cov)
    assert best is not None, "a covered instance always has a separable cover"
    return best[1]


def _gap_line(low_set, high_set, lo):
    if low_set:
        return max(lo(s) + 1 for s in low_set)
    return min(lo(s) for s in high_set)
