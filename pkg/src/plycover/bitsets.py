"""Bitset encodings of a (points, squares) instance shared by the exact searches."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .geom import Point, UnitSquare, sq_contains


def witness_caps(squares: Sequence[UnitSquare]) -> list[int]:
    """Square masks at every candidate deepest point, maximal ones only.

    A deepest point of any clique can be taken at (max ax, max ay) over the
    clique, so the points ``(ax_i, ay_j)`` suffice.
    """
    n = len(squares)
    masks = set()
    for i in range(n):
        x = squares[i].ax
        col = 0
        for k in range(n):
            if squares[k].ax <= x <= squares[k].ax + 1:
                col |= 1 << k
        for j in range(n):
            if not (col >> j) & 1:
                continue
            y = squares[j].ay
            m = 0
            c = col
            while c:
                low = c & -c
                k = low.bit_length() - 1
                c ^= low
                if squares[k].ay <= y <= squares[k].ay + 1:
                    m |= low
            masks.add(m)
    ordered = sorted(masks, key=lambda m: (-m.bit_count(), m))
    kept: list[int] = []
    for m in ordered:
        if not any(m & k == m for k in kept):
            kept.append(m)
    return kept


@dataclass
class Encoding:
    squares: list[UnitSquare]  # sorted by id; index = bit position
    points: list[Point]
    sq_cover: list[int]  # per square: mask over points
    pt_opts: list[int]  # per point: mask over squares
    caps: list[int]

    @property
    def full_points(self) -> int:
        return (1 << len(self.points)) - 1

    def ids_of(self, mask: int) -> tuple[int, ...]:
        return tuple(self.squares[i].id for i in range(len(self.squares)) if (mask >> i) & 1)

    def squares_of(self, mask: int) -> list[UnitSquare]:
        return [self.squares[i] for i in range(len(self.squares)) if (mask >> i) & 1]


def encode(points: Sequence[Point], squares: Sequence[UnitSquare], merge_points: bool = True) -> Encoding:
    """Encode an instance; points with identical containment are merged when asked."""
    squares = sorted(squares, key=lambda s: s.id)
    opts_of: list[tuple[int, Point]] = []
    seen: dict[int, int] = {}
    for p in sorted(points, key=lambda q: q.id):
        m = 0
        for i, s in enumerate(squares):
            if sq_contains(s, p):
                m |= 1 << i
        if merge_points and m in seen:
            continue
        seen[m] = len(opts_of)
        opts_of.append((m, p))
    pts = [p for _, p in opts_of]
    pt_opts = [m for m, _ in opts_of]
    sq_cover = [0] * len(squares)
    for j, m in enumerate(pt_opts):
        c = m
        while c:
            low = c & -c
            sq_cover[low.bit_length() - 1] |= 1 << j
            c ^= low
    return Encoding(squares, pts, sq_cover, pt_opts, witness_caps(squares))
