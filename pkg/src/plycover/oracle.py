"""Exact minimum ply cover by exhaustive search.

This is the ground truth for every guarantee the approximate pipeline makes,
and the exact path of :func:`plycover.assembler.solve` on small universes.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Iterable, Optional, Sequence

from . import _kernels
from .bitsets import Encoding, encode
from .errors import UncoveredPoint, UniverseTooLarge
from .geom import Cover, Point, UnitSquare, make_cover, ply_of, sq_contains

DEFAULT_MAX_UNIVERSE = 16


@dataclass(frozen=True)
class OracleResult:
    cover: Cover
    optimal_ply: int
    explored: int


class _Counter:
    def __init__(self, backend=None):
        self.nodes = 0
        self.backend = backend

    def find(self, enc: Encoding, t, card, forced=0, allowed=None):
        mask, nodes = _kernels.find_cover(
            enc.sq_cover, enc.pt_opts, enc.caps, t, card, forced, allowed, backend=self.backend
        )
        self.nodes += nodes
        return mask


def _prepare(P, U, max_universe) -> Encoding:
    U = [s for s in U if not s.dummy]
    if len(U) > max_universe:
        raise UniverseTooLarge(len(U), max_universe)
    for p in sorted(P, key=lambda q: q.id):
        if not any(sq_contains(s, p) for s in U):
            raise UncoveredPoint(p.id)
    return encode(list(P), U)


def _canonical(enc: Encoding, search: _Counter, t: int) -> Optional[int]:
    """Fewest squares with ply <= t, lexicographically smallest ids among those."""
    n = len(enc.squares)
    card = None
    for c in range(1, n + 1):
        if search.find(enc, t, c) is not None:
            card = c
            break
    if card is None:
        return None
    forced, excluded = 0, 0
    full = enc.full_points
    for i in range(n):
        covered = 0
        m = forced
        while m:
            low = m & -m
            covered |= enc.sq_cover[low.bit_length() - 1]
            m ^= low
        if covered == full:
            break
        bit = 1 << i
        allowed = ((1 << n) - 1) & ~excluded
        if search.find(enc, t, card, forced | bit, allowed) is not None:
            forced |= bit
        else:
            excluded |= bit
    return forced


def exact_min_ply_cover(
    P: Iterable[Point],
    U: Iterable[UnitSquare],
    max_universe: int = DEFAULT_MAX_UNIVERSE,
    backend=None,
) -> OracleResult:
    """Minimum ply cover; ties go to fewer squares, then the smallest id tuple.

    Iterative deepening on the target ply t = 1, 2, ... with a depth-first
    cover search that rejects any square pushing some candidate witness point
    above t.

    Raises UncoveredPoint if a point lies in no square and UniverseTooLarge
    when ``len(U) > max_universe``.
    """
    P = list(P)
    U = list(U)
    enc = _prepare(P, U, max_universe)
    if not enc.points:
        return OracleResult(Cover((), 0, None), 0, 0)
    search = _Counter(backend)
    n = len(enc.squares)
    for t in range(1, n + 1):
        if search.find(enc, t, n) is not None:
            mask = _canonical(enc, search, t)
            cover = make_cover(enc.squares_of(mask))
            assert cover.ply == t, (cover.ply, t)
            return OracleResult(cover, t, search.nodes)
    raise AssertionError("a covered instance always admits the full universe as a cover")


def exact_cover_with_ply_at_most(
    P: Iterable[Point],
    U: Iterable[UnitSquare],
    t: int,
    max_universe: int = DEFAULT_MAX_UNIVERSE,
    backend=None,
) -> Optional[Cover]:
    """A cover of ply at most ``t`` (fewest squares, smallest ids), or None."""
    P = list(P)
    enc = _prepare(P, list(U), max_universe)
    if not enc.points:
        return Cover((), 0, None)
    if t <= 0:
        return None
    search = _Counter(backend)
    t = min(t, len(enc.squares))
    if search.find(enc, t, len(enc.squares)) is None:
        return None
    return make_cover(enc.squares_of(_canonical(enc, search, t)))


def brute_force_min_cover(
    P: Sequence[Point],
    U: Sequence[UnitSquare],
    accept: Optional[Callable[[list[UnitSquare]], bool]] = None,
    max_ply: Optional[int] = None,
) -> Optional[Cover]:
    """Plain subset enumeration, independent of the bitmask search.

    Returns the covering subset minimizing (ply, size, ids) among those
    accepted by ``accept`` and with ply at most ``max_ply``; None if there is
    none.  Intended for tiny instances in tests.
    """
    U = sorted((s for s in U if not s.dummy), key=lambda s: s.id)
    if not P:
        return Cover((), 0, None)
    best = None
    for r in range(1, len(U) + 1):
        for combo in combinations(U, r):
            if not all(any(sq_contains(s, p) for s in combo) for p in P):
                continue
            chosen = list(combo)
            if accept is not None and not accept(chosen):
                continue
            k, w = ply_of(chosen)
            if max_ply is not None and k > max_ply:
                continue
            key = (k, r, tuple(s.id for s in chosen))
            if best is None or key < best[0]:
                best = (key, Cover(key[2], k, w))
    return None if best is None else best[1]
