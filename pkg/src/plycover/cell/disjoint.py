"""Top-to-bottom dynamic program for covers whose corner classes never meet.

Below any height, the uncovered part of a horizontal band is the open gap
between the widest left-side square present (a top-left or bottom-left
corner square) and the widest right-side one.  A cover is valid exactly when
every such gap is empty of points and the two sides never overlap.  States
are the pair of squares defining the current gap; transitions happen only at
heights where some candidate square begins or ends.

Results are Pareto fronts over per-corner usage (c1, c2, c3, c4), so one
evaluation answers every budget vector.
"""

from __future__ import annotations

from functools import lru_cache
from typing import Optional

from ..geom import Cover
from .frame import FULL_REGION, BudgetVector, CellFrame, Region, bits, mask_key
from .instance import CellInstance

Vec = tuple[int, int, int, int]
Front = dict  # Vec -> square mask

_UNIT = {1: (1, 0, 0, 0), 2: (0, 1, 0, 0), 3: (0, 0, 1, 0), 4: (0, 0, 0, 1)}


def _add(v: Vec, w: Vec) -> Vec:
    return (v[0] + w[0], v[1] + w[1], v[2] + w[2], v[3] + w[3])


def _dominates(v: Vec, w: Vec) -> bool:
    return v[0] <= w[0] and v[1] <= w[1] and v[2] <= w[2] and v[3] <= w[3]


def pareto_insert(front: Front, vec: Vec, mask: int) -> None:
    if vec in front:
        if mask_key(mask) < mask_key(front[vec]):
            front[vec] = mask
        return
    for v in front:
        if _dominates(v, vec):
            return
    for v in [v for v in front if _dominates(vec, v)]:
        del front[v]
    front[vec] = mask


def query(front: Front, budgets: Vec) -> Optional[int]:
    """Cheapest entry within budgets: fewest squares, then smallest indices."""
    best = None
    for v, m in front.items():
        if _dominates(v, budgets):
            key = mask_key(m)
            if best is None or key < best[0]:
                best = (key, m)
    return None if best is None else best[1]


def candidates(fr: CellFrame, rect, pts: int, allowed: int) -> int:
    out = 0
    for i in bits(allowed):
        if fr.cover[i] & pts:
            out |= 1 << i
    return out


def band_front(fr: CellFrame, rect: tuple[int, int, int, int], cands: int, pts: int) -> Front:
    """Pareto front of valid covers of ``pts`` (inside ``rect``) by squares of ``cands``."""
    key = (rect, cands, pts)
    hit = fr.front_cache.get(key)
    if hit is not None:
        return hit
    front = _compute(fr, rect, cands, pts)
    fr.front_cache[key] = front
    return front


def _compute(fr: CellFrame, rect, cands: int, pts: int) -> Front:
    xl, xr, yl, yh = rect
    if not pts:
        return {(0, 0, 0, 0): 0}
    ix, iy, cls = fr.ix, fr.iy, fr.cls
    by_cls = {c: [i for i in bits(cands) if cls[i] == c] for c in (1, 2, 3, 4)}

    events = sorted(((iy[i], i) for i in bits(cands) if yl < iy[i] < yh), reverse=True)
    H = [yh] + [h for h, _ in events] + [yl]
    owner = [None] + [i for _, i in events] + [None]
    m = len(H) - 1
    band_x: list[list[int]] = [[] for _ in range(m)]
    # bands are open intervals (H[j+1], H[j]); points never sit on event heights
    for j in bits(pts):
        y = fr.py[j]
        lo, hi = 0, m - 1
        while lo < hi:
            mid = (lo + hi) // 2
            if y > H[mid + 1]:
                hi = mid
            else:
                lo = mid + 1
        band_x[lo].append(fr.px[j])

    def ok(j: int, L: int, R: int) -> bool:
        lam = xl if L < 0 else ix[L]
        rho = xr if R < 0 else ix[R]
        if L >= 0 and R >= 0 and lam >= rho:
            return False
        for x in band_x[j]:
            if lam < x < rho:
                return False
        return True

    def left_moves(h: int, e: int, L: int):
        """(next state, added square or -1) for the left side at an event height."""
        if L >= 0 and cls[L] == 1 and L == e:
            yield -1, -1
            for a in by_cls[1]:
                if ix[a] < ix[L] and iy[a] < h:
                    yield a, a
            return
        yield L, -1
        if cls[e] == 4 and (L < 0 or (cls[L] == 4 and ix[e] > ix[L])):
            yield e, e

    def right_moves(h: int, e: int, R: int):
        if R >= 0 and cls[R] == 2 and R == e:
            yield -1, -1
            for b in by_cls[2]:
                if ix[b] > ix[R] and iy[b] < h:
                    yield b, b
            return
        yield R, -1
        if cls[e] == 3 and (R < 0 or (cls[R] == 3 and ix[e] < ix[R])):
            yield e, e

    @lru_cache(maxsize=None)
    def f(j: int, L: int, R: int) -> tuple:
        """Front for bands j.. given the states holding on band j."""
        if not ok(j, L, R):
            return ()
        if j == m - 1:
            return (((0, 0, 0, 0), 0),)
        h, e = H[j + 1], owner[j + 1]
        out: Front = {}
        if cls[e] in (1, 4):
            for L2, add in left_moves(h, e, L):
                _extend(out, f(j + 1, L2, R), add)
        else:
            for R2, add in right_moves(h, e, R):
                _extend(out, f(j + 1, L, R2), add)
        return tuple(out.items())

    def _extend(out: Front, sub, add: int) -> None:
        for v, msk in sub:
            if add >= 0:
                v = _add(v, _UNIT[cls[add]])
                msk |= 1 << add
            pareto_insert(out, v, msk)

    starts_l = [(-1, -1)] + [(a, a) for a in by_cls[1]] + [(a, a) for a in by_cls[4] if iy[a] >= yh]
    starts_r = [(-1, -1)] + [(b, b) for b in by_cls[2]] + [(b, b) for b in by_cls[3] if iy[b] >= yh]
    front: Front = {}
    for L, a in starts_l:
        for R, b in starts_r:
            base = (0, 0, 0, 0)
            msk = 0
            for s in (a, b):
                if s >= 0:
                    base = _add(base, _UNIT[cls[s]])
                    msk |= 1 << s
            for v, sm in f(0, L, R):
                pareto_insert(front, _add(v, base), sm | msk)
    return front


def solve_region(fr: CellFrame, rect, pts: int, allowed: int, budgets: Vec) -> Optional[int]:
    pts = fr.points_in(rect, pts)
    if not pts:
        return 0
    cands = candidates(fr, rect, pts, allowed)
    return query(band_front(fr, rect, cands, pts), budgets)


class DPMemo:
    """Per-instance caches shared by the dynamic programs of one cell."""

    def __init__(self, inst: CellInstance):
        from .instance import mirror_x

        self.inst = inst
        self.frame = CellFrame(inst)
        self._mirror = None
        self._mirror_x = mirror_x
        self.diagonal: dict = {}
        self.small_d: dict = {}

    @property
    def mirror(self) -> CellFrame:
        if self._mirror is None:
            self._mirror = CellFrame(self._mirror_x(self.inst))
        return self._mirror

    def frame_for(self, orientation: str) -> CellFrame:
        return self.frame if orientation == "24" else self.mirror


def dp_disjoint(
    inst: CellInstance,
    region: Optional[Region] = None,
    budgets=None,
    memo: Optional[DPMemo] = None,
) -> Optional[Cover]:
    """Cover of the points of ``region`` with no two corner classes meeting.

    Corner c_i is used by at most ``budgets.k_i`` squares.  Returns None when
    infeasible.
    """
    memo = memo or DPMemo(inst)
    fr = memo.frame
    region = region or FULL_REGION
    b = BudgetVector.of(budgets if budgets is not None else fr.n)
    rect = fr.region_rect(region)
    mask = solve_region(fr, rect, fr.full_points, (1 << fr.n) - 1, b.as_tuple())
    return None if mask is None else fr.to_cover(mask)
