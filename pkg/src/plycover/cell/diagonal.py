"""Recursive program for covers where only bottom-left and top-right corner squares meet.

The opposite orientation (top-left with bottom-right) runs on the mirrored
instance.  A region is the open rectangle framed by up to four squares: a
bottom-left corner square on the left and at the bottom, a top-right corner
square on the right and at the top, with dummies standing in for cell sides.
Choosing an intersecting pair A (bottom-left class) and B (top-right class)
splits a region into the part above A and left of B and the part below B and
right of A.
"""

from __future__ import annotations

from itertools import combinations
from typing import Optional

from ..geom import Cover
from .disjoint import DPMemo, solve_region
from .frame import FULL_REGION, BudgetVector, CellFrame, Region, bits, mask_key
from .instance import DUMMY_BOTTOM, DUMMY_LEFT, DUMMY_RIGHT, DUMMY_TOP, CellInstance



class DiagonalSolver:
    def __init__(self, fr: CellFrame, memo: Optional[dict] = None, small_d: Optional[dict] = None):
        self.fr = fr
        self.memo = memo if memo is not None else {}
        self.small_d = small_d if small_d is not None else {}
        self._rect_cache: dict = {}
        self._cand_cache: dict = {}

    # geometry
    def rect(self, reg) -> tuple[int, int, int, int]:
        r = self._rect_cache.get(reg)
        if r is None:
            fr = self.fr
            L, Bo, R, T = reg
            r = (
                fr.x_lo if L < 0 else fr.ix[L],
                fr.x_hi if R < 0 else fr.ix[R],
                fr.y_lo if Bo < 0 else fr.iy[Bo],
                fr.y_hi if T < 0 else fr.iy[T],
            )
            self._rect_cache[reg] = r
        return r

    def candidates(self, reg, pts: int) -> tuple[int, int, int]:
        """(W2 candidates, W4 candidates, W1/W3 candidates) admissible in a region."""
        key = (reg, pts)
        hit = self._cand_cache.get(key)
        if hit is not None:
            return hit
        fr = self.fr
        ix, iy, cls = fr.ix, fr.iy, fr.cls
        L, Bo, R, T = reg
        real = [s for s in reg if s >= 0]
        c2 = c4 = c13 = 0
        for i in range(fr.n):
            if not fr.cover[i] & pts:
                continue
            c = cls[i]
            if c == 2:
                if any(b >= 0 and ix[i] <= ix[b] and iy[i] <= iy[b] for b in (R, T)):
                    continue
                c2 |= 1 << i
            elif c == 4:
                if any(a >= 0 and ix[i] >= ix[a] and iy[i] >= iy[a] for a in (L, Bo)):
                    continue
                c4 |= 1 << i
            else:
                if any((fr.inter[i] >> s) & 1 for s in real):
                    continue
                c13 |= 1 << i
        out = (c2, c4, c13)
        self._cand_cache[key] = out
        return out

    # recursion
    def T(self, reg, pts: int, b: tuple[int, int, int, int], K: int) -> Optional[int]:
        """Fewest-square valid cover of the region's points within budgets ``b``, or None."""
        fr = self.fr
        rect = self.rect(reg)
        pts = fr.points_in(rect, pts)
        if not pts:
            return 0
        key = (reg, pts, b, K)
        if key in self.memo:
            return self.memo[key]
        self.memo[key] = None  # recursion never revisits a key; guard anyway
        c2, c4, c13 = self.candidates(reg, pts)
        found: list[int] = []
        base = solve_region(fr, rect, pts, c2 | c4 | c13, b)
        if base is not None:
            found.append(base)
        b1, b2, b3, b4 = b
        L, Bo, R, Tp = reg
        if b2 >= 1 and b4 >= 1:
            d_entry = _UNSET
            for A in bits(c4):
                for B in bits(c2 & fr.inter[A]):
                    r1 = (L, A, B, Tp)
                    r2 = (A, Bo, R, B)
                    pair = (1 << A) | (1 << B)
                    rest = pts & ~fr.covered_by(pair)
                    for s2 in range(b2):
                        for s4 in range(b4):
                            m1 = self.T(r1, rest, (b1, s2, b3, s4), K)
                            if m1 is None:
                                continue
                            m2 = self.T(r2, rest, (b1, b2 - 1 - s2, b3, b4 - 1 - s4), K)
                            if m2 is None:
                                continue
                            union = m1 | m2 | pair
                            cross = union & (fr.clsmask[2] | fr.clsmask[4])
                            delta = fr.ply(cross)
                            if delta <= K:
                                found.append(union)
                            elif K >= 4:
                                reduced = self.beta(union, pts, K)
                                if reduced is not None:
                                    found.append(reduced)
                            else:
                                if d_entry is _UNSET:
                                    d_entry = self.D(reg, pts, b, K)
                                if d_entry is not None:
                                    found.append(d_entry)
        best = None
        for msk in found:
            if not self._within(msk, pts, b, K):
                continue
            if best is None or mask_key(msk) < mask_key(best):
                best = msk
        self.memo[key] = best
        return best

    def _within(self, msk: int, pts: int, b, K: int) -> bool:
        fr = self.fr
        if fr.covered_by(msk) & pts != pts:
            return False
        counts = fr.counts(msk)
        if any(c > k for c, k in zip(counts, b)):
            return False
        return fr.ply(msk) <= K

    def beta(self, union: int, pts: int, K: int) -> Optional[int]:
        """Thin every clique deeper than K to the squares framing its common rectangle."""
        fr = self.fr
        cur = union
        while True:
            deep = [cap for cap in fr.caps if (cur & cap).bit_count() > K]
            if not deep:
                break
            clique = cur & max(deep, key=lambda c: ((cur & c).bit_count(), c))
            members = list(bits(clique))
            sq = fr.squares
            keep = {
                max(members, key=lambda i: (sq[i].ax, -i)),
                min(members, key=lambda i: (sq[i].ax, i)),
                max(members, key=lambda i: (sq[i].ay, -i)),
                min(members, key=lambda i: (sq[i].ay, i)),
            }
            drop = clique & ~sum(1 << i for i in keep)
            if not drop:
                break
            cur &= ~drop
        if fr.covered_by(cur) & pts == pts and fr.ply(cur) <= K:
            return cur
        pruned = fr.irredundant(union, pts)
        if fr.ply(pruned) <= K:
            return pruned
        return None

    def D(self, reg, pts: int, b, K: int) -> Optional[int]:
        """Exhaustive choice of the top-right and bottom-left parts; the rest by disjoint W1/W3 squares."""
        key = (reg, pts, b, K)
        if key in self.small_d:
            return self.small_d[key]
        fr = self.fr
        rect = self.rect(reg)
        c2, c4, c13 = self.candidates(reg, pts)
        l2, l4 = list(bits(c2)), list(bits(c4))
        best = None
        _, b2, _, b4 = b
        for n2 in range(min(b2, len(l2)) + 1):
            for S2 in combinations(l2, n2):
                m2 = sum(1 << i for i in S2)
                for n4 in range(min(b4, len(l4)) + 1):
                    for S4 in combinations(l4, n4):
                        chosen = m2 | sum(1 << i for i in S4)
                        if fr.ply(chosen) > K:
                            continue
                        rest = pts & ~fr.covered_by(chosen)
                        allowed = 0
                        for i in bits(c13):
                            if not fr.inter[i] & chosen:
                                allowed |= 1 << i
                        sub = solve_region(fr, rect, rest, allowed, (b[0], 0, b[2], 0))
                        if sub is None:
                            continue
                        msk = chosen | sub
                        if best is None or mask_key(msk) < mask_key(best):
                            best = msk
        self.small_d[key] = best
        return best


_UNSET = object()


def _region_tuple(fr: CellFrame, region: Region) -> tuple[int, int, int, int]:
    fr.region_rect(region, diagonal=True)  # validates

    def idx(sid, dummy):
        return -1 if sid == dummy else fr.index[sid]

    return (
        idx(region.left, DUMMY_LEFT),
        idx(region.bottom, DUMMY_BOTTOM),
        idx(region.right, DUMMY_RIGHT),
        idx(region.top, DUMMY_TOP),
    )


def _budgets_for(b: BudgetVector, orientation: str) -> tuple[int, int, int, int]:
    k1, k2, k3, k4 = b.as_tuple()
    # the mirror swaps corner classes 1<->2 and 3<->4
    return (k1, k2, k3, k4) if orientation == "24" else (k2, k1, k4, k3)


def _solver(memo: DPMemo, orientation: str) -> DiagonalSolver:
    fr = memo.frame_for(orientation)
    store = memo.diagonal.setdefault(orientation, {})
    small = memo.small_d.setdefault(orientation, {})
    return DiagonalSolver(fr, store, small)


def dp_diagonal(
    inst: CellInstance,
    region: Optional[Region] = None,
    budgets=None,
    memo: Optional[DPMemo] = None,
    orientation: str = "24",
) -> Optional[Cover]:
    """Cover of the region's points where only one diagonal pair of corner classes may meet.

    ``orientation`` "24" lets top-right and bottom-left squares intersect;
    "13" lets top-left and bottom-right ones intersect (solved on the mirror
    image; region ids then refer to the mirrored corner classes while budgets
    keep the original labels).  Returns None when infeasible.
    """
    memo = memo or DPMemo(inst)
    solver = _solver(memo, orientation)
    fr = solver.fr
    b = BudgetVector.of(budgets if budgets is not None else fr.n)
    reg = _region_tuple(fr, region or FULL_REGION)
    mask = solver.T(reg, fr.full_points, _budgets_for(b, orientation), b.k)
    return None if mask is None else memo.frame.to_cover(mask)


def precompute_small_d(
    inst: CellInstance,
    budgets,
    regions=None,
    memo: Optional[DPMemo] = None,
    orientation: str = "24",
) -> dict:
    """Table of exhaustive small-budget entries keyed by (region, budgets).

    Each entry chooses the top-right and bottom-left parts outright and
    finishes with mutually disjoint top-left/bottom-right squares; None marks
    an infeasible entry.
    """
    b = BudgetVector.of(budgets)
    if b.k > 3:
        raise ValueError("the small-budget table is defined for budgets up to 3")
    memo = memo or DPMemo(inst)
    solver = _solver(memo, orientation)
    fr = solver.fr
    table = {}
    for region in regions or [FULL_REGION]:
        reg = _region_tuple(fr, region)
        mask = solver.D(reg, fr.points_in(solver.rect(reg), fr.full_points), _budgets_for(b, orientation), b.k)
        table[(region, b)] = None if mask is None else memo.frame.to_cover(mask)
    return table
