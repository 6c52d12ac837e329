"""Case 3 guessing, the budget search, and the per-cell entry point."""

from __future__ import annotations

from itertools import combinations
from typing import Callable, Optional

from ..geom import Cover, sq_contains
from .case12 import solve_case1, solve_case2
from .diagonal import DiagonalSolver
from .disjoint import DPMemo, solve_region
from .frame import bits, mask_key
from .instance import ADJACENT, CellInstance, is_adjacent

MAX_GUESS = 4


class Case3:
    """Reusable state for repeated Case 3 queries on one cell."""

    def __init__(self, inst: CellInstance):
        self.inst = inst
        self.memo = DPMemo(inst)
        fr = self.memo.frame
        self.fr = fr
        self._guesses: Optional[list[int]] = None
        self._scenario: dict = {}
        self._levels: dict[int, list[tuple[int, int]]] = {}
        self._solvers = {
            o: DiagonalSolver(
                self.memo.frame_for(o),
                self.memo.diagonal.setdefault(o, {}),
                self.memo.small_d.setdefault(o, {}),
            )
            for o in ("24", "13")
        }

    @property
    def guesses(self) -> list[int]:
        """Removal guesses worth trying, smallest first.

        A useful guess is irredundant (every member covers a point no other
        member covers) and each member meets some square of an adjacent corner
        class; other squares never need removing.
        """
        if self._guesses is None:
            fr = self.fr
            useful = [
                i
                for i in range(fr.n)
                if any(is_adjacent(fr.cls[i], fr.cls[j]) for j in bits(fr.inter[i]))
            ]
            out = [0]
            for size in range(1, MAX_GUESS + 1):
                for combo in combinations(useful, size):
                    if all(
                        fr.cover[i] & ~fr.covered_by(sum(1 << j for j in combo if j != i))
                        for i in combo
                    ):
                        out.append(sum(1 << i for i in combo))
            self._guesses = out
        return self._guesses

    def scenario(self, residual: int, k) -> Optional[int]:
        """Best scenario cover of the residual points within budgets ``k`` (int or 4-tuple)."""
        b = (k,) * 4 if isinstance(k, int) else tuple(k)
        key = (residual, b)
        if key in self._scenario:
            return self._scenario[key]
        fr = self.fr
        K = max(b)
        found = []
        m = solve_region(fr, (fr.x_lo, fr.x_hi, fr.y_lo, fr.y_hi), residual, (1 << fr.n) - 1, b)
        if m is not None:
            found.append(m)
        for o, solver in self._solvers.items():
            bo = b if o == "24" else (b[1], b[0], b[3], b[2])
            m = solver.T((-1, -1, -1, -1), residual, bo, K)
            if m is not None:
                found.append(m)
        best = min(found, key=mask_key) if found else None
        self._scenario[key] = best
        return best

    def feasible(self, k: int) -> bool:
        """Some guess leaves a residual solvable with every budget k (monotone in k)."""
        fr = self.fr
        for g in self.guesses:
            if self.scenario(fr.full_points & ~fr.covered_by(g), k) is not None:
                return True
        return False

    def best(self, k: int) -> Optional[Cover]:
        """Best guess-plus-scenario union at budget k; its ply may exceed k by up to |G|."""
        fr = self.fr
        best = None
        for g in self.guesses:
            m = self.scenario(fr.full_points & ~fr.covered_by(g), k)
            if m is None:
                continue
            total = g | m
            key = (fr.ply(total), mask_key(total))
            if best is None or key < best[0]:
                best = (key, total)
        return None if best is None else fr.to_cover(best[1])

    def _level(self, j: int) -> list[tuple[int, int]]:
        """(ply, mask) of every union built at budget level j."""
        hit = self._levels.get(j)
        if hit is not None:
            return hit
        fr = self.fr
        out = set()
        for g in self.guesses:
            residual = fr.full_points & ~fr.covered_by(g)
            used = [sum(1 for i in bits(g) if fr.cls[i] == c) for c in (1, 2, 3, 4)]
            for b in {(j,) * 4, tuple(max(0, j - u) for u in used)}:
                m = self.scenario(residual, b)
                if m is not None:
                    out.add((fr.ply(g | m), g | m))
        self._levels[j] = sorted(out, key=lambda e: (e[0], mask_key(e[1])))
        return self._levels[j]

    def strict(self, k: int) -> Optional[Cover]:
        """Best union of ply at most k over budget levels 1..k, or None.

        Candidate sets grow with k, so feasibility is monotone.
        """
        best = None
        for j in range(1, k + 1):
            for ply, mask in self._level(j):
                if ply > k:
                    break
                key = (ply, mask_key(mask))
                if best is None or key < best[0]:
                    best = (key, mask)
                break
        return None if best is None else self.fr.to_cover(best[1])


def solve_case3(inst: CellInstance, k: int, ctx: Optional[Case3] = None) -> Optional[Cover]:
    """Guess up to four squares, cover the rest in a structured scenario, keep unions of ply at most k.

    Returns the best such cover (ply recomputed on the whole set) or None.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    ctx = ctx or Case3(inst)
    return ctx.strict(k)


def budget_search(feasible: Callable[[int], bool], k_max: int) -> Optional[int]:
    """Smallest k in 1..k_max with feasible(k), by doubling then bisection.

    Assumes feasibility is monotone in k.
    """
    if k_max < 1:
        return None
    lo, r = 0, 1
    while True:
        if r >= k_max:
            r = k_max
            if not feasible(r):
                return None
            break
        if feasible(r):
            break
        lo, r = r, 2 * r
    while r - lo > 1:
        mid = (lo + r) // 2
        if feasible(mid):
            r = mid
        else:
            lo = mid
    return r


def linear_budget_scan(feasible: Callable[[int], bool], k_max: int) -> Optional[int]:
    for k in range(1, k_max + 1):
        if feasible(k):
            return k
    return None


def _covers_all(Q, squares) -> bool:
    return all(any(sq_contains(s, p) for s in squares) for p in Q)


def solve_cell(inst: CellInstance) -> Cover:
    """Low-ply cover of the cell's points: ply at most the optimum plus four.

    Exact whenever the squares come from one corner or two adjacent corners.
    """
    inst.require_covered()
    Q = list(inst.Q)
    if not Q:
        return Cover((), 0, None)
    useful = [s.id for s in inst.squares if any(sq_contains(s, p) for p in Q)]
    inst = inst.only_squares(useful)
    found: list[Cover] = []
    for c in (1, 2, 3, 4):
        Wc = inst.corner_class(c)
        if Wc and _covers_all(Q, Wc):
            found.append(solve_case1(Q, Wc, c))
    for a, b in ADJACENT:
        Wa, Wb = inst.corner_class(a), inst.corner_class(b)
        if _covers_all(Q, Wa + Wb):
            found.append(solve_case2(Q, Wa, Wb, (a, b)))
    ctx = Case3(inst)
    n = len(useful)
    k = budget_search(lambda j: solve_case3(inst, j, ctx) is not None, n)
    if k is not None:
        found.append(ctx.strict(k))
    k = budget_search(ctx.feasible, n)
    if k is not None:
        found.append(ctx.best(k))
    if not found:
        fr = ctx.fr
        found.append(fr.to_cover(fr.irredundant((1 << fr.n) - 1, fr.full_points)))
    best = min(found, key=lambda c: (c.ply, len(c), c.square_ids))
    fr = ctx.fr
    mask = fr.irredundant(fr.mask_of_ids(best.square_ids), fr.full_points)
    return fr.to_cover(mask)
