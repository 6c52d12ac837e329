"""Pure-Python bitmask kernels (reference implementation and fallback).

Squares and points are indexed; sets are Python ints used as bitsets.
``caps`` is a list of square masks, one per candidate witness point: a
square set ``S`` has ply at most ``t`` iff ``popcount(S & cap) <= t`` for
every cap.
"""

import sys

BACKEND = "python"


def max_depth(mask, caps):
    best = 0
    for cap in caps:
        d = (mask & cap).bit_count()
        if d > best:
            best = d
    return best


def _caps_by_square(n_sq, caps):
    by_sq = [[] for _ in range(n_sq)]
    for ci, cap in enumerate(caps):
        m = cap
        while m:
            low = m & -m
            by_sq[low.bit_length() - 1].append(ci)
            m ^= low
    return by_sq


def find_cover(sq_cover, pt_opts, caps, t, card, forced=0, allowed=None):
    """Depth-first search for a covering square set.

    Returns ``(mask, nodes)`` where ``mask`` is a square set containing
    ``forced``, drawn from ``allowed``, covering every point, with at most
    ``card`` squares and ply at most ``t``; ``mask`` is None when no such set
    exists.  Branches on the uncovered point with the fewest candidate
    squares, trying candidates in index order, so results are deterministic.
    """
    n_sq = len(sq_cover)
    n_pts = len(pt_opts)
    full = (1 << n_pts) - 1
    if allowed is None:
        allowed = (1 << n_sq) - 1
    allowed |= forced
    caps_of = _caps_by_square(n_sq, caps)
    cnt = [0] * len(caps)
    covered = 0
    size = 0
    m = forced
    while m:
        low = m & -m
        s = low.bit_length() - 1
        m ^= low
        covered |= sq_cover[s]
        size += 1
        for c in caps_of[s]:
            cnt[c] += 1
            if cnt[c] > t:
                return None, 0
    if size > card:
        return None, 0
    allowed &= ~forced
    nodes = 0

    def rec(S, covered, allowed, size):
        nonlocal nodes
        nodes += 1
        if covered == full:
            return S
        if size >= card:
            return None
        unc = full & ~covered
        best_opts = 0
        best_n = n_sq + 1
        while unc:
            low = unc & -unc
            p = low.bit_length() - 1
            unc ^= low
            o = pt_opts[p] & allowed
            n = o.bit_count()
            if n < best_n:
                best_n, best_opts = n, o
                if n <= 1:
                    break
        if best_n == 0:
            return None
        o = best_opts
        while o:
            low = o & -o
            s = low.bit_length() - 1
            o ^= low
            mine = caps_of[s]
            for c in mine:
                if cnt[c] >= t:
                    break
            else:
                for c in mine:
                    cnt[c] += 1
                r = rec(S | low, covered | sq_cover[s], allowed & ~low, size + 1)
                for c in mine:
                    cnt[c] -= 1
                if r is not None:
                    return r
            allowed &= ~low
        return None

    limit = sys.getrecursionlimit()
    if limit < n_sq + 100:
        sys.setrecursionlimit(n_sq + 100)
    result = rec(forced, covered, allowed, size)
    return result, nodes
