"""Solver-versus-oracle benchmark rows over generated families."""

from __future__ import annotations

import csv
import io
import time
from fractions import Fraction
from typing import Iterable, Sequence

from .assembler import solve
from .generate import generate
from .oracle import DEFAULT_MAX_UNIVERSE, exact_min_ply_cover

COLUMNS = ["family", "N", "M", "seed", "ply", "k_star", "ratio", "time_s"]


def parse_sizes(text: str) -> list[tuple[int, int]]:
    """``"8x10,12"`` -> [(8, 10), (12, 12)] as (points, squares)."""
    out = []
    for item in filter(None, (s.strip() for s in text.split(","))):
        if "x" in item:
            n, m = item.split("x", 1)
            out.append((int(n), int(m)))
        else:
            out.append((int(item), int(item)))
    return out


def rows(
    families: Sequence[str],
    sizes: Iterable[tuple[int, int]],
    seeds: int,
    width: int = 4,
    epsilon=Fraction(1),
    path: str = "approx",
    oracle_cap: int = DEFAULT_MAX_UNIVERSE,
):
    sizes = list(sizes)
    for family in families:
        for n, m in sizes:
            for seed in range(seeds):
                P, U, _ = generate(n, m, seed=seed, width=width, family=family)
                t0 = time.perf_counter()
                sol = solve(P, U, epsilon, path=path)
                elapsed = time.perf_counter() - t0
                k_star = ""
                ratio = ""
                if len(U) <= oracle_cap:
                    k = exact_min_ply_cover(P, U, max_universe=oracle_cap).optimal_ply
                    k_star = k
                    ratio = f"{sol.cover.ply / k:.4f}" if k else ""
                yield {
                    "family": family,
                    "N": n,
                    "M": len(U),
                    "seed": seed,
                    "ply": sol.cover.ply,
                    "k_star": k_star,
                    "ratio": ratio,
                    "time_s": f"{elapsed:.4f}",
                }


def to_csv(records) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=COLUMNS, lineterminator="\n")
    w.writeheader()
    for r in records:
        w.writerow(r)
    return buf.getvalue()
