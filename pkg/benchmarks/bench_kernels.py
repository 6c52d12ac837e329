"""Time the cover-search kernel with the compiled and pure-Python backends.

Instances are jittered half-unit lattices of squares: every point has several
alternatives, so proving that no smaller cover exists takes real search.

    python3 benchmarks/bench_kernels.py [--sides 5,6,7] [--seeds 3]
"""

import argparse
import random
import time
from fractions import Fraction

from plycover import _kernels, _pykernels
from plycover.bitsets import encode
from plycover.geom import Point, UnitSquare, require_general_position

D = 2000


def lattice_instance(side: int, n_points: int, seed: int):
    rng = random.Random(seed)
    used_x, used_y = set(), set()
    squares = []

    def draw(base, used):
        while True:
            v = base + 2 * rng.randrange(0, 150) + 1
            if v % D not in used:
                used.add(v % D)
                return v

    for i in range(side):
        for j in range(side):
            a = draw(i * D // 2, used_x)
            b = draw(j * D // 2, used_y)
            squares.append(UnitSquare(len(squares), Fraction(a, D), Fraction(b, D)))
    points = []
    span = side * D // 4
    while len(points) < n_points:
        x = Fraction(2 * rng.randrange(0, span) + D // 2, D)
        y = Fraction(2 * rng.randrange(0, span) + D // 2, D)
        if any(s.ax < x < s.ax + 1 and s.ay < y < s.ay + 1 for s in squares):
            points.append(Point(x, y, len(points)))
    require_general_position(squares, points)
    return points, squares


def min_ply_then_card(kernel, enc):
    n = len(enc.squares)
    nodes = 0
    for t in range(1, n + 1):
        mask, k = kernel.find_cover(enc.sq_cover, enc.pt_opts, enc.caps, t, n)
        nodes += k
        if mask is not None:
            break
    for c in range(1, n + 1):
        mask, k = kernel.find_cover(enc.sq_cover, enc.pt_opts, enc.caps, t, c)
        nodes += k
        if mask is not None:
            return t, c, nodes
    raise AssertionError("unreachable")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--sides", default="5,6,7", help="lattice side lengths (side^2 squares, at most 64)")
    ap.add_argument("--seeds", type=int, default=3)
    args = ap.parse_args()

    kernels = _kernels.backends()
    print(f"{'squares':>8}{'points':>8}{'seed':>6}" + "".join(f"{k.BACKEND + ' s':>12}" for k in kernels) + f"{'speedup':>10}")
    totals = {k.BACKEND: 0.0 for k in kernels}
    for side in (int(s) for s in args.sides.split(",")):
        for seed in range(args.seeds):
            P, U = lattice_instance(side, min(64, side * side), seed)
            enc = encode(P, U)
            answers, times = set(), {}
            for kernel in kernels:
                t0 = time.perf_counter()
                answers.add(min_ply_then_card(kernel, enc))
                times[kernel.BACKEND] = time.perf_counter() - t0
                totals[kernel.BACKEND] += times[kernel.BACKEND]
            assert len(answers) == 1, f"backends disagree: {answers}"
            ref = times[_pykernels.BACKEND]
            fastest = min(times.values())
            print(
                f"{len(U):>8}{len(enc.points):>8}{seed:>6}"
                + "".join(f"{times[k.BACKEND]:>12.4f}" for k in kernels)
                + f"{ref / fastest:>10.1f}"
            )
    print("totals: " + ", ".join(f"{k} {v:.3f}s" for k, v in totals.items()))
    if len(kernels) == 1:
        print("compiled kernel not built; only the fallback ran")


if __name__ == "__main__":
    main()
