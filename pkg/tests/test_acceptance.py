"""Acceptance criteria, each as one test that logs a PASS/FAIL line with its counts."""

from fractions import Fraction as F
from itertools import combinations
import csv
import io as stdio
import json
import random
import time


from plycover import io
from plycover.assembler import build_grid, prune_pass, solve, solve_all_cells
from plycover.cell import Case3, budget_search, linear_budget_scan, solve_case1, solve_case2, solve_case3, solve_cell
from plycover.cli import main
from plycover.generate import random_cell_instance
from plycover.geom import Rect, UnitSquare, face_representatives, ply_of, ply_via_cliques, sq_contains, sq_intersect
from plycover.oracle import exact_min_ply_cover

from helpers import block_family, covers_all, dense_instance, diagonal_quadruple, mixed_instances


def report(log, n, name, ok, detail):
    line = f"{'PASS' if ok else 'FAIL'} criterion {n} {name}: {detail}"
    log.append(line)
    print(line)
    return ok


def chosen(U, cover):
    ids = set(cover.square_ids)
    return [s for s in U if s.id in ids]


def min_cardinality(Q, W):
    for r in range(len(W) + 1):
        for combo in combinations(W, r):
            if covers_all(Q, combo):
                return r
    return None


def union_contains(rect: Rect, squares) -> bool:
    """Exact test that closed unit squares cover a closed rectangle."""
    xs = sorted({rect.x_lo, rect.x_hi} | {v for s in squares for v in (s.ax, s.ax + 1) if rect.x_lo < v < rect.x_hi})
    ys = sorted({rect.y_lo, rect.y_hi} | {v for s in squares for v in (s.ay, s.ay + 1) if rect.y_lo < v < rect.y_hi})
    for x0, x1 in zip(xs, xs[1:]):
        for y0, y1 in zip(ys, ys[1:]):
            mid = type(rect.corners()[0])((x0 + x1) / 2, (y0 + y1) / 2)
            if not any(sq_contains(s, mid) for s in squares):
                return False
    return True


def test_global_bound(acceptance_log):
    t0 = time.perf_counter()
    instances = list(mixed_instances(140, seed=1, max_squares=12, max_points=20))
    instances += [("dense", *dense_instance(s, random.Random(s).randint(5, 20), random.Random(s).randint(4, 12)))
                  for s in range(80)]
    violations, worst, families = 0, 0.0, set()
    for fam, pts, U in instances:
        assert len(U) <= 12 and len(pts) <= 20
        families.add(fam)
        k = exact_min_ply_cover(pts, U).optimal_ply
        for path in ("approx", "auto"):
            sol = solve(pts, U, path=path)
            if not covers_all(pts, chosen(U, sol.cover)) or sol.cover.ply > 8 * k + 32:
                violations += 1
            if k:
                worst = max(worst, sol.cover.ply / k)
    elapsed = time.perf_counter() - t0
    ok = len(instances) >= 200 and violations == 0 and elapsed <= 120
    report(acceptance_log, 1, "global bound ply <= 8k*+32", ok,
           f"{len(instances)} instances ({', '.join(sorted(families))}), {violations} violations, "
           f"worst ply/k* {worst:.2f}, {elapsed:.1f}s")
    assert ok


def test_per_cell_bound(acceptance_log):
    rng = random.Random(2)
    bad, n, exact = 0, 0, 0
    for _ in range(150):
        inst = random_cell_instance(rng, rng.randint(1, 10), rng.randint(0, 12), spread=rng.choice([1.0, 0.6, 0.35]))
        ref = exact_min_ply_cover(inst.Q, inst.squares)
        got = solve_cell(inst)
        n += 1
        if not covers_all(inst.Q, chosen(inst.squares, got)):
            bad += 1
        elif len(got) > len(ref.cover) + 4 or got.ply > ref.optimal_ply + 4:
            bad += 1
        exact += got.ply == ref.optimal_ply
    ok = n >= 100 and bad == 0
    report(acceptance_log, 2, "per-cell ply*+4", ok, f"{n} cells, {bad} violations, {exact} at ply* exactly")
    assert ok


def test_case1_exact(acceptance_log):
    rng = random.Random(3)
    bad = 0
    for i in range(120):
        corner = 1 + i % 4
        inst = random_cell_instance(rng, rng.randint(1, 9), rng.randint(1, 10), (corner,), rng.choice([1.0, 0.5]))
        Wc = inst.corner_class(corner)
        got = solve_case1(inst.Q, Wc, corner)
        k = exact_min_ply_cover(inst.Q, Wc).optimal_ply
        if got.ply != k or len(got) != min_cardinality(inst.Q, Wc):
            bad += 1
    ok = bad == 0
    report(acceptance_log, 3, "Case 1 exactness", ok, f"120 single-corner cells, {bad} mismatches")
    assert ok


def test_case2_exact(acceptance_log):
    rng = random.Random(4)
    bad, forced = 0, 0
    pairs = [(1, 2), (2, 3), (4, 3), (1, 4)]
    for i in range(160):
        pair = pairs[i % 4]
        inst = random_cell_instance(rng, rng.randint(2, 8), rng.randint(1, 8), pair, rng.choice([1.0, 0.4, 0.25]))
        Wl, Wr = inst.corner_class(pair[0]), inst.corner_class(pair[1])
        got = solve_case2(inst.Q, Wl, Wr, pair)
        ref = exact_min_ply_cover(inst.Q, inst.squares)
        opt = chosen(inst.squares, ref.cover)
        if any(sq_intersect(a, b) for a in opt for b in opt if a in Wl and b in Wr):
            forced += 1
        if got.ply != ref.optimal_ply or not covers_all(inst.Q, chosen(inst.squares, got)):
            bad += 1
    ok = bad == 0 and forced > 0
    report(acceptance_log, 4, "Case 2 exactness", ok,
           f"160 two-corner cells ({forced} with crossing Wl-Wr pairs in the optimum), {bad} mismatches")
    assert ok


def test_diagonal_neighbour_quadruples(acceptance_log):
    rng = random.Random(5)
    cell = Rect(0, 1, 0, 1)
    contained = 0
    for _ in range(150):
        q, quad = diagonal_quadruple(rng)
        assert all(sq_contains(s, q) for s in quad)
        for s, (dx, dy) in zip(quad, [(-1, 1), (1, 1), (1, -1), (-1, -1)]):
            assert sq_intersect(s, UnitSquare(-9, dx, dy)) is not None
        contained += union_contains(cell, quad)
    broken, pruned = 0, 0
    for seed in range(120):
        pts, U = block_family(seed)
        grid = build_grid(pts, U)
        try:
            sol = prune_pass(grid, solve_all_cells(grid), pts)
        except AssertionError:
            broken += 1
            continue
        pruned += bool(sol.pruned_cells)
        broken += not covers_all(pts, chosen(U, sol.cover))
    ok = contained == 150 and broken == 0
    report(acceptance_log, 5, "diagonal-neighbour quadruples", ok,
           f"{contained}/150 cells contained; 120 dense blocks, {pruned} pruned a cell, {broken} lost coverage")
    assert ok


def test_ply_agreement(acceptance_log):
    rng = random.Random(6)
    mismatches = 0
    for i in range(600):
        n = rng.randint(0, 12)
        den = rng.choice([1, 2, 4, 10, 1000])
        U = [UnitSquare(j, F(rng.randint(0, 3 * den), den), F(rng.randint(0, 3 * den), den)) for j in range(n)]
        mismatches += ply_of(U)[0] != ply_via_cliques(U)
    ok = mismatches == 0
    report(acceptance_log, 6, "ply_of = ply_via_cliques", ok, f"600 square sets (touching edges included), {mismatches} mismatches")
    assert ok


def test_arrangement_reduction(acceptance_log):
    bad, shrunk = 0, 0
    for seed in range(60):
        pts, U = dense_instance(seed, 20, random.Random(seed).randint(3, 10), width=2)
        reps = face_representatives(pts, U)
        shrunk += len(reps) < len(pts)
        bad += exact_min_ply_cover(reps, U).optimal_ply != exact_min_ply_cover(pts, U).optimal_ply
    ok = bad == 0
    report(acceptance_log, 7, "face representatives keep ply*", ok, f"60 instances ({shrunk} reduced), {bad} mismatches")
    assert ok


def test_search_soundness(acceptance_log):
    rng = random.Random(8)
    disagree, non_monotone, n = 0, 0, 0
    while n < 60:
        inst = random_cell_instance(rng, rng.randint(2, 9), rng.randint(1, 9), spread=rng.choice([1.0, 0.5, 0.3]))
        n += 1
        ctx = Case3(inst)
        k_max = len(inst.squares)
        decide = lambda k: solve_case3(inst, k, ctx) is not None
        flags = [decide(k) for k in range(1, k_max + 1)]
        non_monotone += flags != sorted(flags)
        disagree += budget_search(decide, k_max) != linear_budget_scan(decide, k_max)
        disagree += budget_search(ctx.feasible, k_max) != linear_budget_scan(ctx.feasible, k_max)
    ok = disagree == 0 and non_monotone == 0
    report(acceptance_log, 8, "budget search soundness", ok,
           f"{n} cells, {disagree} search disagreements, {non_monotone} non-monotone")
    assert ok


def _run(argv, capsys):
    code = main([str(a) for a in argv])
    return code, capsys.readouterr().out


def test_determinism(acceptance_log, tmp_path, capsys):
    pts, U = dense_instance(9, 14, 10)
    inst = tmp_path / "i.json"
    io.save_instance(inst, pts, U)
    outputs = []
    for rep in range(2):
        d = tmp_path / f"r{rep}"
        d.mkdir()
        files = {}
        _run(["solve", inst, "--json", d / "s.json", "--svg", d / "s.svg"], capsys)
        _run(["solve", inst, "--path", "approx", "--json", d / "a.json", "--svg", d / "a.svg"], capsys)
        _run(["exact", inst, "--json", d / "e.json", "--svg", d / "e.svg"], capsys)
        _run(["gen", "--seed", 4, "--family", "corner-stack", "--out", d / "g.json"], capsys)
        for name in ("s.json", "s.svg", "a.json", "a.svg", "e.json", "e.svg", "g.json"):
            files[name] = (d / name).read_bytes()
        files["verify"] = _run(["verify", inst, d / "s.json"], capsys)[1].encode()
        bench = _run(["bench", "--families", "uniform,clustered", "--sizes", "6x5", "--seeds", 2], capsys)[1]
        rows = [{k: v for k, v in r.items() if k != "time_s"} for r in csv.DictReader(stdio.StringIO(bench))]
        files["bench"] = json.dumps(rows).encode()
        outputs.append(files)
    differing = [k for k in outputs[0] if outputs[0][k] != outputs[1][k]]
    ok = not differing
    report(acceptance_log, 9, "determinism", ok,
           f"{len(outputs[0])} outputs compared byte for byte, differing: {differing or 'none'}")
    assert ok
