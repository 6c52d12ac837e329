from fractions import Fraction as F
import random

import pytest
from hypothesis import given, strategies as st

from plycover.assembler import (
    APPROX,
    CERTIFY_THRESHOLD,
    EXACT,
    build_grid,
    cell_of,
    grid_offset,
    prune_pass,
    solve,
    solve_all_cells,
)
from plycover.cell import solve_cell
from plycover.errors import GeneralPositionViolation, UncoveredPoint, UniverseTooLarge
from plycover.generate import generate
from plycover.geom import Point, UnitSquare, as_coord, sq_contains
from plycover.oracle import exact_min_ply_cover

from helpers import covers_all, dense_instance


def S(i, ax, ay):
    return UnitSquare(i, as_coord(ax), as_coord(ay))


def P(x, y, i):
    return Point(as_coord(x), as_coord(y), i)


def chosen(U, cover):
    ids = set(cover.square_ids)
    return [s for s in U if s.id in ids]


def block_instance():
    """Nine occupied cells; the centre point lies in a private square and in four squares that neighbours need."""
    U = [
        S(0, "1.3", "1.3"),
        S(1, "0.6", "1.4"), S(2, "1.4", "1.42"), S(3, "1.44", "0.56"), S(4, "0.58", "0.62"),
        S(5, "1.26", "2.26"), S(6, "1.24", "-0.24"), S(7, "-0.22", "1.28"), S(8, "2.32", "1.22"),
    ]
    pts = [
        P("1.5", "1.5", 0),
        P("0.8", "2.3", 1), P("2.35", "2.35", 2), P("2.35", "0.7", 3), P("0.7", "0.75", 4),
        P("1.5", "2.7", 5), P("1.5", "0.3", 6), P("0.3", "1.5", 7), P("2.7", "1.5", 8),
    ]
    return pts, U


class TestGrid:
    def test_single_point(self):
        U = [S(0, "0.1", "0.2")]
        grid = build_grid([P("0.5", "0.5", 0)], U)
        assert len(grid.cells) == 1
        inst = next(iter(grid.cells.values()))
        assert sum(1 for c in (1, 2, 3, 4) for s in inst.corner_class(c) if s.id == 0) == 1

    def test_square_spanning_two_cells(self):
        U = [S(0, "0.5", "0.1"), S(1, "-0.3", "0.2"), S(2, "1.1", "0.15")]
        pts = [P("0.6", "0.5", 0), P("1.4", "0.5", 1)]
        grid = build_grid(pts, U)
        homes = {cell_of(p, grid.offset) for p in pts}
        assert len(homes) == 2
        classes = [
            next(c for c in (1, 2, 3, 4) if any(s.id == 0 for s in grid.cells[h].corner_class(c)))
            for h in sorted(homes)
        ]
        assert len(set(classes)) == 2

    @given(st.integers(0, 10_000))
    def test_grid_lines_avoid_everything(self, seed):
        pts, U, _ = generate(12, 10, seed=seed, width=3)
        ox, oy = grid_offset(pts, U)
        for s in U:
            assert (s.ax - ox).denominator != 1 and (s.ay - oy).denominator != 1
        for p in pts:
            assert (p.x - ox).denominator != 1 and (p.y - oy).denominator != 1

    @given(st.integers(0, 10_000))
    def test_every_square_meets_at_most_four_cells_one_corner_each(self, seed):
        pts, U, _ = generate(20, 12, seed=seed, width=3)
        grid = build_grid(pts, U)
        seen: dict[int, int] = {}
        for c, inst in grid.cells.items():
            r = grid.rect(c)
            for s in inst.squares:
                seen[s.id] = seen.get(s.id, 0) + 1
                assert sum(sq_contains(s, q) for q in r.corners()) == 1
        assert all(v <= 4 for v in seen.values())


class TestSolveAllCells:
    def test_one_cell_matches_solve_cell(self):
        U = [S(0, "0.1", "0.2"), S(1, "0.3", "-0.5"), S(2, "-0.4", "0.25")]
        pts = [P("0.5", "0.6", 0), P("0.55", "0.65", 1), P("0.45", "0.7", 2)]
        grid = build_grid(pts, U)
        (c, inst), = grid.cells.items()
        sol = solve_all_cells(grid)
        assert sol.per_cell[c] == solve_cell(inst).square_ids

    def test_far_clusters(self):
        U = [S(0, "0.1", "0.2"), S(1, "0.3", "0.35"), S(2, "10.05", "10.15"), S(3, "10.4", "10.45")]
        pts = [P("0.5", "0.6", 0), P("0.35", "0.3", 1), P("10.5", "10.6", 2), P("10.45", "10.5", 3)]
        grid = build_grid(pts, U)
        assert len(grid.cells) == 2
        sol = solve_all_cells(grid)
        assert covers_all(pts, chosen(U, sol.cover))
        plies = [solve_cell(inst).ply for inst in grid.cells.values()]
        assert sol.cover.ply == max(plies)
        left = exact_min_ply_cover(pts[:2], U[:2]).optimal_ply
        right = exact_min_ply_cover(pts[2:], U[2:]).optimal_ply
        assert sol.cover.ply == max(left, right)

    @given(st.integers(0, 10_000))
    def test_random_coverage(self, seed):
        pts, U, _ = generate(25, 12, seed=seed, width=3)
        sol = solve_all_cells(build_grid(pts, U))
        assert covers_all(pts, chosen(U, sol.cover))


class TestPrune:
    def test_sparse_unchanged(self):
        pts, U, _ = generate(6, 6, seed=2, width=6)
        grid = build_grid(pts, U)
        before = solve_all_cells(grid)
        after = prune_pass(grid, before)
        assert after.per_cell == before.per_cell and after.pruned_cells == []

    def test_constructed_block(self):
        pts, U = block_instance()
        grid = build_grid(pts, U)
        centre = cell_of(pts[0], grid.offset)
        assert len(grid.cells) == 9
        assert all((centre[0] + di, centre[1] + dj) in grid.cells for di in (-1, 0, 1) for dj in (-1, 0, 1))
        before = solve_all_cells(grid)
        assert before.per_cell[centre] == (0,)
        after = prune_pass(grid, before, pts)
        assert after.pruned_cells == [centre]
        assert after.per_cell[centre] == ()
        assert 0 not in after.cover.square_ids
        assert covers_all(pts, chosen(U, after.cover))

    @pytest.mark.parametrize("seed", range(12))
    def test_dense_bound(self, seed):
        pts, U = dense_instance(seed, 30, 12, width=2)
        k = exact_min_ply_cover(pts, U).optimal_ply
        sol = solve(pts, U, path="approx")
        assert covers_all(pts, chosen(U, sol.cover))
        assert sol.cover.ply <= 8 * k + 32


class TestSolve:
    def test_small_exact(self):
        U = [S(0, "0.1", "0.1"), S(1, "0.5", "0.55")]
        pts = [P("0.6", "0.8", 0)]
        sol = solve(pts, U)
        assert sol.path == EXACT and sol.cover.ply == 1 and sol.bound_certified

    def test_no_points(self):
        sol = solve([], [S(0, "0.1", "0.1")])
        assert sol.cover.square_ids == () and sol.cover.ply == 0

    def test_boundary_arithmetic(self):
        k = 32
        assert F(1) * k >= CERTIFY_THRESHOLD
        assert 8 * k + 32 == (8 + 1) * k

    def test_large_epsilon_certifies_approx(self):
        pts, U = dense_instance(4, 15, 10, width=3)
        sol = solve(pts, U, epsilon=64, path="auto")
        k = exact_min_ply_cover(pts, U).optimal_ply
        assert sol.path == APPROX and sol.bound_certified
        assert sol.lower_bound == k and sol.cover.ply <= (8 + 64) * k

    def test_forced_paths(self):
        pts, U = dense_instance(5, 15, 10, width=3)
        assert solve(pts, U, path="exact").path == EXACT
        approx = solve(pts, U, path="approx")
        assert approx.path == APPROX
        assert not approx.bound_certified

    def test_exact_path_respects_cap(self):
        pts, U, _ = generate(10, 20, seed=1, width=4)
        with pytest.raises(UniverseTooLarge):
            solve(pts, U, path="exact", max_universe=len(U) - 1)

    def test_errors(self):
        with pytest.raises(UncoveredPoint):
            solve([P("5.5", "5.5", 0)], [S(0, "0.1", "0.1")])
        with pytest.raises(GeneralPositionViolation):
            solve([P("1.1", "0.5", 0)], [S(0, "0.1", "0.1")])
        with pytest.raises(ValueError):
            solve([], [], epsilon=0)

    @given(st.integers(0, 10_000), st.sampled_from(["uniform", "clustered", "corner-stack"]))
    def test_random_bound(self, seed, family):
        pts, U, _ = generate(random.Random(seed).randint(1, 20), 9, seed=seed, width=2, family=family)
        if len(U) > 12:
            return
        k = exact_min_ply_cover(pts, U).optimal_ply
        for path in ("auto", "approx"):
            sol = solve(pts, U, path=path)
            assert covers_all(pts, chosen(U, sol.cover))
            assert sol.cover.ply <= 8 * k + 32
