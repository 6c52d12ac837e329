"""Reference checks shared by the test modules."""

from itertools import combinations
import random

from plycover.generate import generate, random_cell_instance
from plycover.geom import ply_of, sq_contains


def covers_all(points, squares) -> bool:
    return all(any(sq_contains(s, p) for s in squares) for p in points)


def scenario_feasible(inst, accept, budgets, points=None) -> bool:
    """Some cover accepted by ``accept`` uses corner c at most budgets[c-1] times, ply at most max(budgets)."""
    cls = inst.class_of()
    U = inst.squares
    P = inst.Q if points is None else points
    K = max(budgets)
    if not P:
        return True
    for r in range(1, len(U) + 1):
        for combo in combinations(U, r):
            if not covers_all(P, combo):
                continue
            cnt = [sum(1 for s in combo if cls[s.id] == c) for c in (1, 2, 3, 4)]
            if any(x > y for x, y in zip(cnt, budgets)):
                continue
            if not accept(list(combo), cls):
                continue
            if ply_of(combo)[0] > K:
                continue
            return True
    return False


def cell_instances(count, seed, max_squares=10, max_points=12, corners=(1, 2, 3, 4), spread=None):
    rng = random.Random(seed)
    for _ in range(count):
        yield random_cell_instance(
            rng,
            rng.randint(1, max_squares),
            rng.randint(0, max_points),
            corners,
            spread if spread is not None else rng.choice([1.0, 0.6, 0.35]),
        )


def mixed_instances(count, seed, max_squares=12, max_points=20):
    """Global instances from every family; skips those whose coverage repair overshoots the cap."""
    rng = random.Random(seed)
    families = ["uniform", "clustered", "corner-stack"]
    made = 0
    attempt = 0
    while made < count:
        attempt += 1
        fam = families[attempt % 3]
        n = rng.randint(1, max_points)
        m = rng.randint(1, max_squares - 2)
        width = rng.choice([1, 2, 3])
        P, U, meta = generate(n, m, seed=attempt, width=width, family=fam)
        if len(U) > max_squares:
            continue
        made += 1
        yield fam, P, U


def dense_instance(seed, n_points, n_squares, width=2):
    """Generated squares with points sampled inside them, so no coverage repair inflates the universe."""
    from fractions import Fraction

    from plycover.geom import Point

    _, U, _ = generate(0, n_squares, seed=seed, width=width)
    rng = random.Random(seed)
    D = max(s.ax.denominator for s in U) * 2 if U else 2
    pts = []
    while len(pts) < n_points and U:
        s = rng.choice(U)
        x = s.ax + Fraction(2 * rng.randrange(1, D // 2), D)
        y = s.ay + Fraction(2 * rng.randrange(1, D // 2), D)
        p = Point(x, y, len(pts))
        if any(p.x == t.ax or p.x == t.ax + 1 or p.y == t.ay or p.y == t.ay + 1 for t in U):
            continue
        pts.append(p)
    return pts, U


def lattice_instance(seed, side=6, n_points=40):
    """Squares anchored near a half-unit lattice with points inside them: many occupied 3x3 blocks."""
    from fractions import Fraction

    from plycover.geom import Point, UnitSquare

    rng = random.Random(seed)
    D = 2000
    used_x, used_y = set(), set()

    def draw(base, used):
        while True:
            v = base + 2 * rng.randrange(0, 300) + 1
            if v % D not in used:
                used.add(v % D)
                return v

    U = []
    for i in range(side):
        for j in range(side):
            U.append(UnitSquare(len(U), Fraction(draw(i * D // 2, used_x), D), Fraction(draw(j * D // 2, used_y), D)))
    pts = []
    while len(pts) < n_points:
        s = rng.choice(U)
        p = Point(s.ax + Fraction(2 * rng.randrange(1, D // 2), D), s.ay + Fraction(2 * rng.randrange(1, D // 2), D), len(pts))
        if any(p.x in (t.ax, t.ax + 1) or p.y in (t.ay, t.ay + 1) for t in U):
            continue
        pts.append(p)
    return pts, U


def _frac_in(rng, lo, hi, D=10007):
    from fractions import Fraction

    a, b = int(lo * D) + 1, int(hi * D) - 1
    return Fraction(rng.randint(a, b), D)


def diagonal_quadruple(rng, cell_x=0, cell_y=0):
    """A point q of the cell at (cell_x, cell_y) and four unit squares through q, one meeting each diagonal neighbour."""
    from plycover.geom import Point, UnitSquare

    qx = cell_x + _frac_in(rng, 0.05, 0.95)
    qy = cell_y + _frac_in(rng, 0.05, 0.95)
    squares = []
    for k, (dx, dy) in enumerate([(-1, 1), (1, 1), (1, -1), (-1, -1)]):
        ax = _frac_in(rng, float(qx - 1), float(cell_x)) if dx < 0 else _frac_in(rng, float(cell_x), float(qx))
        ay = _frac_in(rng, float(qy - 1), float(cell_y)) if dy < 0 else _frac_in(rng, float(cell_y), float(qy))
        squares.append(UnitSquare(k, ax, ay))
    return Point(qx, qy, 0), squares


def _anchor_near(rng, v):
    """Anchor a in (v-1, v) with fractional part in (0.15, 0.85); v has fractional part in that range too."""
    import math

    base = math.floor(v)
    f = float(v - base)
    options = []
    if f > 0.17:
        options.append((base + 0.15, float(v) - 0.01))
    if f < 0.83:
        options.append((float(v) - 1 + 0.01, base - 1 + 0.85))
    lo, hi = rng.choice(options)
    return _frac_in(rng, lo, hi)


def block_family(seed):
    """Random instance on a 3x3 block of cells whose centre holds a diagonal quadruple.

    Every anchor and point has fractional part in (0.15, 0.85) so the chosen grid is
    aligned with the integers; retried until general position holds.
    """
    from plycover.geom import Point, UnitSquare, check_general_position

    rng = random.Random(seed)
    while True:
        q, quad = diagonal_quadruple(rng, 1, 1)
        frac = lambda v: v - (v.numerator // v.denominator)
        if not all(0.15 < frac(s.ax) < 0.85 and 0.15 < frac(s.ay) < 0.85 for s in quad):
            continue
        U = list(quad)
        pts = []

        def add_point(x, y):
            pts.append(Point(x, y, len(pts)))

        for s, (cx, cy) in zip(quad, [(0, 2), (2, 2), (2, 0), (0, 0)]):
            lo_x, hi_x = max(s.ax, cx + 0.15), min(s.ax + 1, cx + 0.85)
            lo_y, hi_y = max(s.ay, cy + 0.15), min(s.ay + 1, cy + 0.85)
            if hi_x - lo_x > 0.01 and hi_y - lo_y > 0.01 and rng.random() < 0.8:
                add_point(_frac_in(rng, float(lo_x), float(hi_x)), _frac_in(rng, float(lo_y), float(hi_y)))
        n_owned = len(pts)
        for cx in range(3):
            for cy in range(3):
                extra = rng.randint(0, 1) if (cx, cy) in ((0, 0), (0, 2), (2, 0), (2, 2)) else rng.randint(1, 2)
                for _ in range(extra):
                    add_point(cx + _frac_in(rng, 0.15, 0.85), cy + _frac_in(rng, 0.15, 0.85))
        for p in pts[n_owned:]:
            if rng.random() < 0.5 or not any(s.ax <= p.x <= s.ax + 1 and s.ay <= p.y <= s.ay + 1 for s in U):
                U.append(UnitSquare(len(U), _anchor_near(rng, p.x), _anchor_near(rng, p.y)))
        if check_general_position(U, pts).ok:
            return pts, U
