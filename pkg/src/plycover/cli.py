"""Command-line interface: ``plycover {solve,exact,verify,gen,bench}``."""

from __future__ import annotations

import argparse
import sys
from fractions import Fraction
from pathlib import Path
from typing import Optional, Sequence

from . import bench, io, svg
from .assembler import solve
from .errors import (
    GeneralPositionViolation,
    InstanceParseError,
    UncoveredPoint,
    UniverseTooLarge,
)
from .generate import FAMILIES, generate
from .geom import UnitSquare, as_coord, make_cover, require_general_position, sq_contains
from .oracle import DEFAULT_MAX_UNIVERSE, exact_min_ply_cover

EXIT_OK = 0
EXIT_VERIFY = 1
EXIT_UNCOVERED = 2
EXIT_GENERAL_POSITION = 3
EXIT_PARSE = 4
EXIT_TOO_LARGE = 5


def _rational(text: str) -> Fraction:
    try:
        v = as_coord(text)
    except (TypeError, ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None
    if v <= 0:
        raise argparse.ArgumentTypeError("epsilon must be positive")
    return v


def _emit(text: str, dest: Optional[str]) -> None:
    if dest and dest != "-":
        Path(dest).write_text(text)
    else:
        sys.stdout.write(text)


def _cmd_solve(args) -> int:
    P, U, _ = io.load_instance(args.instance)
    sol = solve(P, U, args.epsilon, path=args.path)
    extra = {"epsilon": str(sol.epsilon), "lower_bound": sol.lower_bound}
    doc = io.solution_to_dict(sol.cover, sol.path, sol.bound_certified, sol.per_cell, extra)
    _emit(io.dumps(doc), args.json)
    if args.svg:
        Path(args.svg).write_text(svg.render_svg(P, U, sol.cover, sol.offset))
    return EXIT_OK


def _cmd_exact(args) -> int:
    P, U, _ = io.load_instance(args.instance)
    require_general_position(U, P)
    res = exact_min_ply_cover(P, U, max_universe=args.cap)
    doc = io.solution_to_dict(res.cover, "exact_small_k", True, {}, {"explored": res.explored})
    _emit(io.dumps(doc), args.json)
    if args.svg:
        Path(args.svg).write_text(svg.render_svg(P, U, res.cover))
    return EXIT_OK


def _cmd_verify(args) -> int:
    P, U, _ = io.load_instance(args.instance)
    doc = io.load_solution(args.solution)
    by_id = {s.id: s for s in U}
    report: dict = {"checks": {}, "ok": True}

    def fail(name: str, reason: str):
        report["checks"][name] = reason
        report["ok"] = False

    unknown = [i for i in doc["cover"] if i not in by_id]
    chosen: list[UnitSquare] = [by_id[i] for i in doc["cover"] if i in by_id]
    if unknown:
        fail("ids", f"unknown square ids {unknown}")
    else:
        report["checks"]["ids"] = "ok"
    missing = [p.id for p in P if not any(sq_contains(s, p) for s in chosen)]
    if missing:
        fail("coverage", f"uncovered point {missing[0]}")
    else:
        report["checks"]["coverage"] = "ok"
    cov = make_cover(chosen)
    report["ply"] = cov.ply
    if cov.ply != doc["ply"]:
        fail("ply", f"reported ply {doc['ply']} but recomputed {cov.ply}")
    else:
        report["checks"]["ply"] = "ok"
    if len(U) <= args.cap and not missing:
        k = exact_min_ply_cover(P, U, max_universe=args.cap).optimal_ply
        report["k_star"] = k
        report["ratio"] = f"{Fraction(cov.ply, k) if k else 0}"
        report["ratio_bound"] = f"{8 + Fraction(32, k)}" if k else None
        if cov.ply > 8 * k + 32:
            fail("bound", f"ply {cov.ply} exceeds 8k*+32 = {8 * k + 32}")
        else:
            report["checks"]["bound"] = "ok"
    sys.stdout.write(io.dumps(report))
    if not report["ok"]:
        reasons = [v for v in report["checks"].values() if v != "ok"]
        print("verify failed: " + "; ".join(reasons), file=sys.stderr)
        return EXIT_VERIFY
    return EXIT_OK


def _cmd_gen(args) -> int:
    corners = tuple(int(c) for c in args.corners)
    if any(c not in (1, 2, 3, 4) for c in corners) or not corners:
        raise InstanceParseError("--corners takes digits from 1-4")
    P, U, meta = generate(args.points, args.squares, args.seed, args.width, args.family, corners)
    _emit(io.dumps(io.instance_to_dict(P, U, meta)), args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    families = [f for f in (s.strip() for s in args.families.split(",")) if f]
    for f in families:
        if f not in FAMILIES:
            raise InstanceParseError(f"unknown family {f!r}")
    records = bench.rows(families, bench.parse_sizes(args.sizes), args.seeds, args.width, args.epsilon)
    _emit(bench.to_csv(records), args.csv)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="plycover", description="Low-ply covers of points by unit squares.")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("solve", help="approximate minimum ply cover")
    s.add_argument("instance")
    s.add_argument("--epsilon", type=_rational, default=Fraction(1))
    s.add_argument("--json", help="solution output path (default stdout)")
    s.add_argument("--svg", help="write an SVG scene here")
    s.add_argument("--path", choices=("auto", "approx", "exact"), default="auto")
    s.set_defaults(func=_cmd_solve)

    e = sub.add_parser("exact", help="exact minimum ply cover of a small instance")
    e.add_argument("instance")
    e.add_argument("--json")
    e.add_argument("--svg")
    e.add_argument("--cap", type=int, default=DEFAULT_MAX_UNIVERSE, help="largest universe searched")
    e.set_defaults(func=_cmd_exact)

    v = sub.add_parser("verify", help="check a solution against its instance")
    v.add_argument("instance")
    v.add_argument("solution")
    v.add_argument("--cap", type=int, default=DEFAULT_MAX_UNIVERSE)
    v.set_defaults(func=_cmd_verify)

    g = sub.add_parser("gen", help="generate a random instance")
    g.add_argument("--points", type=int, default=10)
    g.add_argument("--squares", type=int, default=8)
    g.add_argument("--seed", type=int, default=0)
    g.add_argument("--width", type=int, default=4)
    g.add_argument("--family", choices=FAMILIES, default="uniform")
    g.add_argument("--corners", default="1234", help="corner classes used by corner-stack, e.g. 2 or 24")
    g.add_argument("--out", help="output path (default stdout)")
    g.set_defaults(func=_cmd_gen)

    b = sub.add_parser("bench", help="solver against oracle on generated instances")
    b.add_argument("--families", default="uniform")
    b.add_argument("--sizes", default="10x8")
    b.add_argument("--seeds", type=int, default=3)
    b.add_argument("--width", type=int, default=4)
    b.add_argument("--epsilon", type=_rational, default=Fraction(1))
    b.add_argument("--csv", help="output path (default stdout)")
    b.set_defaults(func=_cmd_bench)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.command == "gen" and (args.points < 0 or args.squares < 0):
        parser.error("--points and --squares must be non-negative")
    try:
        return args.func(args)
    except UncoveredPoint as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_UNCOVERED
    except GeneralPositionViolation as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_GENERAL_POSITION
    except InstanceParseError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except UniverseTooLarge as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_TOO_LARGE


if __name__ == "__main__":
    sys.exit(main())
