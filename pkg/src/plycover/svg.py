"""SVG scenes of an instance and its cover.

One unit is 100 px with the origin at the bottom-left of the scene.  Every
square and point element carries its exact coordinates in ``data-*``
attributes so a scene can be re-checked without float round-off.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Optional
from xml.sax.saxutils import quoteattr

from .geom import Cover, Point, UnitSquare, coord_str

SCALE = 100
MARGIN = Fraction(1, 4)


def _num(v: Fraction) -> str:
    return f"{float(v) * SCALE:.3f}"


def render_svg(
    points: Iterable[Point],
    squares: Iterable[UnitSquare],
    cover: Optional[Cover] = None,
    grid_offset: Optional[tuple[Fraction, Fraction]] = None,
) -> str:
    points = sorted(points, key=lambda p: p.id)
    squares = sorted(squares, key=lambda s: s.id)
    chosen = set(cover.square_ids) if cover else set()
    xs = [p.x for p in points] + [s.ax for s in squares] + [s.ax + 1 for s in squares] or [Fraction(0), Fraction(1)]
    ys = [p.y for p in points] + [s.ay for s in squares] + [s.ay + 1 for s in squares] or [Fraction(0), Fraction(1)]
    x0, x1 = min(xs) - MARGIN, max(xs) + MARGIN
    y0, y1 = min(ys) - MARGIN, max(ys) + MARGIN

    def X(v):
        return _num(v - x0)

    def Y(v):
        return _num(y1 - v)

    out = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{_num(x1 - x0)}" height="{_num(y1 - y0)}" '
        f'viewBox="0 0 {_num(x1 - x0)} {_num(y1 - y0)}">',
        '<rect class="background" x="0" y="0" width="100%" height="100%" fill="white"/>',
    ]
    if grid_offset is not None:
        ox, oy = grid_offset
        out.append('<g class="grid" stroke="#dddddd" stroke-width="1">')
        for i in range(math.floor(x0 - ox), math.ceil(x1 - ox) + 1):
            gx = ox + i
            if x0 <= gx <= x1:
                out.append(f'<line x1="{X(gx)}" y1="0" x2="{X(gx)}" y2="{_num(y1 - y0)}"/>')
        for j in range(math.floor(y0 - oy), math.ceil(y1 - oy) + 1):
            gy = oy + j
            if y0 <= gy <= y1:
                out.append(f'<line x1="0" y1="{Y(gy)}" x2="{_num(x1 - x0)}" y2="{Y(gy)}"/>')
        out.append("</g>")
    for s in squares:
        sel = s.id in chosen
        style = 'fill="#1f77b4" fill-opacity="0.15" stroke="#1f77b4" stroke-width="3"' if sel else (
            'fill="none" stroke="#999999" stroke-width="1" stroke-dasharray="4 3"'
        )
        out.append(
            f'<rect class="square{" cover" if sel else ""}" data-id="{s.id}" '
            f"data-ax={quoteattr(coord_str(s.ax))} data-ay={quoteattr(coord_str(s.ay))} "
            f'x="{X(s.ax)}" y="{Y(s.ay + 1)}" width="{SCALE}" height="{SCALE}" {style}/>'
        )
    for p in points:
        out.append(
            f'<circle class="point" data-id="{p.id}" data-x={quoteattr(coord_str(p.x))} '
            f'data-y={quoteattr(coord_str(p.y))} cx="{X(p.x)}" cy="{Y(p.y)}" r="3" fill="#d62728"/>'
        )
    if cover is not None and cover.witness is not None:
        w = cover.witness
        cx, cy = float(X(w.x)), float(Y(w.y))
        out.append(
            f'<g class="witness" data-x={quoteattr(coord_str(w.x))} data-y={quoteattr(coord_str(w.y))} '
            f'data-ply="{cover.ply}" stroke="black" stroke-width="2">'
        )
        out.append(f'<line x1="{cx - 6:.3f}" y1="{cy - 6:.3f}" x2="{cx + 6:.3f}" y2="{cy + 6:.3f}"/>')
        out.append(f'<line x1="{cx - 6:.3f}" y1="{cy + 6:.3f}" x2="{cx + 6:.3f}" y2="{cy - 6:.3f}"/>')
        out.append("</g>")
    out.append("</svg>")
    return "\n".join(out) + "\n"
