"""JSON wire formats for instances and solutions; coordinates travel as exact strings."""

from __future__ import annotations

import json
from pathlib import Path
from typing import Any, Optional, Union

from .errors import InstanceParseError
from .geom import Cover, Point, UnitSquare, as_coord, coord_str

PathLike = Union[str, Path]


def _pair(raw, what: str, idx: int):
    if not isinstance(raw, (list, tuple)) or len(raw) != 2:
        raise InstanceParseError(f"{what} {idx}: expected a pair of coordinates, got {raw!r}")
    try:
        if any(isinstance(v, float) for v in raw):
            raise TypeError("binary floats are not exact")
        return as_coord(raw[0]), as_coord(raw[1])
    except (TypeError, ValueError, ZeroDivisionError) as exc:
        raise InstanceParseError(f"{what} {idx}: {exc}") from None


def instance_from_dict(doc: Any) -> tuple[list[Point], list[UnitSquare], dict]:
    if not isinstance(doc, dict):
        raise InstanceParseError("instance must be a JSON object")
    try:
        raw_p, raw_s = doc["points"], doc["squares"]
    except KeyError as exc:
        raise InstanceParseError(f"missing key {exc.args[0]!r}") from None
    if not isinstance(raw_p, list) or not isinstance(raw_s, list):
        raise InstanceParseError("points and squares must be lists")
    points = [Point(*_pair(r, "point", i), i) for i, r in enumerate(raw_p)]
    squares = [UnitSquare(i, *_pair(r, "square", i)) for i, r in enumerate(raw_s)]
    meta = doc.get("meta", {})
    if not isinstance(meta, dict):
        raise InstanceParseError("meta must be an object")
    return points, squares, meta


def instance_to_dict(points, squares, meta: Optional[dict] = None) -> dict:
    points = sorted(points, key=lambda p: p.id)
    squares = sorted(squares, key=lambda s: s.id)
    return {
        "points": [[coord_str(p.x), coord_str(p.y)] for p in points],
        "squares": [[coord_str(s.ax), coord_str(s.ay)] for s in squares],
        "meta": dict(meta or {}),
    }


def dumps(doc: dict) -> str:
    return json.dumps(doc, indent=2, sort_keys=True) + "\n"


def load_instance(path: PathLike):
    try:
        text = Path(path).read_text()
    except OSError as exc:
        raise InstanceParseError(f"cannot read {path}: {exc.strerror}") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"{path}: invalid JSON ({exc.msg} at line {exc.lineno})") from None
    return instance_from_dict(doc)


def save_instance(path: PathLike, points, squares, meta=None) -> None:
    Path(path).write_text(dumps(instance_to_dict(points, squares, meta)))


def solution_to_dict(cover: Cover, path: str, bound_certified: bool, per_cell=None, extra=None) -> dict:
    doc = {
        "cover": list(cover.square_ids),
        "ply": cover.ply,
        "witness": None if cover.witness is None else [coord_str(cover.witness.x), coord_str(cover.witness.y)],
        "path": path,
        "bound_certified": bool(bound_certified),
        "per_cell": {f"{i},{j}": list(ids) for (i, j), ids in sorted((per_cell or {}).items())},
    }
    if extra:
        doc.update(extra)
    return doc


def load_solution(path: PathLike) -> dict:
    try:
        doc = json.loads(Path(path).read_text())
    except OSError as exc:
        raise InstanceParseError(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InstanceParseError(f"{path}: invalid JSON ({exc.msg})") from None
    if not isinstance(doc, dict) or not isinstance(doc.get("cover"), list):
        raise InstanceParseError("solution must be an object with a 'cover' list")
    if not all(isinstance(i, int) and not isinstance(i, bool) for i in doc["cover"]):
        raise InstanceParseError("cover ids must be integers")
    if not isinstance(doc.get("ply"), int):
        raise InstanceParseError("solution needs an integer 'ply'")
    return doc
