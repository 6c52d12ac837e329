from fractions import Fraction as F
import json
import re

import pytest
from hypothesis import given, strategies as st

from plycover import io
from plycover.cell import classify_by_corner, squares_meeting
from plycover.errors import InstanceParseError
from plycover.generate import FAMILIES, generate
from plycover.geom import Point, Rect, UnitSquare, check_general_position, make_cover, sq_contains
from plycover.svg import render_svg

from helpers import covers_all


class TestGenerate:
    @given(st.integers(0, 10**6), st.sampled_from(FAMILIES), st.integers(0, 25), st.integers(0, 15), st.integers(1, 5))
    def test_general_position_and_coverage(self, seed, family, n, m, width):
        pts, U, meta = generate(n, m, seed=seed, width=width, family=family)
        assert len(pts) == n
        assert check_general_position(U, pts).ok
        assert covers_all(pts, U)
        assert meta["generator"] == family and meta["seed"] == seed

    def test_zero_points(self):
        pts, U, _ = generate(0, 5, seed=3)
        assert pts == [] and len(U) == 5

    def test_deterministic(self):
        assert generate(12, 9, seed=42, family="clustered") == generate(12, 9, seed=42, family="clustered")

    @pytest.mark.parametrize("corner", [1, 2, 3, 4])
    def test_corner_stack_single_corner(self, corner):
        pts, U, meta = generate(10, 6, seed=corner, family="corner-stack", corners=(corner,))
        x0, y0 = (F(v) for v in meta["cell"])
        cell = Rect(x0, x0 + 1, y0, y0 + 1)
        inst = classify_by_corner(cell, squares_meeting(cell, U), pts)
        assert inst.nonempty_classes() == (corner,)
        assert all(cell.contains_open(p) for p in pts)

    def test_unknown_family(self):
        with pytest.raises(ValueError):
            generate(1, 1, family="spiral")


class TestInstanceIO:
    @given(st.integers(0, 10**6), st.sampled_from(FAMILIES))
    def test_round_trip(self, seed, family):
        pts, U, meta = generate(6, 5, seed=seed, family=family)
        text = io.dumps(io.instance_to_dict(pts, U, meta))
        back = io.instance_from_dict(json.loads(text))
        assert back == (pts, U, meta)

    def test_accepts_integers_and_decimal_strings(self):
        pts, U, _ = io.instance_from_dict({"points": [["0.5", 1]], "squares": [[0, "1/3"]]})
        assert pts[0] == Point(F(1, 2), F(1), 0) and U[0] == UnitSquare(0, F(0), F(1, 3))

    @pytest.mark.parametrize(
        "doc",
        [[], {"points": []}, {"points": [[0.5, 1]], "squares": []}, {"points": [["a", "1"]], "squares": []},
         {"points": [["1"]], "squares": []}, {"points": [], "squares": [], "meta": 3}],
    )
    def test_rejects_malformed(self, doc):
        with pytest.raises(InstanceParseError):
            io.instance_from_dict(doc)

    def test_bad_file(self, tmp_path):
        p = tmp_path / "x.json"
        p.write_text("{nope")
        with pytest.raises(InstanceParseError):
            io.load_instance(p)
        with pytest.raises(InstanceParseError):
            io.load_instance(tmp_path / "missing.json")

    def test_solution_round_trip(self, tmp_path):
        cov = make_cover([UnitSquare(0, 0, 0), UnitSquare(3, F(1, 2), F(1, 2))])
        doc = io.solution_to_dict(cov, "approx", False, {(0, -1): (0, 3)}, {"epsilon": "1"})
        path = tmp_path / "s.json"
        path.write_text(io.dumps(doc))
        back = io.load_solution(path)
        assert back["cover"] == [0, 3] and back["ply"] == 2 and back["per_cell"] == {"0,-1": [0, 3]}
        assert back["witness"] == ["1/2", "1/2"]

    def test_solution_validation(self, tmp_path):
        path = tmp_path / "s.json"
        path.write_text(json.dumps({"cover": ["a"], "ply": 1}))
        with pytest.raises(InstanceParseError):
            io.load_solution(path)


class TestSvg:
    def test_counts_and_witness(self):
        pts, U, _ = generate(7, 5, seed=9, width=2)
        cov = make_cover(U[:3])
        text = render_svg(pts, U, cov, (F(1, 2), F(1, 2)))
        assert len(re.findall(r'<rect class="square', text)) == len(U)
        assert len(re.findall(r'class="square cover"', text)) == 3
        assert len(re.findall(r'<circle class="point"', text)) == len(pts)
        m = re.search(r'<g class="witness" data-x="([^"]+)" data-y="([^"]+)" data-ply="(\d+)"', text)
        w = Point(F(m.group(1)), F(m.group(2)))
        assert int(m.group(3)) == cov.ply == sum(sq_contains(s, w) for s in U[:3])

    def test_exact_attributes(self):
        text = render_svg([Point(F(1, 3), F(2, 3), 0)], [UnitSquare(0, F(-1, 7), F(0))])
        assert 'data-ax="-1/7"' in text and 'data-x="1/3"' in text

    def test_empty_scene(self):
        assert render_svg([], []).startswith("<svg")
