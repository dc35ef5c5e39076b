"""Serialization: rationals as "p/q" strings, grounds and lattices as JSON,
Hasse diagrams as DOT, and planar point configurations as SVG.

All emitters sort keys and sequences so identical inputs give byte-identical
artifacts.  SVG coordinates are fixed-point decimal strings computed with
integer arithmetic only.
"""

from __future__ import annotations

import json
from fractions import Fraction
from typing import Optional, Sequence

from .closure import FiniteGround
from .errors import InputError
from .geometry import Point, Segment, VPolytope
from .intervals import Interval
from .lattice import FiniteLattice
from .segments import SegmentUnionGround, SubsegmentSet

SCHEMA_VERSION = 1


def rat_to_str(x: Fraction) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def str_to_rat(s: str) -> Fraction:
    return Fraction(s)


def point_to_json(p: Point) -> list[str]:
    return [rat_to_str(c) for c in p]


def point_from_json(arr: Sequence[str]) -> Point:
    return tuple(str_to_rat(c) for c in arr)


# ---------------------------------------------------------------------------
# grounds


def ground_to_json(g: FiniteGround) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "finite-ground",
        "dim": g.dim,
        "points": [point_to_json(p) for p in g.points],
    }


def ground_from_json(data: dict) -> FiniteGround:
    if data.get("type") != "finite-ground":
        raise InputError("expected a finite-ground document")
    return FiniteGround([point_from_json(p) for p in data["points"]])


def segment_ground_to_json(g: SegmentUnionGround) -> dict:
    return {
        "schema_version": SCHEMA_VERSION,
        "type": "segment-ground",
        "dim": g.dim,
        "segments": [
            {"a": point_to_json(s.a), "b": point_to_json(s.b),
             "a_closed": s.a_closed, "b_closed": s.b_closed}
            for s in g.segments
        ],
    }


def segment_ground_from_json(data: dict) -> SegmentUnionGround:
    if data.get("type") != "segment-ground":
        raise InputError("expected a segment-ground document")
    segs = []
    for s in data["segments"]:
        segs.append(Segment(point_from_json(s["a"]), point_from_json(s["b"]),
                            bool(s.get("a_closed", True)), bool(s.get("b_closed", True))))
    return SegmentUnionGround(segs)


def polytope_from_json(data: dict) -> VPolytope:
    if data.get("type") != "polytope":
        raise InputError("expected a polytope document")
    return VPolytope([point_from_json(p) for p in data["vertices"]])


def subsegment_set_to_json(s: SubsegmentSet) -> list[dict]:
    out = []
    for carrier, ivs in enumerate(s.pieces):
        for iv in ivs:
            out.append({
                "carrier_index": carrier,
                "t_lo": rat_to_str(iv.lo), "t_hi": rat_to_str(iv.hi),
                "lo_closed": iv.lo_closed, "hi_closed": iv.hi_closed,
            })
    return out


def subsegment_set_from_json(ground: SegmentUnionGround, arr: Sequence[dict]) -> SubsegmentSet:
    pieces: list[list[Interval]] = [[] for _ in range(ground.k)]
    for rec in arr:
        idx = int(rec["carrier_index"])
        if not 0 <= idx < ground.k:
            raise InputError(f"carrier index {idx} outside ground")
        pieces[idx].append(Interval(str_to_rat(rec["t_lo"]), str_to_rat(rec["t_hi"]),
                                    bool(rec.get("lo_closed", True)),
                                    bool(rec.get("hi_closed", True))))
    return SubsegmentSet(ground, pieces)


def closure_table_from_json(data: dict):
    from .analysis import ClosureTable

    if data.get("type") != "closure-table":
        raise InputError("expected a closure-table document")
    n = int(data["n"])
    table = {int(k): int(v) for k, v in data["closure"].items()}
    return ClosureTable(n, table)


# ---------------------------------------------------------------------------
# lattices


def _element_to_json(label) -> object:
    if isinstance(label, int):
        return sorted(i for i in range(label.bit_length()) if label >> i & 1)
    if isinstance(label, frozenset):
        return sorted(label)
    return label


def lattice_to_json(lat: FiniteLattice, include_tables: bool = False) -> dict:
    out = {
        "schema_version": SCHEMA_VERSION,
        "type": "lattice",
        "size": lat.n,
        "elements": [_element_to_json(lab) for lab in lat.labels],
        "covers": sorted(lat.cover_pairs()),
        "atoms": sorted(lat.atoms()),
        "join_irreducibles": sorted(lat.join_irreducibles()),
    }
    if include_tables:
        out["join_table"] = lat.join_table.tolist()
        out["meet_table"] = lat.meet_table.tolist()
    return out


def lattice_from_json(data: dict) -> FiniteLattice:
    if data.get("type") != "lattice":
        raise InputError("expected a lattice document")
    labels = [tuple(e) if isinstance(e, list) else e for e in data["elements"]]
    covers = [(labels[i], labels[j]) for i, j in data["covers"]]
    return FiniteLattice.from_cover_pairs(labels, covers)


def lattice_to_dot(lat: FiniteLattice, name: str = "lattice") -> str:
    lines = [f"digraph {name} {{", "  rankdir=BT;", "  node [shape=box];"]
    for i, lab in enumerate(lat.labels):
        text = _element_to_json(lab)
        lines.append(f'  e{i} [label="{text}"];')
    for i, j in sorted(lat.cover_pairs()):
        lines.append(f"  e{i} -> e{j};")
    lines.append("}")
    return "\n".join(lines) + "\n"


# ---------------------------------------------------------------------------
# SVG (planar configurations)


def _fixed_decimal(x: Fraction, digits: int = 3) -> str:
    scale = 10 ** digits
    num = x.numerator * scale
    q, r = divmod(num, x.denominator)
    if r * 2 >= x.denominator:
        q += 1
    sign = "-" if q < 0 else ""
    q = abs(q)
    whole, frac = divmod(q, scale)
    return f"{sign}{whole}.{frac:0{digits}d}"


def points_svg(points: Sequence[Point], labels: Optional[Sequence] = None,
               size: int = 400) -> str:
    if any(len(p) != 2 for p in points):
        raise InputError("SVG rendering supports planar points only")
    xs = [p[0] for p in points]
    ys = [p[1] for p in points]
    lo_x, hi_x = min(xs), max(xs)
    lo_y, hi_y = min(ys), max(ys)
    span = max(hi_x - lo_x, hi_y - lo_y, Fraction(1))
    pad = span / 10

    def sx(v: Fraction) -> str:
        return _fixed_decimal((v - lo_x + pad) / (span + 2 * pad) * size)

    def sy(v: Fraction) -> str:
        return _fixed_decimal(size - (v - lo_y + pad) / (span + 2 * pad) * size)

    parts = [f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
             f'viewBox="0 0 {size} {size}">']
    for i, p in enumerate(points):
        cx, cy = sx(p[0]), sy(p[1])
        parts.append(f'<circle cx="{cx}" cy="{cy}" r="4" fill="black"/>')
        if labels is not None:
            parts.append(f'<text x="{cx}" y="{cy}" dx="6" dy="-6" '
                         f'font-size="12">{labels[i]}</text>')
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def dumps(data: dict) -> str:
    return json.dumps(data, indent=2, sort_keys=True) + "\n"
