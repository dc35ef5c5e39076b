"""The acceptance suite: nine property/construction checks, all exact.

Each criterion returns (ok, detail).  They are invoked both by the pytest
gate (tests/test_acceptance.py) and by the `verify-paper` CLI command, which
prints one line per criterion.  Seeds are fixed so every run checks the same
instances.
"""

from __future__ import annotations

import itertools
import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from .analysis import (
    check_anti_exchange,
    check_distributive,
    check_jsd,
    check_lower_bounded,
    d_relation,
)
from .boolsub import full_mask, verify_claim_join
from .closure import FiniteGround
from .embedding import build_embedding
from .geometry import (
    Point,
    Segment,
    VPolytope,
    affine_coordinates,
    affinely_independent,
    caratheodory_member,
    hull_member,
    qp,
    standard_simplex,
)
from .intervals import Interval
from .segments import (
    SegmentUnionGround,
    SubsegmentSet,
    check_condition_disjoint,
    check_condition_faces,
    face_hom_check,
    face_restriction_check,
    sdv_spot_check,
    seg_join,
    seg_meet,
)


@dataclass
class CriterionResult:
    name: str
    ok: bool
    detail: str
    elapsed: float


def _random_ground(rng: random.Random, size: int, dim: int, span: int = 6) -> FiniteGround:
    pts = set()
    while len(pts) < size:
        pts.add(tuple(Fraction(rng.randint(-span, span), rng.randint(1, 3))
                      for _ in range(dim)))
    return FiniteGround(sorted(pts))


def criterion_1_convex_geometry_suite() -> tuple[bool, str]:
    """Anti-exchange and join-semidistributivity on seeded random grounds."""
    rng = random.Random(101)
    cases = [(2, rng.randint(4, 8)) for _ in range(200)]
    cases += [(3, rng.randint(4, 6)) for _ in range(50)]
    for idx, (dim, size) in enumerate(cases):
        g = _random_ground(rng, size, dim)
        ok, w = check_anti_exchange(g)
        if not ok:
            return False, f"anti-exchange failed on instance {idx}: {w.to_json()}"
        ok, w = check_jsd(g.lattice())
        if not ok:
            return False, f"semidistributivity failed on instance {idx}: {w.to_json()}"
    return True, f"{len(cases)} grounds checked (200 planar, 50 spatial)"


def criterion_2_collinear_not_lower_bounded() -> tuple[bool, str]:
    """Four collinear points: a join-dependency cycle must exist."""
    g = FiniteGround([qp(0), qp(1), qp(2), qp(3)])
    lat = g.lattice()
    ok, w = check_lower_bounded(lat)
    if ok:
        return False, "no dependency cycle found on four collinear points"
    cycle = w.elements
    if cycle[0] != cycle[-1] or len(cycle) < 3:
        return False, f"malformed cycle witness {cycle}"
    graph = d_relation(lat)
    for a, b in zip(cycle, cycle[1:]):
        if b not in graph[a]:
            return False, f"cycle edge {a}->{b} does not re-validate"
    return True, f"cycle of length {len(cycle) - 1} re-validated"


def _convex_polygon(k: int) -> list[Point]:
    zoo = {
        3: [(0, 0), (4, 0), (0, 4)],
        4: [(0, 0), (4, 0), (4, 4), (0, 4)],
        5: [(0, 0), (4, 0), (6, 3), (2, 6), (-2, 3)],
        6: [(0, 0), (4, 0), (6, 3), (4, 6), (0, 6), (-2, 3)],
    }
    return [qp(*p) for p in zoo[k]]


def criterion_3_convex_position_boolean() -> tuple[bool, str]:
    """Vertices of a convex k-gon: Boolean lattice, distributive."""
    for k in range(3, 7):
        pts = _convex_polygon(k)
        g = FiniteGround(pts)
        lat = g.lattice()
        if lat.n != 1 << k:
            return False, f"{k}-gon produced {lat.n} closed sets, expected {1 << k}"
        ok, w = check_distributive(lat)
        if not ok:
            return False, f"{k}-gon lattice not distributive: {w.to_json()}"
    return True, "k = 3..6 all Boolean and distributive"


def criterion_4_join_claim() -> tuple[bool, str]:
    """The hull-of-two-pieces identity for every subset pair, n = 2 and 3."""
    checked = 0
    for n in (2, 3):
        simplex = standard_simplex(n)
        full = full_mask(n)
        for a in range(full + 1):
            for b in range(a, full + 1):
                ok, detail = verify_claim_join(a, b, simplex)
                if not ok:
                    return False, f"pair (n={n}, a={a}, b={b}) failed: {detail}"
                checked += 1
    return True, f"{checked} subset pairs verified"


def criterion_5_embedding() -> tuple[bool, str]:
    """Ground-set sizes, lemma certificates, verified embedding, and lower
    boundedness of the target, for n = 1 and n = 2."""
    clauses = []
    for n, expected_size in ((1, 3), (2, 10)):
        w = build_embedding(n)
        clauses.append((f"ground size n={n}", w.report["ground_size"] == expected_size,
                        f"|X| = {w.report['ground_size']}"))
        clauses.append((f"lemmas n={n}", w.report["lemmas_ok"],
                        str(w.report["lemma_summary"])))
        clauses.append((f"embedding n={n}", w.report["embedding_verified"],
                        f"{w.report['source_size']} -> {w.report['target_size']}"))
        clauses.append((f"lower-bounded target n={n}", w.report["lower_bounded"],
                        "defect: " + (str(w.defect.to_json()) if w.defect else "none")))
    bad = [c for c in clauses if not c[1]]
    if bad:
        msgs = "; ".join(f"{name} FAILED ({info})" for name, _, info in bad)
        return False, msgs
    return True, "all embedding clauses hold for n = 1, 2"


def _pm_ground() -> SegmentUnionGround:
    return SegmentUnionGround([
        Segment(qp(-1, 0), qp(1, 0)),
        Segment(qp("-1/4", "1/2"), qp(0, 2)),
        Segment(qp("1/4", "1/2"), qp(0, 2)),
    ])


def _pm_triple(g: SegmentUnionGround):
    one = Fraction(1)
    a = SubsegmentSet(g, [[Interval(Fraction(0), one)], [], []])
    b = SubsegmentSet(g, [[], [Interval(Fraction(0), one, False, False)], []])
    c = SubsegmentSet(g, [[], [], [Interval(Fraction(0), one, False, False)]])
    return a, b, c


def criterion_6_pm_violation() -> tuple[bool, str]:
    """The two cevians over a base segment defeat join-semidistributivity."""
    g = _pm_ground()
    a, b, c = _pm_triple(g)
    ab, ac = seg_join(a, b), seg_join(a, c)
    expected = SubsegmentSet(g, [
        [Interval(Fraction(0), Fraction(1))],
        [Interval(Fraction(0), Fraction(1), True, False)],
        [Interval(Fraction(0), Fraction(1), True, False)],
    ])
    if ab != expected or ac != expected:
        return False, "joins do not equal the ground minus the apex"
    if seg_join(a, seg_meet(b, c)) != a:
        return False, "join with the met cevians is not the base segment"
    ok, _ = sdv_spot_check(g, triples=[(a, b, c)])
    if ok:
        return False, "spot check missed the violation"
    return True, "A∨B = A∨C = X minus apex, A∨(B∧C) = A"


def criterion_7_condition_checkers() -> tuple[bool, str]:
    g = _pm_ground()
    tri = VPolytope([qp(-1, 0), qp(1, 0), qp(0, 2)])
    ok_i, pair = check_condition_disjoint(g)
    if ok_i or pair != (1, 2):
        return False, f"disjointness check on the cevian ground: {ok_i}, {pair}"
    ok_ii, bad = check_condition_faces(g, tri)
    if ok_ii or bad not in (1, 2):
        return False, f"face condition on the cevian ground: {ok_ii}, {bad}"
    disjoint = SegmentUnionGround([
        Segment(qp(0, 0), qp(1, 0)), Segment(qp(0, 2), qp(1, 2))])
    if not check_condition_disjoint(disjoint)[0]:
        return False, "disjoint fixture rejected"
    edges = SegmentUnionGround([
        Segment(qp(-1, 0), qp(1, 0)), Segment(qp(-1, 0), qp(0, 2)),
        Segment(qp(1, 0), qp(0, 2))])
    if not check_condition_faces(edges, tri)[0]:
        return False, "triangle-edge fixture rejected"
    return True, "both conditions behave on all three fixtures"


def criterion_8_face_restriction_suite() -> tuple[bool, str]:
    rng = random.Random(808)
    zoo = [
        VPolytope([qp(0, 0), qp(4, 0), qp(0, 4)]),
        VPolytope([qp(0, 0), qp(4, 0), qp(4, 4), qp(0, 4)]),
        VPolytope([qp(0, 0, 0), qp(3, 0, 0), qp(0, 3, 0), qp(0, 0, 3)]),
    ]
    checked = 0
    for idx in range(100):
        poly = zoo[rng.randrange(len(zoo))]
        proper = [f for f in poly.faces() if f.is_proper and len(f.indices) >= 2]
        face = proper[rng.randrange(len(proper))]
        if idx % 7 == 0:
            dim = poly.dim_ambient
            verts = poly.vertices
            def rand_pt():
                w = [Fraction(rng.randint(0, 3)) for _ in verts]
                tot = sum(w) or Fraction(1)
                return tuple(sum(wi * v[k] for wi, v in zip(w, verts)) / tot
                             for k in range(dim))
            segs = []
            while len(segs) < 2:
                p1, p2 = rand_pt(), rand_pt()
                if p1 != p2:
                    segs.append(Segment(p1, p2))
            ground = SegmentUnionGround(segs)
            y = SubsegmentSet(ground, [
                [Interval(Fraction(0), Fraction(1, 2))],
                [Interval(Fraction(1, 4), Fraction(1), False, True)],
            ])
        else:
            dim = poly.dim_ambient
            verts = poly.vertices
            y = []
            for _ in range(rng.randint(1, 6)):
                w = [Fraction(rng.randint(0, 3)) for _ in verts]
                tot = sum(w) or Fraction(1)
                y.append(tuple(sum(wi * v[k] for wi, v in zip(w, verts)) / tot
                               for k in range(dim)))
        if not face_restriction_check(y, poly, face):
            return False, f"face restriction failed at instance {idx}"
        checked += 1
    homs = 0
    tri = zoo[0]
    edge = next(f for f in tri.faces() if len(f.indices) == 2)
    for _ in range(20):
        pts = {tri.vertices[i] for i in edge.indices}
        while len(pts) < rng.randint(4, 7):
            w = [Fraction(rng.randint(0, 3)) for _ in tri.vertices]
            tot = sum(w) or Fraction(1)
            pts.add(tuple(sum(wi * v[k] for wi, v in zip(w, tri.vertices)) / tot
                          for k in range(2)))
        rep = face_hom_check(sorted(pts), tri, edge)
        if not (rep["trace_closed"] and rep["joins"] and rep["meets"] and rep["surjective"]):
            return False, f"trace homomorphism defect: {rep}"
        homs += 1
    return True, f"{checked} restriction instances, {homs} homomorphism grounds"


def _iterative_witness_valid(q: Point, pts: list[Point]) -> bool:
    """Certify membership by the two-step segment construction: find an
    affinely independent containing subset, split it into two pairs, and
    check q ∈ [x, y] with x, y on the generator segments, exactly."""
    uniq = sorted(set(pts))
    dim = len(q)
    for size in range(1, dim + 2):
        for subset in itertools.combinations(uniq, size):
            if not affinely_independent(subset):
                continue
            coords = affine_coordinates(q, subset)
            if coords is None or any(c < 0 for c in coords):
                continue
            half = (len(subset) + 1) // 2
            m1 = sum(coords[:half])
            m2 = sum(coords[half:])
            def blend(ws, ps):
                tot = sum(ws)
                return tuple(sum(w * p[k] for w, p in zip(ws, ps)) / tot
                             for k in range(dim))
            if m1 == 0 or m2 == 0:
                return True     # a single pair (or point) suffices
            x = blend(coords[:half], subset[:half])
            y = blend(coords[half:], subset[half:])
            recombined = tuple(m1 * xv + m2 * yv for xv, yv in zip(x, y))
            if recombined == q:
                return True
    return False


def criterion_9_oracle_equivalence() -> tuple[bool, str]:
    rng = random.Random(909)
    for idx in range(30):
        dim = rng.choice([1, 2, 2, 3])
        size = rng.randint(4, 12)
        g = _random_ground(rng, size, dim, span=5)
        if sorted(g.enumerate_closed_masks()) != g.scan_closed_masks():
            return False, f"enumeration mismatch on ground {idx}"
    for idx in range(100):
        dim = rng.choice([1, 2, 3])
        pts = [tuple(Fraction(rng.randint(-4, 4), rng.randint(1, 2))
                     for _ in range(dim)) for _ in range(rng.randint(1, 6))]
        if rng.random() < 0.5 and len(pts) >= 2:
            w = [Fraction(rng.randint(0, 4)) for _ in pts]
            tot = sum(w) or Fraction(1)
            q = tuple(sum(wi * p[k] for wi, p in zip(w, pts)) / tot
                      for k in range(dim))
        else:
            q = tuple(Fraction(rng.randint(-5, 5), rng.randint(1, 2))
                      for _ in range(dim))
        lp_ans = hull_member(q, pts)
        oracle = caratheodory_member(q, pts)
        if lp_ans != oracle:
            return False, f"membership mismatch at instance {idx}"
        if lp_ans and not _iterative_witness_valid(q, pts):
            return False, f"no two-step witness at instance {idx}"
    return True, "30 enumerations and 100 membership instances agree"


CRITERIA: list[tuple[str, Callable[[], tuple[bool, str]]]] = [
    ("1 convex-geometry-suite", criterion_1_convex_geometry_suite),
    ("2 collinear-lower-bound-counterexample", criterion_2_collinear_not_lower_bounded),
    ("3 convex-position-boolean", criterion_3_convex_position_boolean),
    ("4 join-claim", criterion_4_join_claim),
    ("5 embedding-construction", criterion_5_embedding),
    ("6 cevian-sdv-violation", criterion_6_pm_violation),
    ("7 sufficient-conditions", criterion_7_condition_checkers),
    ("8 face-restriction-suite", criterion_8_face_restriction_suite),
    ("9 oracle-equivalence", criterion_9_oracle_equivalence),
]


def run_all(verbose: bool = True) -> list[CriterionResult]:
    results = []
    for name, fn in CRITERIA:
        t0 = time.monotonic()
        ok, detail = fn()
        dt = time.monotonic() - t0
        results.append(CriterionResult(name, ok, detail, dt))
        if verbose:
            status = "PASS" if ok else "FAIL"
            print(f"{status} criterion {name}: {detail} [{dt:.1f}s]")
    return results
