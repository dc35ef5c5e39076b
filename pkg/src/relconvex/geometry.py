"""Exact rational convex geometry.

Points are tuples of ``Fraction``; every predicate below is decided exactly,
either by direct linear algebra or by the exact simplex solver in
:mod:`relconvex.lp`.  Openness (a segment missing an endpoint, the relative
interior of a face) is handled by strict linear programming: all strict
inequalities share one slack variable which is then maximized, so strict
feasibility is equivalent to a positive optimum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence, Union

from . import linalg, lp
from .errors import DimensionMismatch, InputError, UnsupportedDimension
from .intervals import Interval, union_intervals

Point = tuple[Fraction, ...]

MAX_FACE_DIM = 4


def qp(*coords) -> Point:
    """Build a point from ints, strings like '1/3', or Fractions."""
    return tuple(Fraction(c) for c in coords)


def _check_dim(pts: Iterable[Point], dim: Optional[int] = None) -> int:
    for p in pts:
        if dim is None:
            dim = len(p)
        elif len(p) != dim:
            raise DimensionMismatch("points of different ambient dimension")
    if dim is None:
        raise InputError("empty point collection")
    return dim


def sub(a: Point, b: Point) -> Point:
    return tuple(x - y for x, y in zip(a, b))


def add(a: Point, b: Point) -> Point:
    return tuple(x + y for x, y in zip(a, b))


def scale(a: Point, t: Fraction) -> Point:
    return tuple(t * x for x in a)


def interpolate(a: Point, b: Point, t: Fraction) -> Point:
    """Point a + t (b - a)."""
    return tuple(x + t * (y - x) for x, y in zip(a, b))


def centroid(pts: Sequence[Point]) -> Point:
    n = Fraction(len(pts))
    dim = _check_dim(pts)
    return tuple(sum(p[k] for p in pts) / n for k in range(dim))


@dataclass(frozen=True)
class Segment:
    """A segment with distinct endpoints and per-endpoint openness flags."""

    a: Point
    b: Point
    a_closed: bool = True
    b_closed: bool = True

    def __post_init__(self):
        if len(self.a) != len(self.b):
            raise DimensionMismatch("segment endpoints of different dimension")
        if self.a == self.b:
            raise InputError("degenerate segment: endpoints coincide")

    @property
    def dim(self) -> int:
        return len(self.a)

    def at(self, t: Fraction) -> Point:
        return interpolate(self.a, self.b, t)

    def domain(self) -> Interval:
        return Interval(Fraction(0), Fraction(1), self.a_closed, self.b_closed)


@dataclass(frozen=True)
class MixedGenerators:
    """Generators for a convex hull: closed points, segments with openness
    flags, and vertex tuples whose relative interior is the generator."""

    points: tuple[Point, ...] = ()
    segments: tuple[Segment, ...] = ()
    open_faces: tuple[tuple[Point, ...], ...] = ()

    def __post_init__(self):
        dims = [len(p) for p in self.points]
        dims += [s.dim for s in self.segments]
        dims += [len(v) for f in self.open_faces for v in f]
        if dims and len(set(dims)) > 1:
            raise DimensionMismatch("generators of mixed ambient dimension")
        if not dims:
            raise InputError("no generators")

    @property
    def dim(self) -> int:
        if self.points:
            return len(self.points[0])
        if self.segments:
            return self.segments[0].dim
        return len(self.open_faces[0][0])


# ---------------------------------------------------------------------------
# membership


def hull_member(q: Point, pts: Sequence[Point]) -> bool:
    """Exact convex-hull membership, decided by LP feasibility."""
    if not pts:
        return False
    dim = _check_dim(pts)
    if len(q) != dim:
        raise DimensionMismatch("query point dimension mismatch")
    cols = list(pts)
    A = [[p[k] for p in cols] for k in range(dim)]
    A.append([Fraction(1)] * len(cols))
    b = list(q) + [Fraction(1)]
    return lp.feasible(A, b)


def affine_coordinates(q: Point, pts: Sequence[Point]):
    """Affine combination q = sum(l_i * p_i), sum(l_i) = 1, or None.

    Free variables of an underdetermined system are set to zero; for an
    affinely independent family the coordinates are unique.
    """
    dim = _check_dim(pts)
    if len(q) != dim:
        raise DimensionMismatch("query point dimension mismatch")
    A = [[p[k] for p in pts] for k in range(dim)]
    A.append([Fraction(1)] * len(pts))
    rhs = list(q) + [Fraction(1)]
    sol = linalg.solve(A, rhs)
    if sol is None:
        return None
    return sol[0]


def affinely_independent(pts: Sequence[Point]) -> bool:
    if len(pts) <= 1:
        return True
    diffs = [sub(p, pts[0]) for p in pts[1:]]
    return linalg.rank(diffs) == len(pts) - 1


def affine_span_dim(pts: Sequence[Point]) -> int:
    """Dimension of the affine hull, by exact rank computation."""
    if not pts:
        raise InputError("affine span of empty set")
    _check_dim(pts)
    diffs = [sub(p, pts[0]) for p in pts[1:]]
    if not diffs:
        return 0
    return linalg.rank(diffs)


def caratheodory_member(q: Point, pts: Sequence[Point]) -> bool:
    """Hull membership by brute force over affinely independent subsets.

    Independent of the LP route: enumerates candidate simplices of at most
    dim+1 generators and solves barycentric coordinates directly.
    """
    if not pts:
        return False
    dim = _check_dim(pts)
    if len(q) != dim:
        raise DimensionMismatch("query point dimension mismatch")
    uniq = sorted(set(pts))
    for size in range(1, dim + 2):
        for subset in itertools.combinations(uniq, size):
            if not affinely_independent(subset):
                continue
            coords = affine_coordinates(q, subset)
            if coords is not None and all(c >= 0 for c in coords):
                return True
    return False


def extreme_points(pts: Sequence[Point]) -> list[Point]:
    """Points x of the input with x outside the hull of the others."""
    if not pts:
        raise InputError("extreme points of empty set")
    uniq = sorted(set(pts))
    if len(uniq) == 1:
        return uniq
    out = []
    for i, p in enumerate(uniq):
        others = uniq[:i] + uniq[i + 1:]
        if not hull_member(p, others):
            out.append(p)
    return out


# ---------------------------------------------------------------------------
# strict membership

def _atom_groups(gens: MixedGenerators):
    """Split generators into atom lists [(point, strict_flag), ...].

    For segments the coefficient of one endpoint must be positive exactly
    when the opposite endpoint is open (mass cannot sit entirely on an
    excluded end).  For a relative interior all coefficients are strict.
    Returns (always_on, optional) where optional groups carry at least one
    strict atom and participate in support enumeration.
    """
    always = []
    optional = []
    for p in gens.points:
        always.append([(p, False)])
    for s in gens.segments:
        group = [(s.a, not s.b_closed), (s.b, not s.a_closed)]
        if any(strict for _, strict in group):
            optional.append(group)
        else:
            always.append(group)
    for verts in gens.open_faces:
        if len(verts) == 1:
            always.append([(verts[0], False)])
        else:
            optional.append([(v, True) for v in verts])
    return always, optional


def _strict_combo_feasible(q: Point, groups) -> bool:
    """Is q a unit-mass combination of the given atoms with every
    strict-flagged coefficient positive?  One shared slack, maximized."""
    atoms = [a for g in groups for a in g]
    if not atoms:
        return False
    dim = len(q)
    strict_idx = [i for i, (_, strict) in enumerate(atoms) if strict]
    nγ = len(atoms)
    if not strict_idx:
        A = [[atoms[j][0][k] for j in range(nγ)] for k in range(dim)]
        A.append([Fraction(1)] * nγ)
        return lp.feasible(A, list(q) + [Fraction(1)])
    # columns: gamma..., s, surplus...
    ncols = nγ + 1 + len(strict_idx)
    rows = []
    for k in range(dim):
        rows.append([atoms[j][0][k] for j in range(nγ)] + [Fraction(0)] * (1 + len(strict_idx)))
    rows.append([Fraction(1)] * nγ + [Fraction(0)] * (1 + len(strict_idx)))
    rhs = list(q) + [Fraction(1)]
    for t, j in enumerate(strict_idx):
        row = [Fraction(0)] * ncols
        row[j] = Fraction(1)
        row[nγ] = Fraction(-1)
        row[nγ + 1 + t] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(0))
    c = [Fraction(0)] * ncols
    c[nγ] = Fraction(1)
    res = lp.maximize(rows, rhs, c)
    return res.status == lp.OPTIMAL and res.objective > 0


def strict_hull_member(q: Point, gens: MixedGenerators) -> bool:
    """Membership in the hull of mixed open/closed generators.

    q must be a convex combination assigning mass only to admissible points:
    positive mass on an open segment stays off its excluded endpoints, and
    positive mass on a relative-interior generator uses interior points only.
    Decided by support enumeration over the open generators, one strict LP
    per support set.
    """
    if len(q) != gens.dim:
        raise DimensionMismatch("query point dimension mismatch")
    always, optional = _atom_groups(gens)
    for r in range(len(optional) + 1):
        for chosen in itertools.combinations(optional, r):
            if not always and not chosen:
                continue
            if _strict_combo_feasible(q, always + list(chosen)):
                return True
    return False


# ---------------------------------------------------------------------------
# polytopes and faces


class VPolytope:
    """Polytope given by vertices; the stored list is the extreme-point set."""

    def __init__(self, points: Sequence[Point], *, assume_extreme: bool = False):
        uniq: list[Point] = []
        seen = set()
        for p in points:
            pt = tuple(Fraction(c) for c in p)
            if pt not in seen:
                seen.add(pt)
                uniq.append(pt)
        if not uniq:
            raise InputError("polytope needs at least one point")
        _check_dim(uniq)
        if not assume_extreme and len(uniq) > 1:
            uniq = extreme_points(uniq)
        self.vertices: tuple[Point, ...] = tuple(uniq)
        self.dim_ambient = len(uniq[0])
        self.dim_affine = affine_span_dim(self.vertices)
        self._faces: Optional[list["Face"]] = None

    def __eq__(self, other):
        return isinstance(other, VPolytope) and set(self.vertices) == set(other.vertices)

    def __hash__(self):
        return hash(frozenset(self.vertices))

    def __repr__(self):
        return f"VPolytope({len(self.vertices)} vertices, dim {self.dim_affine}/{self.dim_ambient})"

    def contains(self, q: Point) -> bool:
        return hull_member(q, self.vertices)

    def barycenter(self) -> Point:
        return centroid(self.vertices)

    def _affine_chart(self):
        """Coordinates of every vertex in a basis of the affine hull."""
        v0 = self.vertices[0]
        diffs = [sub(p, v0) for p in self.vertices[1:]]
        red, pivots = linalg.rref(diffs)
        basis = [red[i] for i in range(len(pivots))]
        coords = []
        for p in self.vertices:
            d = sub(p, v0)
            sol = linalg.solve([[b[k] for b in basis] for k in range(self.dim_ambient)], list(d))
            assert sol is not None
            coords.append(tuple(sol[0]))
        return coords

    def facets(self) -> list[frozenset[int]]:
        """Vertex index sets of the (dim_affine - 1)-dimensional faces."""
        d = self.dim_affine
        if d == 0:
            return []
        coords = self._affine_chart()
        m = len(coords)
        found: set[frozenset[int]] = set()
        for subset in itertools.combinations(range(m), d):
            base = coords[subset[0]]
            diffs = [sub(coords[i], base) for i in subset[1:]]
            if d > 1 and linalg.rank(diffs) != d - 1:
                continue
            ns = linalg.nullspace(diffs) if diffs else [[Fraction(1)]]
            if len(ns) != 1:
                continue
            w = ns[0]
            offs = sum(wi * xi for wi, xi in zip(w, base))
            vals = [sum(wi * xi for wi, xi in zip(w, c)) - offs for c in coords]
            if all(v >= 0 for v in vals) or all(v <= 0 for v in vals):
                found.add(frozenset(i for i, v in enumerate(vals) if v == 0))
        return sorted(found, key=lambda s: tuple(sorted(s)))

    def faces(self) -> list["Face"]:
        """All nonempty faces (vertices, edges, ..., and the polytope itself).

        Proper faces are generated as intersections of facets; every facet is
        discovered by the supporting-hyperplane search over affinely
        independent vertex subsets.
        """
        if self._faces is not None:
            return self._faces
        if self.dim_affine > MAX_FACE_DIM:
            raise UnsupportedDimension(
                f"face enumeration supported up to affine dimension {MAX_FACE_DIM}")
        whole = frozenset(range(len(self.vertices)))
        closed: set[frozenset[int]] = {whole} | set(self.facets())
        changed = True
        while changed:
            changed = False
            current = list(closed)
            for a, b in itertools.combinations(current, 2):
                c = a & b
                if c and c not in closed:
                    closed.add(c)
                    changed = True
        ordered = sorted(closed, key=lambda s: (len(s), tuple(sorted(s))))
        self._faces = [Face(self, s) for s in ordered]
        return self._faces


@dataclass(frozen=True)
class Face:
    polytope: VPolytope
    indices: frozenset[int]

    @property
    def vertices(self) -> tuple[Point, ...]:
        return tuple(self.polytope.vertices[i] for i in sorted(self.indices))

    @property
    def dim(self) -> int:
        return affine_span_dim(self.vertices)

    @property
    def is_proper(self) -> bool:
        return len(self.indices) < len(self.polytope.vertices)

    def contains(self, q: Point) -> bool:
        return hull_member(q, self.vertices)


def supports_face(poly: VPolytope, indices: frozenset[int]) -> bool:
    """LP certificate that a vertex subset is a face: a linear functional
    that is constant on the subset and strictly smaller elsewhere."""
    verts = poly.vertices
    inside = sorted(indices)
    outside = [i for i in range(len(verts)) if i not in indices]
    if not inside:
        return False
    if not outside:
        return True
    n = poly.dim_ambient
    # columns: w+ (n), w- (n), t+, t-, s, surplus per outside vertex, cap slack
    ncols = 2 * n + 2 + 1 + len(outside) + 1
    rows = []
    rhs = []

    def functional_cols(p: Point, sign: int):
        row = [Fraction(0)] * ncols
        for k in range(n):
            row[k] = Fraction(sign) * p[k]
            row[n + k] = Fraction(-sign) * p[k]
        row[2 * n] = Fraction(-sign)
        row[2 * n + 1] = Fraction(sign)
        return row

    for i in inside:
        rows.append(functional_cols(verts[i], 1))
        rhs.append(Fraction(0))
    for t, i in enumerate(outside):
        row = functional_cols(verts[i], -1)
        row[2 * n + 2] = Fraction(-1)
        row[2 * n + 2 + 1 + t] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(0))
    cap = [Fraction(0)] * ncols
    cap[2 * n + 2] = Fraction(1)
    cap[-1] = Fraction(1)
    rows.append(cap)
    rhs.append(Fraction(1))
    c = [Fraction(0)] * ncols
    c[2 * n + 2] = Fraction(1)
    res = lp.maximize(rows, rhs, c)
    return res.status == lp.OPTIMAL and res.objective > 0


# ---------------------------------------------------------------------------
# segment ∩ hull


def _parametric_lp(seg: Segment, groups, mode: str, tau_fixed: Optional[Fraction] = None):
    """LP over combinations x(tau) = sum(gamma_a * a) with tau in [0, 1].

    mode 'strict': maximize shared slack (returns optimum, 0 when infeasible);
    mode 'min' / 'max': optimize tau over the closed relaxation (returns the
    optimum or None when infeasible).
    """
    atoms = [a for g in groups for a in g]
    if not atoms:
        return Fraction(0) if mode == "strict" else None
    dim = seg.dim
    strict_idx = [i for i, (_, s) in enumerate(atoms) if s] if mode == "strict" else []
    nγ = len(atoms)
    with_tau = tau_fixed is None
    # columns: gammas, [tau, tau_cap_slack], [s, surpluses]
    ncols = nγ + (2 if with_tau else 0) + (1 + len(strict_idx) if strict_idx else 0)
    tau_col = nγ
    s_col = nγ + (2 if with_tau else 0)
    rows = []
    rhs = []
    direction = sub(seg.b, seg.a)
    for k in range(dim):
        row = [Fraction(0)] * ncols
        for j, (p, _) in enumerate(atoms):
            row[j] = p[k]
        if with_tau:
            row[tau_col] = -direction[k]
            rows.append(row)
            rhs.append(seg.a[k])
        else:
            rows.append(row)
            rhs.append(seg.a[k] + tau_fixed * direction[k])
    row = [Fraction(0)] * ncols
    for j in range(nγ):
        row[j] = Fraction(1)
    rows.append(row)
    rhs.append(Fraction(1))
    if with_tau:
        row = [Fraction(0)] * ncols
        row[tau_col] = Fraction(1)
        row[tau_col + 1] = Fraction(1)
        rows.append(row)
        rhs.append(Fraction(1))
    for t, j in enumerate(strict_idx):
        row = [Fraction(0)] * ncols
        row[j] = Fraction(1)
        row[s_col] = Fraction(-1)
        row[s_col + 1 + t] = Fraction(-1)
        rows.append(row)
        rhs.append(Fraction(0))
    c = [Fraction(0)] * ncols
    if mode == "strict":
        if strict_idx:
            c[s_col] = Fraction(1)
        res = lp.maximize(rows, rhs, c)
        if res.status != lp.OPTIMAL:
            return Fraction(0)
        if not strict_idx:
            return Fraction(1)  # plain feasibility counts as strictly ok
        return res.objective
    assert with_tau
    c[tau_col] = Fraction(1) if mode == "max" else Fraction(-1)
    res = lp.maximize(rows, rhs, c)
    if res.status != lp.OPTIMAL:
        return None
    return res.x[tau_col]


def segment_hull_param_intervals(seg: Segment, gens: MixedGenerators) -> tuple[Interval, ...]:
    """Parameters t with seg.at(t) in the strict hull of the generators.

    The result is a canonical union of intervals, already restricted to the
    segment's own domain (open endpoints of seg are excluded).
    """
    if seg.dim != gens.dim:
        raise DimensionMismatch("segment and generators of different dimension")
    always, optional = _atom_groups(gens)
    pieces: list[Interval] = []
    for r in range(len(optional) + 1):
        for chosen in itertools.combinations(optional, r):
            groups = always + list(chosen)
            if not groups:
                continue
            has_strict = any(s for g in groups for _, s in g)
            if has_strict:
                if _parametric_lp(seg, groups, "strict") <= 0:
                    continue
            lo = _parametric_lp(seg, groups, "min")
            if lo is None:
                continue
            hi = _parametric_lp(seg, groups, "max")
            assert hi is not None
            if has_strict:
                lo_in = _parametric_lp(seg, groups, "strict", tau_fixed=lo) > 0
                hi_in = lo_in if hi == lo else _parametric_lp(seg, groups, "strict", tau_fixed=hi) > 0
            else:
                lo_in = hi_in = True
            if lo == hi:
                if lo_in:
                    pieces.append(Interval.point(lo))
            else:
                pieces.append(Interval(lo, hi, lo_in, hi_in))
    merged = union_intervals(pieces)
    out = []
    dom = seg.domain()
    for iv in merged:
        clipped = iv.intersect(dom)
        if clipped is not None:
            out.append(clipped)
    return tuple(out)


def segment_hull_intersection(seg: Segment, gens: MixedGenerators) -> list[Union[Segment, Point]]:
    """The set {x in seg : strict_hull_member(x, gens)} as segments/points."""
    out: list[Union[Segment, Point]] = []
    for iv in segment_hull_param_intervals(seg, gens):
        if iv.is_point:
            out.append(seg.at(iv.lo))
        else:
            out.append(Segment(seg.at(iv.lo), seg.at(iv.hi), iv.lo_closed, iv.hi_closed))
    return out


def standard_simplex(n: int) -> VPolytope:
    """Vertices: the origin and the n unit points of Q^n."""
    if n < 1:
        raise InputError("simplex dimension must be at least 1")
    pts = [tuple(Fraction(0) for _ in range(n))]
    for i in range(n):
        pts.append(tuple(Fraction(1 if k == i else 0) for k in range(n)))
    return VPolytope(pts, assume_extreme=True)
