"""Walk through the segment-union counterexample to join-semidistributivity.

The ground set is a base segment [b, c] plus two segments from interior
points p and m up to a common apex a.  The closed sets A = [b,c], B = (p,a),
C = (m,a) satisfy A∨B = A∨C (everything except the apex) while B∧C is empty,
so A∨(B∧C) = A.  Both sufficient conditions that would rule this out fail:
the closures of the cevians share the apex, and the cevians cross the
triangle's interior instead of lying in its faces.

Run:  python demos/cevian_counterexample.py
"""

from fractions import Fraction as F

from relconvex import (
    Interval,
    Segment,
    SegmentUnionGround,
    SubsegmentSet,
    VPolytope,
    check_condition_disjoint,
    check_condition_faces,
    qp,
    seg_join,
    seg_meet,
)

b, c, a = qp(-1, 0), qp(1, 0), qp(0, 2)
p, m = qp("-1/4", "1/2"), qp("1/4", "1/2")

ground = SegmentUnionGround([Segment(b, c), Segment(p, a), Segment(m, a)])
whole = Interval(F(0), F(1))
open_whole = Interval(F(0), F(1), False, False)

A = SubsegmentSet(ground, [[whole], [], []])
B = SubsegmentSet(ground, [[], [open_whole], []])
C = SubsegmentSet(ground, [[], [], [open_whole]])

print("A        =", A)
print("B        =", B)
print("C        =", C)

AB = seg_join(A, B)
AC = seg_join(A, C)
print("A v B    =", AB)
print("A v C    =", AC)
print("equal?   ", AB == AC)

BC = seg_meet(B, C)
print("B ^ C    =", BC, "(empty:", BC.is_empty, ")")
print("A v (B^C)=", seg_join(A, BC))
print("semidistributive implication holds?", seg_join(A, BC) == AB)

print()
print("condition (i), pairwise disjoint closures:",
      check_condition_disjoint(ground))
triangle = VPolytope([b, c, a])
print("condition (ii), carriers inside proper faces:",
      check_condition_faces(ground, triangle))
