"""Finite ground sets and their closure operator Y -> hull(Y) ∩ X.

Closed subsets are represented as bitmasks over the ground's point indices.
Membership witnesses are precomputed once per ground: for every point x the
inclusion-minimal subsets of the other points whose hull contains x (by
Caratheodory's theorem subsets of size at most dim+1 suffice).  A closure is
then a single pass of subset tests, which keeps full enumerations cheap.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .errors import DimensionMismatch, InputError, ResourceLimitError
from .geometry import Point, affine_coordinates, affinely_independent

DEFAULT_MAX_GROUND = 20


class FiniteGround:
    """An indexed list of pairwise distinct rational points."""

    def __init__(self, points: Sequence[Point]):
        pts = [tuple(Fraction(c) for c in p) for p in points]
        if not pts:
            raise InputError("ground set must be nonempty")
        dim = len(pts[0])
        for p in pts:
            if len(p) != dim:
                raise DimensionMismatch("ground points of different dimension")
        if len(set(pts)) != len(pts):
            raise InputError("ground points must be pairwise distinct")
        self.points: tuple[Point, ...] = tuple(pts)
        self.dim = dim
        self.n = len(pts)
        self._witnesses: Optional[list[list[int]]] = None

    def __repr__(self):
        return f"FiniteGround({self.n} points in Q^{self.dim})"

    def _witness_table(self) -> list[list[int]]:
        if self._witnesses is not None:
            return self._witnesses
        table: list[list[int]] = []
        for i, q in enumerate(self.points):
            others = [j for j in range(self.n) if j != i]
            found: list[int] = []
            for size in range(1, self.dim + 2):
                for subset in combinations(others, size):
                    mask = 0
                    for j in subset:
                        mask |= 1 << j
                    if any(m & mask == m for m in found):
                        continue
                    pts = [self.points[j] for j in subset]
                    if not affinely_independent(pts):
                        continue
                    coords = affine_coordinates(q, pts)
                    if coords is not None and all(c >= 0 for c in coords):
                        found.append(mask)
            table.append(found)
        self._witnesses = table
        return table

    def closure_mask(self, mask: int) -> int:
        """hull(Y) ∩ X for Y given as an index bitmask."""
        if mask == 0:
            return 0
        table = self._witness_table()
        out = mask
        for i in range(self.n):
            bit = 1 << i
            if out & bit:
                continue
            if any(m & mask == m for m in table[i]):
                out |= bit
        return out

    def closure(self, indices: Iterable[int]) -> frozenset[int]:
        mask = 0
        for i in indices:
            if not 0 <= i < self.n:
                raise InputError(f"index {i} outside ground")
            mask |= 1 << i
        out = self.closure_mask(mask)
        return frozenset(i for i in range(self.n) if out >> i & 1)

    def is_closed(self, mask: int) -> bool:
        return self.closure_mask(mask) == mask

    # -- enumeration --------------------------------------------------------

    def _next_closed(self, mask: int) -> Optional[int]:
        for i in reversed(range(self.n)):
            bit = 1 << i
            if mask & bit:
                continue
            low = bit - 1
            candidate = self.closure_mask((mask & low) | bit)
            if candidate & low == mask & low:
                return candidate
        return None

    def enumerate_closed_masks(self, max_ground: int = DEFAULT_MAX_GROUND) -> list[int]:
        """All closed sets, generated in lectic order (NextClosure)."""
        if self.n > max_ground:
            raise ResourceLimitError(
                f"ground of size {self.n} exceeds the enumeration bound {max_ground}")
        out = []
        mask = self.closure_mask(0)
        while mask is not None:
            out.append(mask)
            mask = self._next_closed(mask)
        return out

    def scan_closed_masks(self, max_ground: int = 16) -> list[int]:
        """Reference enumeration: test every subset for being a fixpoint.

        Exponential; kept as the independent cross-check for the lectic
        enumeration on small grounds.
        """
        if self.n > max_ground:
            raise ResourceLimitError(
                f"ground of size {self.n} exceeds the brute-force bound {max_ground}")
        return [m for m in range(1 << self.n) if self.closure_mask(m) == m]

    def lattice(self, max_ground: int = DEFAULT_MAX_GROUND):
        from .lattice import FiniteLattice

        masks = self.enumerate_closed_masks(max_ground)
        return FiniteLattice.from_closed_masks(masks, ground=self)


def collinear_ground(values: Sequence, dim: int = 1) -> FiniteGround:
    """Ground of collinear points at the given 1-D coordinates."""
    pts = []
    for v in values:
        coord = [Fraction(v)] + [Fraction(0)] * (dim - 1)
        pts.append(tuple(coord))
    return FiniteGround(pts)
