"""Decision procedures on finite lattices and closure operators.

Every checker is exhaustive over its quantifiers (no sampling); the heavy
triple loops run as vectorized numpy passes over the join/meet index tables.
Each negative answer comes with a re-checkable witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from .errors import InputError
from .lattice import FiniteLattice

SDV_VIOLATION = "sdv-violation"
ANTI_EXCHANGE_VIOLATION = "anti-exchange-violation"
D_CYCLE = "d-cycle"
BIATOMICITY_VIOLATION = "biatomicity-violation"
WEAK_ATOM_VIOLATION = "weak-atom-violation"
M3_SUBLATTICE = "m3-sublattice"
EMBEDDING_DEFECT = "embedding-defect"
DISTRIBUTIVITY_VIOLATION = "distributivity-violation"


@dataclass
class Witness:
    kind: str
    elements: list
    info: dict = field(default_factory=dict)

    def to_json(self):
        return {"kind": self.kind, "elements": list(self.elements), "info": dict(self.info)}


# ---------------------------------------------------------------------------
# semidistributivity and friends


def check_jsd(lat: FiniteLattice) -> tuple[bool, Optional[Witness]]:
    """x∨y = x∨z implies x∨y = x∨(y∧z), for all triples."""
    J, M = lat.join_table, lat.meet_table
    for x in range(lat.n):
        jx = J[x]
        eq = jx[:, None] == jx[None, :]
        rhs = jx[M]
        viol = eq & (rhs != jx[:, None])
        if viol.any():
            y, z = map(int, np.argwhere(viol)[0])
            return False, Witness(SDV_VIOLATION, [x, y, z],
                                  {"roles": ["x", "y", "z"]})
    return True, None


def check_distributive(lat: FiniteLattice) -> tuple[bool, Optional[Witness]]:
    """x∨(y∧z) = (x∨y)∧(x∨z) for all triples."""
    J, M = lat.join_table, lat.meet_table
    for x in range(lat.n):
        jx = J[x]
        lhs = jx[M]
        rhs = M[jx[:, None], jx[None, :]]
        viol = lhs != rhs
        if viol.any():
            y, z = map(int, np.argwhere(viol)[0])
            return False, Witness(DISTRIBUTIVITY_VIOLATION, [x, y, z],
                                  {"roles": ["x", "y", "z"]})
    return True, None


def check_weak_atom_property(lat: FiniteLattice) -> tuple[bool, Optional[Witness]]:
    """For atoms y, z: x∨y = x∨z forces y = z or y, z both below x."""
    atoms = lat.atoms()
    if not atoms:
        return True, None
    J, leq = lat.join_table, lat.leq
    at = np.array(atoms)
    for x in range(lat.n):
        jxa = J[x, at]
        below = leq[at, x]
        eq = jxa[:, None] == jxa[None, :]
        ok = below[:, None] & below[None, :]
        viol = eq & ~ok & ~np.eye(len(at), dtype=bool)
        if viol.any():
            i, j = map(int, np.argwhere(viol)[0])
            return False, Witness(WEAK_ATOM_VIOLATION, [x, int(at[i]), int(at[j])],
                                  {"roles": ["x", "y", "z"]})
    return True, None


def check_biatomic(lat: FiniteLattice) -> tuple[bool, Optional[Witness]]:
    """Every atom below y∨z (y, z nonzero) is below a join of atoms
    y' <= y, z' <= z."""
    atoms = lat.atoms()
    if not atoms:
        return True, None
    J, leq = lat.join_table, lat.leq
    at = np.array(atoms)
    bot = lat.bottom()
    nonzero = np.ones(lat.n, dtype=bool)
    nonzero[bot] = False
    BM = leq[at, :].T.astype(np.float64)          # BM[y, k]: atom k below y
    JA = J[np.ix_(at, at)]
    for x in atoms:
        P = leq[x][JA].astype(np.float64)         # P[k, l]: x <= a_k ∨ a_l
        Q = (BM @ P @ BM.T) > 0
        need = leq[x, J] & nonzero[:, None] & nonzero[None, :]
        viol = need & ~Q
        if viol.any():
            y, z = map(int, np.argwhere(viol)[0])
            return False, Witness(BIATOMICITY_VIOLATION, [int(x), y, z],
                                  {"roles": ["x", "y", "z"]})
    return True, None


def find_m3(lat: FiniteLattice) -> Optional[Witness]:
    """Five elements forming a diamond sublattice, or None."""
    J, M, leq = lat.join_table, lat.meet_table, lat.leq
    incomp = ~leq & ~leq.T
    for a in range(lat.n):
        for b in range(a + 1, lat.n):
            if not incomp[a, b]:
                continue
            j, m = J[a, b], M[a, b]
            cand = (incomp[a] & incomp[b]
                    & (J[a] == j) & (J[b] == j)
                    & (M[a] == m) & (M[b] == m))
            cand[: b + 1] = False
            if cand.any():
                c = int(np.argmax(cand))
                return Witness(M3_SUBLATTICE, [int(m), a, b, c, int(j)],
                               {"roles": ["bottom", "a", "b", "c", "top"]})
    return None


# ---------------------------------------------------------------------------
# anti-exchange


class ClosureTable:
    """Explicit closure operator on {0..n-1}, for abstract counterexamples."""

    def __init__(self, n: int, table: dict[int, int]):
        self.n = n
        full = 1 << n
        self._table = dict(table)
        for mask in range(full):
            cl = self._table.get(mask)
            if cl is None:
                raise InputError(f"closure table missing subset {mask:b}")
            if cl & mask != mask:
                raise InputError("closure table not extensive")
            if self._table.get(cl) != cl:
                raise InputError("closure table not idempotent")
        for mask in range(full):
            for i in range(n):
                sup = mask | (1 << i)
                if self._table[mask] & self._table[sup] != self._table[mask]:
                    raise InputError("closure table not monotone")

    def closure_mask(self, mask: int) -> int:
        return self._table[mask]

    def enumerate_closed_masks(self, max_ground: int = 20) -> list[int]:
        return [m for m in range(1 << self.n) if self._table[m] == m]


def check_anti_exchange(operator) -> tuple[bool, Optional[Witness]]:
    """Anti-exchange axiom for a closure operator (FiniteGround or table):
    for closed A and distinct x, y outside A, x in cl(A+y) forbids
    y in cl(A+x)."""
    n = operator.n
    closed = operator.enumerate_closed_masks()
    for A in closed:
        added = [operator.closure_mask(A | (1 << y)) if not A >> y & 1 else 0
                 for y in range(n)]
        for x in range(n):
            if A >> x & 1:
                continue
            for y in range(x + 1, n):
                if A >> y & 1 or x == y:
                    continue
                if added[y] >> x & 1 and added[x] >> y & 1:
                    return False, Witness(
                        ANTI_EXCHANGE_VIOLATION,
                        [A, x, y],
                        {"roles": ["closed-set-mask", "x", "y"]})
    return True, None


# ---------------------------------------------------------------------------
# join dependency, lower boundedness


def d_relation(lat: FiniteLattice) -> dict[int, list[int]]:
    """Directed graph a -> b on join-irreducibles: some p gives a <= b∨p
    while a is not below c∨p for any c < b (equivalently for the unique
    lower cover of b)."""
    jis = lat.join_irreducibles()
    J, leq = lat.join_table, lat.leq
    lower = {b: lat.lower_cover_of(b) for b in jis}
    out: dict[int, list[int]] = {a: [] for a in jis}
    for a in jis:
        for b in jis:
            if a == b:
                continue
            cond = leq[a, J[b]] & ~leq[a, J[lower[b]]]
            if cond.any():
                out[a].append(b)
    return out


def find_d_cycle(graph: dict[int, list[int]]) -> Optional[list[int]]:
    """A directed cycle in the relation, as a node list (first == last)."""
    WHITE, GREY, BLACK = 0, 1, 2
    color = {v: WHITE for v in graph}
    parent: dict[int, int] = {}
    for root in graph:
        if color[root] != WHITE:
            continue
        stack = [(root, iter(graph[root]))]
        color[root] = GREY
        while stack:
            node, it = stack[-1]
            advanced = False
            for nxt in it:
                if color[nxt] == WHITE:
                    color[nxt] = GREY
                    parent[nxt] = node
                    stack.append((nxt, iter(graph[nxt])))
                    advanced = True
                    break
                if color[nxt] == GREY:
                    cycle = [nxt, node]
                    cur = node
                    while cur != nxt:
                        cur = parent[cur]
                        cycle.append(cur)
                    cycle.reverse()
                    return cycle
            if not advanced:
                color[node] = BLACK
                stack.pop()
    return None


def check_lower_bounded(lat: FiniteLattice) -> tuple[bool, Optional[Witness]]:
    """A finite lattice is lower bounded iff its join-dependency relation is
    acyclic."""
    graph = d_relation(lat)
    cycle = find_d_cycle(graph)
    if cycle is None:
        return True, None
    return False, Witness(D_CYCLE, cycle, {"roles": ["join-irreducible"] * len(cycle)})


# ---------------------------------------------------------------------------
# lattice maps


@dataclass
class LatticeMap:
    source: FiniteLattice
    target: FiniteLattice
    image: list[int]

    def __post_init__(self):
        if len(self.image) != self.source.n:
            raise InputError("image must assign every source element")
        for t in self.image:
            if not 0 <= t < self.target.n:
                raise InputError("image index outside target lattice")


def verify_embedding(f: LatticeMap) -> tuple[bool, Optional[Witness]]:
    """Injective + join-preserving + meet-preserving, checked on all pairs."""
    img = np.array(f.image, dtype=np.int32)
    if len(set(f.image)) != len(f.image):
        seen: dict[int, int] = {}
        for i, t in enumerate(f.image):
            if t in seen:
                return False, Witness(EMBEDDING_DEFECT, [seen[t], i],
                                      {"reason": "not-injective"})
            seen[t] = i
    Js, Ms = f.source.join_table, f.source.meet_table
    Jt, Mt = f.target.join_table, f.target.meet_table
    join_ok = img[Js] == Jt[img[:, None], img[None, :]]
    if not join_ok.all():
        a, b = map(int, np.argwhere(~join_ok)[0])
        return False, Witness(EMBEDDING_DEFECT, [a, b], {"reason": "join-not-preserved"})
    meet_ok = img[Ms] == Mt[img[:, None], img[None, :]]
    if not meet_ok.all():
        a, b = map(int, np.argwhere(~meet_ok)[0])
        return False, Witness(EMBEDDING_DEFECT, [a, b], {"reason": "meet-not-preserved"})
    return True, None
