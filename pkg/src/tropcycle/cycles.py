"""Weighted rational polyhedral cycles in R^n and their stable intersection."""

from __future__ import annotations

import os
import random
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    NotAComponentUnion,
    NotMultiplicityOneFace,
    NotPureDimensional,
    PointNotInterior,
    PointNotOnSupport,
)
from .linalg import (
    Lattice,
    QuotientFrame,
    dot,
    frac_vec,
    primitive_generator,
    rank,
    sum_index,
    vsub,
)
from .polyhedra import (
    Polyhedron,
    faces,
    intersect,
    linear_sum,
    negate,
    recession_cone,
    relative_interior_point,
    tangent_cone,
    translate,
)


def default_seed() -> int:
    return int(os.environ.get("TROPCYCLE_SEED", "0"))


class TropicalCycle:
    """A formal sum of k-dimensional rational polyhedra with integer weights."""

    __slots__ = ("ambient_dim", "dim", "cells")

    def __init__(self, ambient_dim: int, dim: int, cells: Iterable = ()):
        out = []
        for P, w in cells:
            if P.ambient_dim != ambient_dim:
                raise DimensionMismatch("cell lives in a different ambient space")
            if P.dim != dim:
                raise NotPureDimensional(f"cell of dimension {P.dim} in a {dim}-cycle")
            w = int(w)
            if w:
                out.append((P, w))
        self.ambient_dim = ambient_dim
        self.dim = dim
        self.cells = tuple(out)

    def __repr__(self):
        return f"TropicalCycle(n={self.ambient_dim}, dim={self.dim}, {len(self.cells)} cells)"

    def __len__(self):
        return len(self.cells)

    def is_empty(self) -> bool:
        return not self.cells

    def polyhedra(self) -> list[Polyhedron]:
        return [P for P, _ in self.cells]

    def __add__(self, other: "TropicalCycle") -> "TropicalCycle":
        if (self.ambient_dim, self.dim) != (other.ambient_dim, other.dim):
            if not self.cells:
                return other
            if not other.cells:
                return self
            raise DimensionMismatch("cycles of different dimension")
        return TropicalCycle(self.ambient_dim, self.dim, self.cells + other.cells)

    def __neg__(self) -> "TropicalCycle":
        return self.scaled(-1)

    def __sub__(self, other):
        return self + (-other)

    def scaled(self, c: int) -> "TropicalCycle":
        return TropicalCycle(self.ambient_dim, self.dim, [(P, c * w) for P, w in self.cells])

    def translated(self, v: Sequence) -> "TropicalCycle":
        return TropicalCycle(self.ambient_dim, self.dim, [(translate(P, v), w) for P, w in self.cells])

    def support_contains(self, u: Sequence) -> bool:
        return any(P.contains(u) for P, _ in self.cells)

    def weight_at(self, u: Sequence) -> int:
        """Sum of weights of cells whose relative interior contains u."""
        return sum(w for P, w in self.cells if P.in_relint(u))

    def equals(self, other: "TropicalCycle") -> bool:
        if self.ambient_dim != other.ambient_dim:
            return False
        if not self.cells and not other.cells:
            return True
        if self.dim != other.dim:
            return False
        return refine(self - other).is_empty()

    def canonical_cells(self):
        return sorted(((P.key, w) for P, w in refine(self).cells), key=repr)


def empty_cycle(n: int, dim: int) -> TropicalCycle:
    return TropicalCycle(n, dim, ())


def fan_cycle(n: int, cones: Iterable[tuple[Sequence[Sequence], int]]) -> TropicalCycle:
    """Cycle from (generating rays, weight) pairs; all cones must share a dimension."""
    cells = [(Polyhedron.cone(n, rays), w) for rays, w in cones]
    dim = cells[0][0].dim if cells else 0
    return TropicalCycle(n, dim, cells)


# ---------------------------------------------------------------- refinement


def _generators_below(P: Polyhedron, a, b) -> bool:
    """True when every point of P satisfies a.x < b."""
    return (all(dot(a, v) < b for v in P.vertices)
            and all(dot(a, r) <= 0 for r in P.rays)
            and all(dot(a, l) == 0 for l in P.lines))


def _surely_disjoint(P: Polyhedron, Q: Polyhedron) -> bool:
    for a, b in Q.ineqs:
        if _generators_below(P, a, b):
            return True
    for a, b in P.ineqs:
        if _generators_below(Q, a, b):
            return True
    for a, b in Q.eqs:
        if _generators_below(P, a, b) or _generators_below(P, [-x for x in a], -b):
            return True
    for a, b in P.eqs:
        if _generators_below(Q, a, b) or _generators_below(Q, [-x for x in a], -b):
            return True
    return False


def meets(P: Polyhedron, Q: Polyhedron) -> bool:
    if _surely_disjoint(P, Q):
        return False
    return not intersect(P, Q).is_empty


def is_face(F: Polyhedron, P: Polyhedron) -> bool:
    """Whether the nonempty polyhedron F (assumed inside P) is a face of P."""
    if F == P:
        return True
    x = relative_interior_point(F)
    tight = [(a, b) for a, b in P.ineqs if dot(a, x) == b]
    loose = [(a, b) for a, b in P.ineqs if dot(a, x) != b]
    return Polyhedron(P.ambient_dim, loose, P.eqs + tuple(tight)) == F


def _splits(P: Polyhedron, a, b) -> bool:
    above = (any(dot(a, v) > b for v in P.vertices) or any(dot(a, r) > 0 for r in P.rays)
             or any(dot(a, l) != 0 for l in P.lines))
    below = (any(dot(a, v) < b for v in P.vertices) or any(dot(a, r) < 0 for r in P.rays)
             or any(dot(a, l) != 0 for l in P.lines))
    return above and below


def _cut(P: Polyhedron, Q: Polyhedron) -> list[Polyhedron]:
    parts = [P]
    for a, b in Q.ineqs + Q.eqs:
        nxt = []
        for R in parts:
            if _splits(R, a, b):
                neg = tuple(-x for x in a)
                nxt.append(Polyhedron(R.ambient_dim, R.ineqs + ((a, b),), R.eqs))
                nxt.append(Polyhedron(R.ambient_dim, R.ineqs + ((neg, -b),), R.eqs))
            else:
                nxt.append(R)
        parts = nxt
    return parts


def refine_polyhedra(polys: Iterable[Polyhedron]) -> list[Polyhedron]:
    """Subdivide equidimensional polyhedra until any two pieces meet in a common face."""
    pieces = []
    seen = set()
    for P in polys:
        if P.key not in seen:
            seen.add(P.key)
            pieces.append(P)
    changed = True
    while changed:
        changed = False
        i = 0
        while i < len(pieces):
            P = pieces[i]
            replaced = False
            for j, Q in enumerate(pieces):
                if j == i or _surely_disjoint(P, Q):
                    continue
                I = intersect(P, Q)
                if I.is_empty or is_face(I, P):
                    continue
                parts = _cut(P, Q)
                if len(parts) == 1:
                    continue
                new = [R for R in parts if R.key not in seen]
                for R in new:
                    seen.add(R.key)
                pieces[i:i + 1] = new
                replaced = True
                changed = True
                break
            if not replaced:
                i += 1
    return pieces


def _weighted_pieces(cycles: Sequence[TropicalCycle]):
    polys = [P for S in cycles for P, _ in S.cells]
    pieces = refine_polyhedra(polys)
    out = []
    for R in pieces:
        x = relative_interior_point(R)
        ws = [sum(w for P, w in S.cells if P.dim == R.dim and P.contains(x) and P.contains_poly(R))
              for S in cycles]
        out.append((R, ws))
    return out


def refine(S: TropicalCycle) -> TropicalCycle:
    """Equivalent cycle whose cells form a polyhedral complex."""
    if not S.cells:
        return S
    cells = [(R, ws[0]) for R, ws in _weighted_pieces([S])]
    cells.sort(key=lambda c: c[0])
    return TropicalCycle(S.ambient_dim, S.dim, cells)


def common_refinement(S1: TropicalCycle, S2: TropicalCycle):
    if S1.ambient_dim != S2.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    if S1.dim != S2.dim:
        # cells of different dimension: refine each against the other's hyperplanes
        return _cross_refine(S1, S2)
    pieces = sorted(_weighted_pieces([S1, S2]), key=lambda c: c[0])
    A = TropicalCycle(S1.ambient_dim, S1.dim, [(R, ws[0]) for R, ws in pieces])
    B = TropicalCycle(S2.ambient_dim, S2.dim, [(R, ws[1]) for R, ws in pieces])
    return A, B


def _cross_refine(S1, S2):
    A, B = refine(S1), refine(S2)
    for _ in range(8):
        changed = False
        newA = []
        for P, w in A.cells:
            parts = [P]
            for Q, _ in B.cells:
                nxt = []
                for R in parts:
                    I = intersect(R, Q)
                    if not I.is_empty and not is_face(I, R):
                        cut = [X for X in _cut(R, Q) if X.dim == R.dim]
                        changed = changed or len(cut) > 1
                        nxt.extend(cut)
                    else:
                        nxt.append(R)
                parts = nxt
            newA.extend((R, w) for R in parts)
        A = refine(TropicalCycle(A.ambient_dim, A.dim, newA))
        newB = []
        for Q, w in B.cells:
            parts = [Q]
            for P, _ in A.cells:
                nxt = []
                for R in parts:
                    I = intersect(R, P)
                    if not I.is_empty and not is_face(I, R):
                        cut = [X for X in _cut(R, P) if X.dim == R.dim]
                        changed = changed or len(cut) > 1
                        nxt.extend(cut)
                    else:
                        nxt.append(R)
                parts = nxt
            newB.extend((R, w) for R in parts)
        B = refine(TropicalCycle(B.ambient_dim, B.dim, newB))
        if not changed:
            break
    return A, B


# ---------------------------------------------------------------- balancing


def primitive_direction(P: Polyhedron, Q: Polyhedron) -> tuple[int, ...]:
    """Primitive generator of the image of P in N / (lattice of Q), for Q a facet of P."""
    F = QuotientFrame(Q.direction_space(), P.ambient_dim)
    return primitive_generator(F.project(vsub(relative_interior_point(P), relative_interior_point(Q))))


def balancing_check(S: TropicalCycle) -> list:
    """Codimension-one faces where the balancing condition fails, with the offending sum."""
    R = refine(S)
    if R.dim <= 0:
        return []
    ridges = {}
    for P, w in R.cells:
        for Q in faces(P, R.dim - 1):
            ridges.setdefault(Q.key, [Q, []])[1].append((P, w))
    bad = []
    for Q, incident in ridges.values():
        F = QuotientFrame(Q.direction_space(), R.ambient_dim)
        total = [0] * F.dim
        q = relative_interior_point(Q)
        for P, w in incident:
            v = primitive_generator(F.project(vsub(relative_interior_point(P), q)))
            total = [t + w * x for t, x in zip(total, v)]
        if any(total):
            bad.append((Q, tuple(total)))
    return bad


def is_balanced(S: TropicalCycle) -> bool:
    return not balancing_check(S)


# ---------------------------------------------------------------- stars


def star(S: TropicalCycle, u: Sequence) -> TropicalCycle:
    """Fan cycle of tangent cones at u of the cells through u."""
    u = frac_vec(u)
    cells = [(tangent_cone(P, u), w) for P, w in S.cells if P.contains(u)]
    if not cells:
        raise PointNotOnSupport(f"{tuple(map(str, u))} is not on the support")
    return refine(TropicalCycle(S.ambient_dim, S.dim, cells))


# ---------------------------------------------------------------- stable intersection


class _Displacement:
    """Seeded source of displacement vectors, certified generic on demand."""

    def __init__(self, n: int, seed: int | None):
        self.n = n
        self.rng = random.Random(default_seed() if seed is None else seed)
        self.v = self._draw()

    def _draw(self):
        while True:
            v = tuple(self.rng.randint(-997, 997) for _ in range(self.n))
            if any(v):
                return v

    def redraw(self):
        self.v = self._draw()


def _pair_data(P1, P2, u, n):
    T1 = tangent_cone(P1, u)
    T2 = tangent_cone(P2, u)
    return T1, T2


def _local_weight(pairs, u, n, disp: _Displacement, index_cache):
    """Fan displacement sum at u over the given transversal cell pairs."""
    while True:
        total = 0
        ok = True
        for P1, w1, P2, w2 in pairs:
            T1, T2 = _pair_data(P1, P2, u, n)
            D = linear_sum(T1, negate(T2))
            v = disp.v
            if D.dim < n:
                if D.contains(v):
                    ok = False
                    break
                continue
            if any(dot(a, v) == 0 for a, _ in D.ineqs):
                ok = False
                break
            if D.contains(v):
                key = (P1.key, P2.key)
                if key not in index_cache:
                    index_cache[key] = sum_index([P1.direction_space(), P2.direction_space()], n)
                total += w1 * w2 * index_cache[key]
        if ok:
            return total
        disp.redraw()


def _transversal(P1: Polyhedron, P2: Polyhedron, n: int) -> bool:
    return rank(P1.direction_space() + P2.direction_space()) == n


def stable_intersect(S1: TropicalCycle, S2: TropicalCycle, seed: int | None = None) -> TropicalCycle:
    n = S1.ambient_dim
    if S2.ambient_dim != n:
        raise DimensionMismatch("ambient dimensions differ")
    d = S1.dim + S2.dim - n
    if d < 0 or not S1.cells or not S2.cells:
        return empty_cycle(n, d)
    A, B = refine(S1), refine(S2)
    candidates = []
    for P1, _ in A.cells:
        for P2, _ in B.cells:
            if _surely_disjoint(P1, P2) or not _transversal(P1, P2, n):
                continue
            I = intersect(P1, P2)
            if I.dim == d:
                candidates.append(I)
    if not candidates:
        return empty_cycle(n, d)
    pieces = refine_polyhedra(candidates)
    disp = _Displacement(n, seed)
    cache = {}
    cells = []
    for R in pieces:
        u = relative_interior_point(R)
        pairs = [(P1, w1, P2, w2) for P1, w1 in A.cells if P1.contains_poly(R)
                 for P2, w2 in B.cells if P2.contains_poly(R) and _transversal(P1, P2, n)]
        w = _local_weight(pairs, u, n, disp, cache)
        if w:
            cells.append((R, w))
    cells.sort(key=lambda c: c[0])
    return TropicalCycle(n, d, cells)


def local_multiplicity(S1: TropicalCycle, S2: TropicalCycle, u: Sequence, seed: int | None = None) -> int:
    n = S1.ambient_dim
    if S2.ambient_dim != n or S1.dim + S2.dim != n:
        raise DimensionMismatch("local multiplicity needs complementary dimensions")
    u = frac_vec(u)
    pairs = [(P1, w1, P2, w2) for P1, w1 in S1.cells if P1.contains(u)
             for P2, w2 in S2.cells if P2.contains(u) and _transversal(P1, P2, n)]
    if not pairs:
        return 0
    return _local_weight(pairs, u, n, _Displacement(n, seed), {})


def multi_stable_intersect(cycles: Sequence[TropicalCycle], seed: int | None = None) -> TropicalCycle:
    if not cycles:
        raise ValueError("need at least one cycle")
    n = cycles[0].ambient_dim
    for S in cycles:
        if S.ambient_dim != n:
            raise DimensionMismatch("ambient dimensions differ")
    out = cycles[0]
    for S in cycles[1:]:
        out = stable_intersect(out, S, seed)
    return out


# ---------------------------------------------------------------- zero cycles and degree


class ZeroCycle:
    __slots__ = ("points",)

    def __init__(self, points: Iterable = ()):
        acc = {}
        for p, w in points:
            p = frac_vec(p)
            acc[p] = acc.get(p, 0) + int(w)
        self.points = tuple(sorted((p, w) for p, w in acc.items() if w))

    @classmethod
    def from_cycle(cls, S: TropicalCycle) -> "ZeroCycle":
        if S.cells and S.dim != 0:
            raise DimensionMismatch("not a zero-dimensional cycle")
        return cls((P.vertices[0], w) for P, w in S.cells)

    def __repr__(self):
        return f"ZeroCycle({[(tuple(map(str, p)), w) for p, w in self.points]})"


def degree(Z) -> int:
    if isinstance(Z, TropicalCycle):
        Z = ZeroCycle.from_cycle(Z)
    return sum(w for _, w in Z.points)


# ---------------------------------------------------------------- recession


def recession_fan(S: TropicalCycle, fan=None) -> TropicalCycle:
    """Fan cycle of recession cones, weights summed over cells with the same cone.

    With a fan, the cycle is first decomposed along it so recession cones are
    cones of the fan.
    """
    if fan is not None:
        from .fans import delta_decomposition_cycle

        S = delta_decomposition_cycle(S, fan)
    cells = []
    for P, w in S.cells:
        C = recession_cone(P)
        if C.dim == S.dim:
            cells.append((C, w))
    return refine(TropicalCycle(S.ambient_dim, S.dim, cells))


# ---------------------------------------------------------------- components


def _components(polys: Sequence[Polyhedron]) -> list[list[int]]:
    parent = list(range(len(polys)))

    def find(i):
        while parent[i] != i:
            parent[i] = parent[parent[i]]
            i = parent[i]
        return i

    for i in range(len(polys)):
        for j in range(i + 1, len(polys)):
            if find(i) != find(j) and meets(polys[i], polys[j]):
                parent[find(i)] = find(j)
    groups = {}
    for i in range(len(polys)):
        groups.setdefault(find(i), []).append(i)
    return sorted(groups.values())


def connected_components(S) -> list:
    """Connected components, as sub-cycles (for a cycle) or polyhedron lists."""
    if isinstance(S, TropicalCycle):
        groups = _components(S.polyhedra())
        return [TropicalCycle(S.ambient_dim, S.dim, [S.cells[i] for i in g]) for g in groups]
    polys = list(S)
    return [[polys[i] for i in g] for g in _components(polys)]


def support_set_intersection(S1: TropicalCycle, S2: TropicalCycle) -> list[Polyhedron]:
    """Nonempty pairwise intersections of cells: the set |S1| ∩ |S2|."""
    out = []
    for P, _ in S1.cells:
        for Q, _ in S2.cells:
            if meets(P, Q):
                out.append(intersect(P, Q))
    return out


def restrict_to_component(S: TropicalCycle, C) -> TropicalCycle:
    """Cells of S meeting C, where C is a union of connected pieces of the support."""
    region = C.polyhedra() if isinstance(C, TropicalCycle) else list(C)
    keep = []
    for comp in connected_components(S):
        hits = [any(meets(P, R) for R in region) for P, _ in comp.cells]
        if any(hits) and not all(hits):
            raise NotAComponentUnion("region cuts through a connected component")
        if all(hits) and hits:
            keep.extend(comp.cells)
    return TropicalCycle(S.ambient_dim, S.dim, keep)


# ---------------------------------------------------------------- reduced ambient


def relative_multiplicity_in_smooth_face(S1: TropicalCycle, S2: TropicalCycle, Y: TropicalCycle,
                                         u: Sequence, seed: int | None = None) -> int:
    """Intersection multiplicity at u computed inside the lattice of a weight-one face of Y."""
    u = frac_vec(u)
    n = Y.ambient_dim
    R = refine(Y)
    face = next(((P, w) for P, w in R.cells if P.in_relint(u)), None)
    if face is None:
        raise PointNotInterior("point is not in the relative interior of a maximal face")
    if face[1] != 1:
        raise NotMultiplicityOneFace(f"face has weight {face[1]}")
    B = Lattice.of_subspace(face[0].direction_space(), n).basis
    d = len(B)

    def pull(T: Polyhedron) -> Polyhedron:
        def back(a):
            return tuple(dot(a, b) for b in B)
        return Polyhedron(d, [(back(a), 0) for a, _ in T.ineqs], [(back(a), 0) for a, _ in T.eqs])

    reduced = []
    for S in (S1, S2):
        cells = []
        for P, w in S.cells:
            if P.contains(u):
                T = pull(tangent_cone(P, u))
                if T.dim == S.dim:
                    cells.append((T, w))
        reduced.append(TropicalCycle(d, S.dim, cells))
    if reduced[0].dim + reduced[1].dim != d:
        raise DimensionMismatch("cycles are not of complementary dimension inside the face")
    return local_multiplicity(reduced[0], reduced[1], (0,) * d, seed)


def intersect_supports(cycles: Sequence[TropicalCycle]) -> list[Polyhedron]:
    """Nonempty cellwise pieces of the meet of the supports of several cycles."""
    region = cycles[0].polyhedra()
    for S in cycles[1:]:
        region = [intersect(P, Q) for P in region for Q in S.polyhedra() if meets(P, Q)]
    return region
