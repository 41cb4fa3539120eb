"""Rational polyhedra in H-representation with exact canonical forms.

A polyhedron is ``{x : a.x >= b for (a, b) in ineqs, a.x = b for (a, b) in eqs}``.
Construction always canonicalizes: implicit equalities are promoted, redundant
inequalities dropped, and the remaining data normalised so that two equal
sets get equal keys. The generator description (vertices, extreme rays,
lineality basis) is computed along the way and kept.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Sequence

from .errors import DimensionMismatch, EmptyPolyhedron
from .linalg import (
    QuotientFrame,
    clear_denominators,
    dot,
    frac_vec,
    is_zero,
    nullspace,
    primitive_generator,
    rank,
    rref,
    solve,
    vadd,
    vsub,
)


def _normalize_row(a: Sequence[Fraction], b: Fraction):
    """Scale (a, b) by a positive factor so that a is a primitive integer vector."""
    p = primitive_generator(a)
    i = next(k for k, x in enumerate(a) if x != 0)
    f = Fraction(p[i]) / a[i]
    return p, b * f


def _enumerate(n, ineqs, eqs):
    """Vertices, extreme rays and lineality basis, or None when empty."""
    if eqs:
        aug = [list(a) + [b] for a, b in eqs]
        R, piv = rref(aug, n + 1)
        if n in piv:
            return None
        p0 = [Fraction(0)] * n
        for row, p in zip(R, piv):
            p0[p] = row[n]
        D = nullspace([row[:n] for row in R], n)
    else:
        p0 = [Fraction(0)] * n
        D = [tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
    d = len(D)
    best = {}
    for a, b in ineqs:
        a2 = tuple(dot(a, Dj) for Dj in D)
        b2 = b - dot(a, p0)
        if is_zero(a2):
            if b2 > 0:
                return None
            continue
        a2, b2 = _normalize_row(a2, b2)
        if a2 not in best or best[a2] < b2:
            best[a2] = b2
    A = list(best.keys())
    B = [best[a] for a in A]
    m = len(A)
    lin = nullspace(A, d) if A else [tuple(Fraction(int(i == j)) for j in range(d)) for i in range(d)]
    r = d - len(lin)
    lin_rows = [list(v) for v in lin]

    def feasible(t):
        return all(dot(a, t) >= b for a, b in zip(A, B))

    verts = []
    seen = set()
    for S in combinations(range(m), r):
        rows = [A[i] for i in S]
        if r and rank(rows) < r:
            continue
        t = solve(rows + lin_rows, [B[i] for i in S] + [0] * len(lin_rows), d)
        if t is None or t in seen or not feasible(t):
            continue
        seen.add(t)
        verts.append(t)
    if not verts:
        return None
    rays = []
    seen = set()
    if r >= 1:
        for S in combinations(range(m), r - 1):
            rows = [A[i] for i in S]
            if r > 1 and rank(rows) < r - 1:
                continue
            ns = nullspace(rows + lin_rows, d)
            if len(ns) != 1:
                continue
            y = ns[0]
            for sgn in (1, -1):
                z = tuple(sgn * c for c in y)
                if all(dot(a, z) >= 0 for a in A):
                    key = primitive_generator(z)
                    if key not in seen:
                        seen.add(key)
                        rays.append(key)
                    break

    def lift_pt(t):
        return tuple(p0[k] + sum(t[j] * D[j][k] for j in range(d)) for k in range(n))

    def lift_dir(t):
        return primitive_generator(tuple(sum(t[j] * D[j][k] for j in range(d)) for k in range(n)))

    return (
        [lift_pt(t) for t in verts],
        [lift_dir(y) for y in rays],
        [lift_dir(y) for y in lin],
    )


class Polyhedron:
    __slots__ = ("ambient_dim", "ineqs", "eqs", "dim", "vertices", "rays", "lines", "_key")

    def __init__(self, ambient_dim: int, ineqs: Iterable = (), eqs: Iterable = ()):
        n = ambient_dim
        iq = []
        for a, b in ineqs:
            if len(a) != n:
                raise DimensionMismatch("inequality length differs from ambient dimension")
            iq.append((frac_vec(a), Fraction(b)))
        eq = []
        for a, b in eqs:
            if len(a) != n:
                raise DimensionMismatch("equality length differs from ambient dimension")
            eq.append((frac_vec(a), Fraction(b)))
        self.ambient_dim = n
        gens = _enumerate(n, iq, eq)
        if gens is None:
            self._set_empty()
            return
        V, R, L = gens
        self.vertices, self.rays, self.lines = tuple(V), tuple(R), tuple(L)
        v0 = V[0]
        dirs = [vsub(v, v0) for v in V[1:]] + list(R) + list(L)
        perp = nullspace(dirs, n) if dirs else [
            tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)]
        self.dim = n - len(perp)
        aug = [list(w) + [dot(w, v0)] for w in perp]
        E, piv = rref(aug, n + 1) if aug else ([], [])
        self.eqs = tuple((tuple(row[:n]), row[n]) for row in E)

        facets = {}
        for a, b in iq:
            tv = [v for v in V if dot(a, v) == b]
            if not tv:
                continue
            tr = [r for r in R if dot(a, r) == 0]
            if len(tv) == len(V) and len(tr) == len(R):
                continue
            fdirs = [vsub(v, tv[0]) for v in tv[1:]] + tr + list(L)
            if (rank(fdirs) if fdirs else 0) != self.dim - 1:
                continue
            sig = (frozenset(tv), frozenset(tr))
            if sig in facets:
                continue
            a2 = list(a)
            b2 = b
            for (row, p) in zip(E, piv):
                c = a2[p]
                if c:
                    a2 = [x - c * y for x, y in zip(a2, row[:n])]
                    b2 -= c * row[n]
            facets[sig] = _normalize_row(tuple(a2), b2)
        self.ineqs = tuple(sorted((tuple(Fraction(x) for x in a), b) for a, b in facets.values()))
        self._key = (n, self.eqs, self.ineqs)

    def _set_empty(self):
        n = self.ambient_dim
        self.vertices, self.rays, self.lines = (), (), ()
        self.dim = -1
        self.eqs = ((tuple([Fraction(0)] * n), Fraction(1)),)
        self.ineqs = ()
        self._key = (n, "empty")

    # ------------------------------------------------------------ builders

    @classmethod
    def from_generators(cls, n: int, points: Sequence, rays: Sequence = (),
                        lines: Sequence = ()) -> "Polyhedron":
        """conv(points) + cone(rays) + span(lines)."""
        if not points:
            return cls.empty(n)
        gens = [(Fraction(1),) + frac_vec(p) for p in points]
        gens += [(Fraction(0),) + frac_vec(r) for r in rays]
        for l in lines:
            gens.append((Fraction(0),) + frac_vec(l))
            gens.append((Fraction(0),) + tuple(-Fraction(x) for x in l))
        dual = _enumerate(n + 1, [(g, 0) for g in gens], [])
        _, Y, Ly = dual
        ineqs = [(y[1:], -y[0]) for y in Y]
        eqs = [(l[1:], -l[0]) for l in Ly]
        return cls(n, ineqs, eqs)

    @classmethod
    def point(cls, p: Sequence) -> "Polyhedron":
        n = len(p)
        return cls(n, (), [(tuple(int(i == j) for j in range(n)), p[i]) for i in range(n)])

    @classmethod
    def universe(cls, n: int) -> "Polyhedron":
        return cls(n)

    @classmethod
    def empty(cls, n: int) -> "Polyhedron":
        return cls(n, (), [([0] * n, 1)])

    @classmethod
    def cone(cls, n: int, rays: Sequence, lines: Sequence = ()) -> "Polyhedron":
        return cls.from_generators(n, [(0,) * n], rays, lines)

    # ------------------------------------------------------------ queries

    @property
    def is_empty(self) -> bool:
        return self.dim < 0

    @property
    def key(self):
        return self._key

    def __eq__(self, other):
        return isinstance(other, Polyhedron) and self._key == other._key

    def __hash__(self):
        return hash(self._key)

    def __lt__(self, other):
        return repr(self._key) < repr(other._key)

    def __repr__(self):
        if self.is_empty:
            return f"Polyhedron(empty in R^{self.ambient_dim})"
        return (f"Polyhedron(dim={self.dim}, vertices={[tuple(map(str, v)) for v in self.vertices]}, "
                f"rays={list(self.rays)}, lines={list(self.lines)})")

    @property
    def is_bounded(self) -> bool:
        return not self.rays and not self.lines

    @property
    def is_cone(self) -> bool:
        return not self.is_empty and all(b == 0 for _, b in self.ineqs + self.eqs)

    def contains(self, x: Sequence) -> bool:
        return all(dot(a, x) == b for a, b in self.eqs) and all(dot(a, x) >= b for a, b in self.ineqs)

    def in_relint(self, x: Sequence) -> bool:
        return all(dot(a, x) == b for a, b in self.eqs) and all(dot(a, x) > b for a, b in self.ineqs)

    def direction_space(self) -> list[tuple[int, ...]]:
        """Integer basis of the linear space parallel to the affine hull."""
        if self.is_empty:
            return []
        return [clear_denominators(v) for v in nullspace([a for a, _ in self.eqs], self.ambient_dim)]

    def lineality(self) -> list[tuple[int, ...]]:
        return list(self.lines)

    def contains_poly(self, other: "Polyhedron") -> bool:
        if other.is_empty:
            return True
        if self.is_empty:
            return False
        return (all(self.contains(v) for v in other.vertices)
                and all(self.recession_contains(r) for r in other.rays)
                and all(self.recession_contains(l) and self.recession_contains([-x for x in l])
                        for l in other.lines))

    def recession_contains(self, r: Sequence) -> bool:
        return all(dot(a, r) == 0 for a, _ in self.eqs) and all(dot(a, r) >= 0 for a, _ in self.ineqs)

    def facets(self) -> list["Polyhedron"]:
        out = []
        for i, (a, b) in enumerate(self.ineqs):
            rest = self.ineqs[:i] + self.ineqs[i + 1:]
            out.append(Polyhedron(self.ambient_dim, rest, self.eqs + ((a, b),)))
        return out


# ---------------------------------------------------------------- operations


def canonicalize(P: Polyhedron) -> Polyhedron:
    return Polyhedron(P.ambient_dim, P.ineqs, P.eqs)


@lru_cache(maxsize=1 << 16)
def intersect(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    if P.ambient_dim != Q.ambient_dim:
        raise DimensionMismatch("ambient dimensions differ")
    if P.is_empty:
        return P
    if Q.is_empty:
        return Q
    return Polyhedron(P.ambient_dim, P.ineqs + Q.ineqs, P.eqs + Q.eqs)


@lru_cache(maxsize=1 << 16)
def recession_cone(P: Polyhedron) -> Polyhedron:
    if P.is_empty:
        raise EmptyPolyhedron("recession cone of the empty polyhedron")
    return Polyhedron(P.ambient_dim, [(a, 0) for a, _ in P.ineqs], [(a, 0) for a, _ in P.eqs])


def faces(P: Polyhedron, k: int) -> list[Polyhedron]:
    if P.is_empty or k > P.dim or k < len(P.lines):
        return []
    level = [P]
    for _ in range(P.dim - k):
        nxt = {}
        for F in level:
            for G in F.facets():
                nxt.setdefault(G.key, G)
        level = sorted(nxt.values())
    return level


def all_faces(P: Polyhedron) -> list[Polyhedron]:
    out = []
    for k in range(len(P.lines), P.dim + 1):
        out.extend(faces(P, k))
    return out


def relative_interior_point(P: Polyhedron) -> tuple[Fraction, ...]:
    if P.is_empty:
        raise EmptyPolyhedron("empty polyhedron has no interior point")
    n = P.ambient_dim
    c = [sum((v[i] for v in P.vertices), Fraction(0)) / len(P.vertices) for i in range(n)]
    for r in P.rays:
        c = [x + y for x, y in zip(c, r)]
    return tuple(c)


def thicken(P: Polyhedron, eps) -> Polyhedron:
    eps = Fraction(eps)
    if P.is_empty:
        return P
    ineqs = [(a, b - eps) for a, b in P.ineqs]
    for a, b in P.eqs:
        ineqs.append((a, b - eps))
        ineqs.append((tuple(-x for x in a), -b - eps))
    return Polyhedron(P.ambient_dim, ineqs)


def translate(P: Polyhedron, v: Sequence) -> Polyhedron:
    if P.is_empty:
        return P
    return Polyhedron(P.ambient_dim,
                      [(a, b + dot(a, v)) for a, b in P.ineqs],
                      [(a, b + dot(a, v)) for a, b in P.eqs])


def minkowski_add_span(P: Polyhedron, span: Sequence) -> Polyhedron:
    if P.is_empty:
        return P
    return Polyhedron.from_generators(P.ambient_dim, P.vertices, P.rays, list(P.lines) + list(span))


def cone_span(tau) -> list:
    """Linear span of a cone given as a Polyhedron or as a list of generators."""
    if isinstance(tau, Polyhedron):
        return tau.direction_space()
    return [v for v in tau if not is_zero(v)]


def image(P: Polyhedron, frame: QuotientFrame) -> Polyhedron:
    m = frame.dim
    if P.is_empty:
        return Polyhedron.empty(m)
    return Polyhedron.from_generators(
        m,
        [frame.project(v) for v in P.vertices],
        [frame.project(r) for r in P.rays],
        [frame.project(l) for l in P.lines],
    )


def project(P: Polyhedron, tau) -> Polyhedron:
    """Image of P in R^n / span(tau), in the deterministic quotient frame."""
    return image(P, QuotientFrame(cone_span(tau), P.ambient_dim))


def preimage(P: Polyhedron, frame: QuotientFrame) -> Polyhedron:
    """{x in R^n : frame(x) in P}."""
    n = frame.n

    def pull(a):
        return tuple(sum((a[j] * frame.Q[j][k] for j in range(frame.dim)), Fraction(0)) for k in range(n))

    if P.is_empty:
        return Polyhedron.empty(n)
    return Polyhedron(n, [(pull(a), b) for a, b in P.ineqs], [(pull(a), b) for a, b in P.eqs])


def affine_hull(P: Polyhedron) -> Polyhedron:
    return Polyhedron(P.ambient_dim, (), P.eqs)


def tangent_cone(P: Polyhedron, u: Sequence) -> Polyhedron:
    """Cone of directions from u into P (u assumed in P)."""
    ineqs = [(a, 0) for a, b in P.ineqs if dot(a, u) == b]
    return Polyhedron(P.ambient_dim, ineqs, [(a, 0) for a, _ in P.eqs])


def linear_sum(P: Polyhedron, Q: Polyhedron) -> Polyhedron:
    """Minkowski sum of two polyhedra."""
    n = P.ambient_dim
    if P.is_empty or Q.is_empty:
        return Polyhedron.empty(n)
    pts = [vadd(p, q) for p in P.vertices for q in Q.vertices]
    return Polyhedron.from_generators(n, pts, P.rays + Q.rays, P.lines + Q.lines)


def negate(P: Polyhedron) -> Polyhedron:
    if P.is_empty:
        return P
    return Polyhedron(P.ambient_dim,
                      [(tuple(-x for x in a), b) for a, b in P.ineqs],
                      [(tuple(-x for x in a), b) for a, b in P.eqs])
