"""Rational fans, strata of the associated tropical toric variety, boundary cycles."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .cycles import (
    TropicalCycle,
    degree,
    empty_cycle,
    recession_fan,
    refine,
    stable_intersect,
)
from .errors import (
    ConeNotInFan,
    DimensionMismatch,
    DirectionOutsideSupport,
    FrameMismatch,
    InvalidFan,
    NotCompactifying,
    NotCompatible,
)
from .linalg import (
    Lattice,
    QuotientFrame,
    frac_vec,
    is_zero,
    lattice_index,
    primitive_generator,
    rank,
)
from .polyhedra import (
    Polyhedron,
    all_faces,
    faces,
    image,
    intersect,
    recession_cone,
    relative_interior_point,
    thicken,
)

Cone = frozenset


class Fan:
    """A pointed rational fan with every face listed.

    ``rays`` are primitive integer vectors and each cone is a frozenset of ray
    indices; the zero cone is the empty set.
    """

    def __init__(self, ambient_dim: int, rays: Sequence[Sequence[int]], cones: Iterable[Iterable[int]],
                 check: bool = True):
        self.ambient_dim = ambient_dim
        self.rays = tuple(tuple(int(x) for x in r) for r in rays)
        for r in self.rays:
            if len(r) != ambient_dim:
                raise DimensionMismatch("ray length differs from ambient dimension")
            if is_zero(r) or primitive_generator(r) != r:
                raise InvalidFan(f"ray {r} is not a primitive vector")
        cs = {frozenset(c) for c in cones}
        cs.add(frozenset())
        for c in cs:
            if any(i < 0 or i >= len(self.rays) for i in c):
                raise InvalidFan("cone refers to an unknown ray")
        self.cones = tuple(sorted(cs, key=lambda c: (len(c), sorted(c))))
        self._poly = {}
        if check:
            self._validate()

    @classmethod
    def from_maximal(cls, ambient_dim: int, rays, maximal) -> "Fan":
        rays = [tuple(int(x) for x in r) for r in rays]
        cones = set()
        for c in maximal:
            c = frozenset(c)
            P = Polyhedron.cone(ambient_dim, [rays[i] for i in c])
            for F in all_faces(P):
                cones.add(frozenset(i for i in c if F.contains(rays[i])))
        return cls(ambient_dim, rays, cones)

    def _validate(self):
        bad = fan_violations(self)
        if bad:
            raise InvalidFan(bad[0])

    def __repr__(self):
        return f"Fan(n={self.ambient_dim}, rays={list(self.rays)}, {len(self.cones)} cones)"

    def __eq__(self, other):
        if not isinstance(other, Fan) or other.ambient_dim != self.ambient_dim:
            return False
        return {self.cone(c) for c in self.cones} == {other.cone(c) for c in other.cones}

    def __hash__(self):
        return hash((self.ambient_dim, frozenset(self.cone(c) for c in self.cones)))

    def cone(self, c: Iterable[int]) -> Polyhedron:
        c = frozenset(c)
        if c not in self._poly:
            self._poly[c] = Polyhedron.cone(self.ambient_dim, [self.rays[i] for i in c])
        return self._poly[c]

    def dim_of(self, c) -> int:
        return self.cone(c).dim

    def cones_of_dim(self, k: int) -> list:
        return [c for c in self.cones if self.dim_of(c) == k]

    def maximal_cones(self) -> list:
        return [c for c in self.cones if not any(c < d for d in self.cones)]

    def ray_index(self, v: Sequence) -> int:
        p = primitive_generator(v)
        try:
            return self.rays.index(p)
        except ValueError:
            raise ConeNotInFan(f"{p} is not a ray of the fan") from None

    def find_cone(self, tau) -> frozenset:
        """Normalise a cone given as ray indices, a list of ray vectors or a Polyhedron."""
        if isinstance(tau, Polyhedron):
            for c in self.cones:
                if self.cone(c) == tau:
                    return c
            raise ConeNotInFan("polyhedron is not a cone of the fan")
        tau = list(tau)
        if all(isinstance(x, int) for x in tau):
            c = frozenset(tau)
        else:
            c = frozenset(self.ray_index(v) for v in tau)
        if c not in self.cones:
            raise ConeNotInFan(f"{sorted(c)} is not a cone of the fan")
        return c

    def cone_with_relint(self, v: Sequence):
        for c in self.cones:
            if self.cone(c).in_relint(v):
                return c
        return None

    def span(self, c) -> list:
        return [self.rays[i] for i in c]

    def frame(self, c) -> QuotientFrame:
        return QuotientFrame(self.span(c), self.ambient_dim)


def fan_violations(D: Fan) -> list[str]:
    """Human-readable list of broken fan axioms (empty for a valid fan)."""
    bad = []
    for c in D.cones:
        P = D.cone(c)
        if P.lines:
            bad.append(f"cone {sorted(c)} is not pointed")
            continue
        if set(P.rays) != {D.rays[i] for i in c}:
            bad.append(f"cone {sorted(c)} is not generated by its rays as extreme rays")
            continue
        for F in all_faces(P):
            fr = frozenset(i for i in c if F.contains(D.rays[i]))
            if fr not in D.cones:
                bad.append(f"face {sorted(fr)} of cone {sorted(c)} is missing")
    mx = D.maximal_cones()
    for i, a in enumerate(mx):
        for b in mx[i + 1:]:
            if intersect(D.cone(a), D.cone(b)) != D.cone(a & b):
                bad.append(f"cones {sorted(a)} and {sorted(b)} do not meet in a common face")
    return bad


# ---------------------------------------------------------------- standard fans


def projective_space_fan(n: int) -> Fan:
    rays = [tuple(int(i == j) for j in range(n)) for i in range(n)] + [tuple([-1] * n)]
    maximal = [set(range(n + 1)) - {i} for i in range(n + 1)]
    return Fan.from_maximal(n, rays, maximal)


def product_p1_fan(n: int = 2) -> Fan:
    rays = []
    for i in range(n):
        for s in (1, -1):
            rays.append(tuple(s * int(i == j) for j in range(n)))
    maximal = []
    for mask in range(2 ** n):
        maximal.append({2 * i + ((mask >> i) & 1) for i in range(n)})
    return Fan.from_maximal(n, rays, maximal)


def hirzebruch_fan(a: int) -> Fan:
    rays = [(1, 0), (0, 1), (-1, -a), (0, -1)]
    return Fan.from_maximal(2, rays, [{0, 1}, {1, 2}, {2, 3}, {3, 0}])


def trivial_fan(n: int) -> Fan:
    return Fan(n, [], [])


# ---------------------------------------------------------------- predicates


def is_unimodular(D: Fan) -> bool:
    n = D.ambient_dim
    for c in D.cones:
        vs = D.span(c)
        if rank(vs) != len(vs):
            return False
        if vs and lattice_index(Lattice(vs, n), Lattice.of_subspace(vs, n)) != 1:
            return False
    return True


def is_complete(D: Fan) -> bool:
    n = D.ambient_dim
    mx = D.maximal_cones()
    if any(D.dim_of(c) != n for c in mx):
        return False
    if n == 0:
        return True
    for r in D.cones_of_dim(n - 1):
        if sum(1 for c in mx if r < c) != 2:
            return False
    return True


def _compatible_pair(sigma: Polyhedron, rho: Polyhedron) -> bool:
    I = intersect(sigma, rho)
    if I == sigma:
        return True
    return not sigma.in_relint(relative_interior_point(I))


def compatibility_violation(D: Fan, polys: Iterable[Polyhedron]):
    """First (cone, polyhedron) pair breaking the compatibility dichotomy, or None."""
    for P in polys:
        rho = recession_cone(P)
        for c in D.cones:
            if not _compatible_pair(D.cone(c), rho):
                return c, P
    return None


def is_compatible(D: Fan, polys: Iterable[Polyhedron]) -> bool:
    return compatibility_violation(D, polys) is None


def _covers(region: Polyhedron, pieces: Sequence[Polyhedron]) -> bool:
    """Whether pieces (non-overlapping, inside region, of its dimension) cover it."""
    k = region.dim
    pieces = [Q for Q in pieces if Q.dim == k]
    if not pieces:
        return False
    if any(Q == region for Q in pieces):
        return True
    if k == 0:
        return False
    count = {}
    for Q in pieces:
        for R in faces(Q, k - 1):
            count.setdefault(R.key, [R, 0])[1] += 1
    for R, m in count.values():
        if m < 2 and region.in_relint(relative_interior_point(R)):
            return False
    return True


def is_compactifying(D: Fan, polys: Iterable[Polyhedron]) -> bool:
    for P in polys:
        rho = recession_cone(P)
        inside = [D.cone(c) for c in D.cones if rho.contains_poly(D.cone(c))]
        if not _covers(rho, inside):
            return False
    return True


# ---------------------------------------------------------------- decompositions


def _slice(P: Polyhedron, D: Fan) -> list[Polyhedron]:
    out = {}
    for c in D.maximal_cones():
        Q = intersect(P, D.cone(c))
        if Q.dim == P.dim:
            out.setdefault(Q.key, Q)
    return sorted(out.values())


def _decompose_one(P: Polyhedron, D: Fan, shortcut: bool) -> list[Polyhedron]:
    if shortcut:
        if P.is_bounded:
            return [P]
        rho = recession_cone(P)
        if any(D.cone(c) == rho for c in D.cones):
            return [P]
    pieces = _slice(P, D)
    if not _covers(P, pieces):
        raise NotCompactifying("fan slices do not cover the polyhedron")
    for Q in pieces:
        rho = recession_cone(Q)
        if not any(D.cone(c) == rho for c in D.cones):
            raise NotCompactifying("a slice has a recession cone outside the fan")
    return pieces


def delta_decomposition(polys: Sequence[Polyhedron], D: Fan) -> list[Polyhedron]:
    """Subdivide each polyhedron so every piece has a recession cone in D."""
    polys = list(polys)
    if not is_compactifying(D, polys):
        raise NotCompactifying("fan is not compactifying for the collection")
    out = []
    for P in polys:
        out.extend(_decompose_one(P, D, True))
    return out


def delta_decomposition_cycle(S: TropicalCycle, D: Fan) -> TropicalCycle:
    """Refinement of S whose cells all have recession cones in D and form a complex."""
    R = refine(S)
    cells = []
    for P, w in R.cells:
        for Q in _decompose_one(P, D, False):
            cells.append((Q, w))
    return TropicalCycle(S.ambient_dim, S.dim, cells)


def delta_thickening(polys: Sequence[Polyhedron], D: Fan, eps) -> list[Polyhedron]:
    eps = Fraction(eps)
    pieces = delta_decomposition(polys, D)
    out = []
    for Q in pieces:
        T = thicken(Q, eps)
        if recession_cone(T) != recession_cone(Q) or not all(T.in_relint(v) for v in Q.vertices):
            raise NotCompactifying("thickened piece does not contain its piece in the interior")
        out.append(T)
    return out


# ---------------------------------------------------------------- stars and strata


def star_fan_quotient(S: Fan, tau) -> Fan:
    """Images in R^n / span(tau) of the cones containing tau."""
    t = S.find_cone(tau)
    F = S.frame(t)
    m = F.dim
    rays = []
    cones = []
    for c in S.cones:
        if not t <= c:
            continue
        img = image(S.cone(c), F)
        idx = set()
        for r in img.rays:
            if r not in rays:
                rays.append(r)
            idx.add(rays.index(r))
        cones.append(idx)
    return Fan(m, rays, cones)


def star_fan_ambient(S: Fan, tau) -> list[Polyhedron]:
    """Cones sigma + span(tau) in R^n for the cones sigma containing tau.

    These contain span(tau) and so are not pointed; they are returned as a
    list of polyhedra rather than a Fan.
    """
    t = S.find_cone(tau)
    lines = S.span(t)
    out = []
    for c in S.cones:
        if t <= c:
            out.append(Polyhedron.cone(S.ambient_dim, S.span(c), lines))
    return out


def limit_point(x: Sequence, v: Sequence, D: Fan):
    """Limit of x + lambda v as lambda -> infinity: (cone, point of its stratum)."""
    x, v = frac_vec(x), frac_vec(v)
    if is_zero(v):
        return frozenset(), x
    c = D.cone_with_relint(v)
    if c is None:
        raise DirectionOutsideSupport("direction is not in the support of the fan")
    return c, D.frame(c).project(x)


class StratifiedCycle:
    """A family of cycles, one per cone tau, living in the stratum O(tau)."""

    def __init__(self, fan: Fan, components: dict | None = None):
        self.fan = fan
        self.components = {}
        for tau, S in (components or {}).items():
            t = fan.find_cone(tau)
            if S.ambient_dim != fan.ambient_dim - fan.dim_of(t):
                raise FrameMismatch("component lives in the wrong stratum dimension")
            if S.cells:
                self.components[t] = S

    def __getitem__(self, tau) -> TropicalCycle:
        t = self.fan.find_cone(tau)
        if t in self.components:
            return self.components[t]
        return empty_cycle(self.fan.ambient_dim - self.fan.dim_of(t), 0)

    def strata(self):
        return sorted(self.components, key=lambda c: (len(c), sorted(c)))

    def __repr__(self):
        return f"StratifiedCycle({ {tuple(sorted(t)): S for t, S in self.components.items()} })"


def boundary_cycle(S: TropicalCycle, tau, D: Fan) -> TropicalCycle:
    """The cycle cut out by the closure of S on the stratum O(tau)."""
    t = D.find_cone(tau)
    if not t:
        return S
    R = refine(S)
    bad = compatibility_violation(D, R.polyhedra())
    if bad is not None:
        raise NotCompatible("fan is not compatible with the cycle", cone=bad[0], polyhedron=bad[1])
    k = D.dim_of(t)
    F = D.frame(t)
    T = D.cone(t)
    cells = []
    for P, w in delta_decomposition_cycle(R, D).cells:
        if recession_cone(P).contains_poly(T):
            cells.append((image(P, F), w))
    if not cells:
        return empty_cycle(F.dim, S.dim - k)
    return refine(TropicalCycle(F.dim, S.dim - k, cells))


def boundary_cycles(S: TropicalCycle, D: Fan) -> StratifiedCycle:
    return StratifiedCycle(D, {c: boundary_cycle(S, c, D) for c in D.cones})


def compactified_stable_intersect(gamma: TropicalCycle, S: TropicalCycle, D: Fan, tau=(),
                                  seed: int | None = None) -> TropicalCycle:
    t = D.find_cone(tau)
    if gamma.ambient_dim != D.ambient_dim - D.dim_of(t):
        raise FrameMismatch("gamma does not live in the stratum of tau")
    return stable_intersect(gamma, boundary_cycle(S, t, D), seed)


def recession_degree_check(gamma: TropicalCycle, S: TropicalCycle, D: Fan, tau=(),
                           seed: int | None = None) -> tuple[int, int]:
    if gamma.dim + S.dim != D.ambient_dim:
        raise DimensionMismatch("cycles are not of complementary dimension")
    rho = recession_fan(S, D)
    return (degree(compactified_stable_intersect(gamma, S, D, tau, seed)),
            degree(compactified_stable_intersect(gamma, rho, D, tau, seed)))
