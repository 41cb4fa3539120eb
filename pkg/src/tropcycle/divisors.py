"""Toric divisors, tropical hypersurfaces, rational functions and Cartier products."""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Sequence

from .cycles import TropicalCycle, refine
from .errors import (
    ChartCoverGap,
    DimensionMismatch,
    NotCartier,
    NotCartierOnCycle,
    NotComplete,
    NotFullDimensional,
    SingleTerm,
    Unbounded,
)
from .fans import Fan, StratifiedCycle, is_complete
from .linalg import (
    Lattice,
    QuotientFrame,
    dot,
    frac_vec,
    integer_solve,
    lattice_index,
    primitive_generator,
    vsub,
)
from .polyhedra import (
    Polyhedron,
    faces,
    intersect,
    recession_cone,
    relative_interior_point,
)

# Orientation of the vector attached to an infinite cell. The default makes
# -v lie in the recession cone; +1 selects the opposite reading.
INFINITE_CELL_SIGN = -1


# ---------------------------------------------------------------- toric divisors


class ToricDivisor:
    __slots__ = ("fan", "coeffs")

    def __init__(self, fan: Fan, coeffs: Sequence[int]):
        if len(coeffs) != len(fan.rays):
            raise DimensionMismatch("one coefficient per ray is required")
        self.fan = fan
        self.coeffs = tuple(int(a) for a in coeffs)

    def __repr__(self):
        return f"ToricDivisor({list(self.coeffs)})"

    def __add__(self, other):
        return ToricDivisor(self.fan, [a + b for a, b in zip(self.coeffs, other.coeffs)])


def principal_divisor(m: Sequence[int], D: Fan) -> ToricDivisor:
    return ToricDivisor(D, [dot(m, u) for u in D.rays])


def prime_divisor(D: Fan, i: int) -> ToricDivisor:
    return ToricDivisor(D, [int(j == i) for j in range(len(D.rays))])


def is_cartier(Dv: ToricDivisor):
    """Map maximal cone -> m with <m, u_rho> = -a_rho on its rays, or None."""
    D = Dv.fan
    cert = {}
    for c in D.maximal_cones():
        idx = sorted(c)
        A = [list(D.rays[i]) for i in idx]
        b = [-Dv.coeffs[i] for i in idx]
        m = integer_solve(A, b, D.ambient_dim) if idx else (0,) * D.ambient_dim
        if m is None:
            return None
        cert[c] = m
    return cert


def is_ample(Dv: ToricDivisor) -> bool:
    D = Dv.fan
    if not is_complete(D):
        raise NotComplete("ampleness is defined here for complete fans")
    cert = is_cartier(Dv)
    if cert is None:
        raise NotCartier("divisor is not Cartier")
    for c, m in cert.items():
        for i, u in enumerate(D.rays):
            if i not in c and not dot(m, u) > -Dv.coeffs[i]:
                return False
    return True


def divisor_polytope(Dv: ToricDivisor) -> Polyhedron:
    D = Dv.fan
    return Polyhedron(D.ambient_dim, [(u, -a) for u, a in zip(D.rays, Dv.coeffs)])


def normal_fan(P: Polyhedron) -> Fan:
    """Fan of inner normal cones of a full-dimensional polytope."""
    n = P.ambient_dim
    if P.dim != n:
        raise NotFullDimensional("normal fan needs a full-dimensional polytope")
    if not P.is_bounded:
        raise Unbounded("normal fan needs a bounded polytope")
    rays = [tuple(int(x) for x in a) for a, _ in P.ineqs]
    maximal = []
    for v in P.vertices:
        maximal.append({i for i, (a, b) in enumerate(P.ineqs) if dot(a, v) == b})
    return Fan.from_maximal(n, rays, maximal)


# ---------------------------------------------------------------- polynomials


class TropicalPolynomial:
    """min over terms of val + <exp, x>."""

    __slots__ = ("ambient_dim", "terms")

    def __init__(self, ambient_dim: int, terms: Iterable):
        acc = {}
        for e, v in terms:
            e = tuple(int(x) for x in e)
            if len(e) != ambient_dim:
                raise DimensionMismatch("exponent length differs from ambient dimension")
            v = Fraction(v)
            acc[e] = min(acc[e], v) if e in acc else v
        if not acc:
            raise ValueError("a tropical polynomial needs at least one term")
        self.ambient_dim = ambient_dim
        self.terms = tuple(sorted(acc.items()))

    def __call__(self, x: Sequence):
        return min(v + dot(e, x) for e, v in self.terms)

    def __repr__(self):
        return f"TropicalPolynomial({[(e, str(v)) for e, v in self.terms]})"


def tropical_hypersurface(f: TropicalPolynomial) -> TropicalCycle:
    """Corner locus of f with lattice-length weights."""
    n = f.ambient_dim
    if len(f.terms) < 2:
        raise SingleTerm("a single term has empty corner locus")
    T = f.terms
    cells = {}
    for i in range(len(T)):
        for j in range(i + 1, len(T)):
            ei, vi = T[i]
            ej, vj = T[j]
            eq = (vsub(ei, ej), vj - vi)
            ineqs = [(vsub(ek, ei), vi - vk) for k, (ek, vk) in enumerate(T) if k not in (i, j)]
            C = Polyhedron(n, ineqs, [eq])
            if C.dim == n - 1 and C.key not in cells:
                cells[C.key] = C
    out = []
    for C in sorted(cells.values()):
        x = relative_interior_point(C)
        val = f(x)
        tied = [e for e, v in T if v + dot(e, x) == val]
        w = 0
        for a in range(len(tied)):
            for b in range(a + 1, len(tied)):
                g = 0
                for d in vsub(tied[a], tied[b]):
                    g = gcd(g, d)
                w = max(w, g)
        out.append((C, w))
    return TropicalCycle(n, n - 1, out)


# ---------------------------------------------------------------- rational functions


class RationalFunction:
    """Continuous piecewise integral-affine function given on covering pieces."""

    __slots__ = ("ambient_dim", "pieces")

    def __init__(self, ambient_dim: int, pieces: Iterable):
        out = []
        for P, lin, c in pieces:
            if P.ambient_dim != ambient_dim or len(lin) != ambient_dim:
                raise DimensionMismatch("piece lives in a different ambient space")
            out.append((P, tuple(int(x) for x in lin), Fraction(c)))
        self.ambient_dim = ambient_dim
        self.pieces = tuple(out)

    @classmethod
    def linear(cls, n: int, lin: Sequence[int], const=0) -> "RationalFunction":
        return cls(n, [(Polyhedron.universe(n), lin, const)])

    @classmethod
    def from_polynomial(cls, f: TropicalPolynomial) -> "RationalFunction":
        n = f.ambient_dim
        pieces = []
        for i, (e, v) in enumerate(f.terms):
            ineqs = [(vsub(ek, e), v - vk) for k, (ek, vk) in enumerate(f.terms) if k != i]
            P = Polyhedron(n, ineqs)
            if P.dim == n:
                pieces.append((P, e, v))
        return cls(n, pieces)

    def __call__(self, x: Sequence):
        x = frac_vec(x)
        for P, lin, c in self.pieces:
            if P.contains(x):
                return dot(lin, x) + c
        raise ValueError("point outside the domain")

    def piece_containing(self, P: Polyhedron):
        for Q, lin, c in self.pieces:
            if Q.contains_poly(P):
                return lin, c
        return None

    def is_continuous(self) -> bool:
        for i, (P, l1, c1) in enumerate(self.pieces):
            for Q, l2, c2 in self.pieces[i + 1:]:
                I = intersect(P, Q)
                if I.is_empty:
                    continue
                if any(dot(l1, v) + c1 != dot(l2, v) + c2 for v in I.vertices):
                    return False
                if any(dot(l1, r) != dot(l2, r) for r in I.rays + I.lines):
                    return False
        return True

    def __repr__(self):
        return f"RationalFunction(n={self.ambient_dim}, {len(self.pieces)} pieces)"


def support_function(Dv: ToricDivisor) -> RationalFunction:
    """Piecewise-linear f on the fan with f(u_rho) = a_rho."""
    D = Dv.fan
    if not is_complete(D):
        raise NotComplete("support function needs a complete fan")
    cert = is_cartier(Dv)
    if cert is None:
        raise NotCartier("divisor is not Cartier")
    return RationalFunction(D.ambient_dim, [(D.cone(c), tuple(-x for x in m), 0) for c, m in cert.items()])


def _slice_by_fan(P: Polyhedron, D: Fan) -> list[Polyhedron]:
    if not is_complete(D):
        return [P]
    out = {}
    for c in D.maximal_cones():
        Q = intersect(P, D.cone(c))
        if Q.dim == P.dim:
            out.setdefault(Q.key, Q)
    return list(out.values())


def _coords_in_frame(lin: Sequence[int], F: QuotientFrame):
    """c with lin = sum c_j Q_j, or None if lin is not in the span of the frame rows."""
    cols = [[F.Q[j][k] for j in range(F.dim)] for k in range(F.n)]
    return integer_solve(cols, list(lin), F.dim) if F.dim else (
        () if all(x == 0 for x in lin) else None)


def restrict_function_to_orbit(r: RationalFunction, tau, D: Fan):
    """The limit function on O(tau), or None when r does not restrict."""
    t = D.find_cone(tau)
    if not t:
        return r
    F = D.frame(t)
    T = D.cone(t)
    pieces = []
    for P, lin, c in r.pieces:
        for q in _slice_by_fan(P, D):
            if not recession_cone(q).contains_poly(T):
                continue
            if any(dot(lin, D.rays[i]) != 0 for i in t):
                return None
            coords = _coords_in_frame(lin, F)
            if coords is None:
                return None
            img = _image(q, F)
            if img.dim == F.dim:
                pieces.append((img, coords, c))
    return RationalFunction(F.dim, pieces)


def _image(P: Polyhedron, F: QuotientFrame) -> Polyhedron:
    from .polyhedra import image

    return image(P, F)


# ---------------------------------------------------------------- Cartier divisors


class Chart:
    """A chart region and its function.

    ``region`` maps a cone tau (frozenset of ray indices) to ``None`` (all of
    O(tau)) or to a list of polyhedra in the frame of O(tau).
    """

    __slots__ = ("region", "function")

    def __init__(self, region: dict, function: RationalFunction):
        self.region = {frozenset(k): v for k, v in region.items()}
        self.function = function

    def covers(self, tau, P: Polyhedron) -> bool:
        if tau not in self.region:
            return False
        reg = self.region[tau]
        return reg is None or any(R.contains_poly(P) for R in reg)

    def touches(self, tau, polys) -> bool:
        if tau not in self.region:
            return False
        reg = self.region[tau]
        if reg is None:
            return bool(polys)
        return any(not intersect(R, P).is_empty for R in reg for P in polys)


class CartierDivisor:
    __slots__ = ("fan", "charts")

    def __init__(self, fan: Fan, charts: Sequence[Chart]):
        self.fan = fan
        self.charts = tuple(charts)

    @classmethod
    def global_function(cls, r: RationalFunction, D: Fan, strata=None) -> "CartierDivisor":
        """One chart with the given function on the listed strata (default: N_R only)."""
        strata = [frozenset()] if strata is None else [D.find_cone(t) for t in strata]
        return cls(D, [Chart({t: None for t in strata}, r)])

    @classmethod
    def from_toric_divisor(cls, Dv: ToricDivisor) -> "CartierDivisor":
        """Local charts (U_sigma, f - <., -m_sigma>) on the affine patches of the fan."""
        D = Dv.fan
        f = support_function(Dv)
        cert = is_cartier(Dv)
        charts = []
        for c, m in cert.items():
            g = RationalFunction(D.ambient_dim, [(P, tuple(a + b for a, b in zip(lin, m)), k)
                                                 for P, lin, k in f.pieces])
            charts.append(Chart({t: None for t in D.cones if t <= c}, g))
        return cls(D, charts)


def _transition(D: Fan, tau, sigma):
    """Integer matrix M with frame_sigma(x) = M frame_tau(x)."""
    Ft, Fs = D.frame(tau), D.frame(sigma)
    cols = []
    for j in range(Ft.dim):
        e = [int(i == j) for i in range(Ft.dim)]
        cols.append(Fs.project(Ft.lift(e)))
    return [[cols[j][i] for j in range(Ft.dim)] for i in range(Fs.dim)]


def _apply(M, x):
    return tuple(sum(M[i][j] * x[j] for j in range(len(x))) for i in range(len(M)))


def _map_poly(P: Polyhedron, M, m: int) -> Polyhedron:
    return Polyhedron.from_generators(
        m,
        [_apply(M, v) for v in P.vertices],
        [_apply(M, r) for r in P.rays],
        [_apply(M, l) for l in P.lines],
    )


def _prepare_component(A: TropicalCycle, functions, star_cones) -> TropicalCycle:
    """Refine a stratum component along the star fan and the chart functions' pieces."""
    cells = list(refine(A).cells)
    maximal = [C for C in star_cones if C.dim == A.ambient_dim]
    if maximal:
        nxt = []
        for P, w in cells:
            parts = {}
            for C in maximal:
                Q = intersect(P, C)
                if Q.dim == P.dim:
                    parts.setdefault(Q.key, Q)
            nxt.extend((Q, w) for Q in parts.values())
        cells = nxt
    for g in functions:
        nxt = []
        for P, w in cells:
            parts = {}
            for Q, _, _ in g.pieces:
                R = intersect(P, Q)
                if R.dim == P.dim:
                    parts.setdefault(R.key, R)
            for R in parts.values():
                nxt.append((R, w))
        cells = nxt
    return refine(TropicalCycle(A.ambient_dim, A.dim, cells))


def cartier_intersect(phi: CartierDivisor, alpha: StratifiedCycle, D: Fan | None = None,
                      sign: int | None = None) -> StratifiedCycle:
    """Intersection product of a Cartier divisor with a stratified cycle."""
    D = D or phi.fan
    sign = INFINITE_CELL_SIGN if sign is None else sign
    out: dict = {}

    def add(t, cells, dim):
        out.setdefault(t, [dim, []])[1].extend(cells)

    for t in alpha.strata():
        A = alpha.components[t]
        k = A.dim - 1
        Ft = D.frame(t)
        m = Ft.dim
        restricted = []
        for ch in phi.charts:
            if t not in ch.region:
                continue
            g = restrict_function_to_orbit(ch.function, t, D)
            if g is None:
                if ch.touches(t, A.polyhedra()):
                    raise NotCartierOnCycle("a chart function does not restrict to a stratum it meets")
                continue
            restricted.append((ch, g))
        star = [_image(D.cone(c), Ft) for c in D.cones if t <= c]
        R = _prepare_component(A, [g for _, g in restricted], star)
        _check_overlaps(R, t, restricted)

        def chart_for(polys, extra=()):
            best = None
            for ch, g in restricted:
                if all(ch.covers(t, P) for P in polys):
                    score = sum(1 for s in extra if s in ch.region)
                    if best is None or score > best[0]:
                        best = (score, g)
            if best is None:
                raise ChartCoverGap("no chart covers a cell of the cycle")
            return best[1]

        def lin_on(g, P):
            pc = g.piece_containing(P)
            if pc is None:
                raise NotCartierOnCycle("chart function is not affine on a cell")
            return pc[0]

        # finite part
        ridges = {}
        if A.dim >= 1:
            for P, w in R.cells:
                for Q in faces(P, A.dim - 1):
                    ridges.setdefault(Q.key, [Q, []])[1].append((P, w))
        cells = []
        for Q, incident in ridges.values():
            g = chart_for([Q] + [P for P, _ in incident])
            F = QuotientFrame(Q.direction_space(), m)
            q = relative_interior_point(Q)
            total = 0
            vsum = [0] * m
            for P, w in incident:
                vbar = primitive_generator(F.project(vsub(relative_interior_point(P), q)))
                v = F.lift(vbar)
                total += w * dot(lin_on(g, P), v)
                vsum = [a + w * b for a, b in zip(vsum, v)]
            total -= dot(lin_on(g, incident[0][0]), vsum)
            if total:
                cells.append((Q, total))
        add(t, cells, k)

        # infinite cells in deeper strata
        for s in D.cones:
            if not (t < s):
                continue
            sbar = _image(D.cone(s), Ft)
            M = _transition(D, t, s)
            ms = len(M)
            scells = []
            for P, w in R.cells:
                rho = recession_cone(P)
                I = intersect(rho, sbar)
                if I.is_empty or not sbar.in_relint(relative_interior_point(I)):
                    continue
                Pp = _map_poly(P, M, ms)
                if Pp.dim != P.dim - 1:
                    continue
                ray = I.rays[0] if I.rays else None
                if ray is None:
                    continue
                v = tuple(sign * x for x in ray)
                g = chart_for([P], extra=[s])
                LP = Lattice.of_subspace(P.direction_space(), m)
                img = Lattice([_apply(M, b) for b in LP.basis], ms)
                sup = Lattice.of_subspace(Pp.direction_space(), ms)
                idx = lattice_index(img, sup)
                wt = w * idx * dot(lin_on(g, P), v)
                if wt:
                    scells.append((Pp, wt))
            add(s, scells, k)

    comps = {}
    for t, (dim, cells) in out.items():
        m = D.frame(t).dim
        if cells:
            comps[t] = refine(TropicalCycle(m, dim, cells))
    return StratifiedCycle(D, comps)


def _check_overlaps(R: TropicalCycle, t, restricted):
    """Charts meeting on a cell must differ by one affine function on their overlap."""
    for i in range(len(restricted)):
        for j in range(i + 1, len(restricted)):
            (c1, g1), (c2, g2) = restricted[i], restricted[j]
            diff = set()
            for P, _ in R.cells:
                if c1.covers(t, P) and c2.covers(t, P):
                    a, b = g1.piece_containing(P), g2.piece_containing(P)
                    if a is None or b is None:
                        continue
                    diff.add((tuple(x - y for x, y in zip(a[0], b[0])), a[1] - b[1]))
            if len(diff) > 1:
                raise NotCartierOnCycle("charts do not differ by a single affine function")


def skeleton_divisor_check(Dv: ToricDivisor) -> TropicalCycle:
    """Hypersurface of min <x, m_sigma>; asserts its support is the codim-1 skeleton."""
    if not is_ample(Dv):
        raise NotCartier("divisor is not ample")
    D = Dv.fan
    cert = is_cartier(Dv)
    f = TropicalPolynomial(D.ambient_dim, [(m, 0) for m in cert.values()])
    H = tropical_hypersurface(f)
    n = D.ambient_dim
    ones = TropicalCycle(n, n - 1, [(P, 1) for P, _ in H.cells])
    skel = TropicalCycle(n, n - 1, [(D.cone(c), 1) for c in D.cones_of_dim(n - 1)])
    if not ones.equals(skel):
        raise AssertionError("hypersurface support differs from the codimension-one skeleton")
    return H
