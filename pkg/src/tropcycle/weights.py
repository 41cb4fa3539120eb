"""Minkowski weights on complete fans and their products.

The product uses the fan displacement rule directly on cones of the fan; it
does not go through stable intersection of cycles, so the two can be checked
against each other.
"""

from __future__ import annotations

import random
from typing import Sequence

from .cycles import TropicalCycle, default_seed, degree as cycle_degree, recession_fan
from .errors import FanMismatch, NotCompatible, NotComplete, WrongCodim
from .fans import Fan, StratifiedCycle, compatibility_violation, is_complete
from .linalg import dot, primitive_generator, rank, sum_index
from .polyhedra import Polyhedron, relative_interior_point


class MinkowskiWeight:
    __slots__ = ("fan", "codim", "values")

    def __init__(self, fan: Fan, codim: int, values: dict | None = None):
        if not is_complete(fan):
            raise NotComplete("Minkowski weights need a complete fan")
        self.fan = fan
        self.codim = codim
        n = fan.ambient_dim
        vals = {}
        for c, w in (values or {}).items():
            c = fan.find_cone(c)
            if fan.dim_of(c) != n - codim:
                raise WrongCodim("cone of the wrong codimension")
            if int(w):
                vals[c] = vals.get(c, 0) + int(w)
        self.values = {c: w for c, w in vals.items() if w}

    def __getitem__(self, c) -> int:
        return self.values.get(self.fan.find_cone(c), 0)

    def __eq__(self, other):
        return (isinstance(other, MinkowskiWeight) and self.fan == other.fan
                and self.codim == other.codim and self.values == other.values)

    def __repr__(self):
        return f"MinkowskiWeight(codim={self.codim}, {[(sorted(c), w) for c, w in sorted(self.values.items(), key=lambda x: sorted(x[0]))]})"

    def __add__(self, other):
        _same_fan(self, other)
        vals = dict(self.values)
        for c, w in other.values.items():
            vals[c] = vals.get(c, 0) + w
        return MinkowskiWeight(self.fan, self.codim, vals)

    def scaled(self, k: int):
        return MinkowskiWeight(self.fan, self.codim, {c: k * w for c, w in self.values.items()})


def fundamental_weight(D: Fan) -> MinkowskiWeight:
    n = D.ambient_dim
    return MinkowskiWeight(D, 0, {c: 1 for c in D.cones_of_dim(n)})


def mw_balancing_violations(c: MinkowskiWeight) -> list:
    D = c.fan
    n = D.ambient_dim
    k = n - c.codim
    if k <= 0:
        return []
    bad = []
    for t in D.cones_of_dim(k - 1):
        F = D.frame(t)
        total = [0] * F.dim
        for s in D.cones_of_dim(k):
            if t < s and s in c.values:
                v = F.project(relative_interior_point(D.cone(s)))
                u = primitive_generator(v)
                total = [a + c.values[s] * b for a, b in zip(total, u)]
        if any(total):
            bad.append((t, tuple(total)))
    return bad


def is_mw_balanced(c: MinkowskiWeight) -> bool:
    return not mw_balancing_violations(c)


def _same_fan(a: MinkowskiWeight, b: MinkowskiWeight):
    if a.fan is not b.fan and a.fan != b.fan:
        raise FanMismatch("weights live on different fans")


def _difference_cone(D: Fan, s1, s2) -> Polyhedron:
    n = D.ambient_dim
    gens = list(D.span(s1)) + [tuple(-x for x in D.rays[i]) for i in s2]
    return Polyhedron.cone(n, gens)


def mw_product(c1: MinkowskiWeight, c2: MinkowskiWeight, seed: int | None = None) -> MinkowskiWeight:
    """Fan displacement product of Minkowski weights."""
    _same_fan(c1, c2)
    D = c1.fan
    n = D.ambient_dim
    k = c1.codim + c2.codim
    if k > n:
        return MinkowskiWeight(D, n, {})
    rng = random.Random(default_seed() if seed is None else seed)
    pairs = []
    for s1, w1 in c1.values.items():
        for s2, w2 in c2.values.items():
            pairs.append((s1, w1, s2, w2))
    cache = {}

    def cone_data(s1, s2):
        key = (s1, s2)
        if key not in cache:
            trans = rank(D.span(s1) + D.span(s2)) == n
            cache[key] = (trans, _difference_cone(D, s1, s2),
                          sum_index([D.span(s1), D.span(s2)], n) if trans else 0)
        return cache[key]

    while True:
        v = tuple(rng.randint(-997, 997) for _ in range(n))
        if not any(v):
            continue
        ok = True
        vals = {}
        for g in D.cones_of_dim(n - k):
            for s1, w1, s2, w2 in pairs:
                if not (g <= s1 and g <= s2):
                    continue
                trans, C, idx = cone_data(s1, s2)
                if not trans:
                    if C.contains(v):
                        ok = False
                        break
                    continue
                if any(dot(a, v) == 0 for a, _ in C.ineqs):
                    ok = False
                    break
                if C.contains(v):
                    vals[g] = vals.get(g, 0) + w1 * w2 * idx
            if not ok:
                break
        if ok:
            return MinkowskiWeight(D, k, vals)


def mw_degree(c: MinkowskiWeight) -> int:
    if c.codim != c.fan.ambient_dim:
        raise WrongCodim("degree needs a top-codimension weight")
    return c.values.get(frozenset(), 0)


def mw_from_cycle(S: TropicalCycle, D: Fan) -> MinkowskiWeight:
    """Class of a cycle compatible with D, read off its recession fan."""
    from .cycles import refine

    bad = compatibility_violation(D, refine(S).polyhedra())
    if bad is not None:
        raise NotCompatible("fan is not compatible with the cycle", cone=bad[0], polyhedron=bad[1])
    n = D.ambient_dim
    rho = recession_fan(S, D)
    vals = {}
    for P, w in rho.cells:
        x = relative_interior_point(P)
        c = D.cone_with_relint(x)
        vals[c] = vals.get(c, 0) + w
    return MinkowskiWeight(D, n - S.dim, vals)


def mw_class_by_pairing(S: TropicalCycle, D: Fan) -> MinkowskiWeight:
    """Class of any cycle: value on a k-cone is the degree of S cut by its k boundary divisors.

    Works for cycles not compatible with D. Requires a complete unimodular fan.
    """
    from .divisors import CartierDivisor, cartier_intersect, prime_divisor

    n = D.ambient_dim
    k = S.dim
    vals = {}
    for c in D.cones_of_dim(k):
        alpha = StratifiedCycle(D, {(): S})
        for i in sorted(c):
            phi = CartierDivisor.from_toric_divisor(prime_divisor(D, i))
            alpha = cartier_intersect(phi, alpha, D)
        vals[c] = sum(cycle_degree(alpha.components[t]) for t in alpha.strata())
    return MinkowskiWeight(D, n - k, vals)


def degree_pairing_check(c1: MinkowskiWeight, c2: MinkowskiWeight,
                         pairing: Sequence[MinkowskiWeight] = (), seed: int | None = None) -> int:
    """Degree of c1 * c2 * (product of the pairing classes)."""
    out = mw_product(c1, c2, seed)
    for h in pairing:
        out = mw_product(out, h, seed)
    return mw_degree(out)


def divisor_class(Dv) -> MinkowskiWeight:
    """Codimension-one Minkowski weight of a Cartier toric divisor: its corner-locus weights."""
    from .divisors import CartierDivisor, cartier_intersect
    from .polyhedra import Polyhedron as _P

    D = Dv.fan
    n = D.ambient_dim
    alpha = StratifiedCycle(D, {(): TropicalCycle(n, n, [(_P.universe(n), 1)])})
    res = cartier_intersect(CartierDivisor.from_toric_divisor(Dv), alpha, D)
    vals = {}
    if frozenset() in res.components:
        for P, w in res.components[frozenset()].cells:
            c = D.cone_with_relint(relative_interior_point(P))
            vals[c] = vals.get(c, 0) + w
    return MinkowskiWeight(D, 1, vals)
