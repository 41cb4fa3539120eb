"""Exact rational linear programming with Bland's rule.

Used for feasibility and redundancy questions that are phrased as LPs; the
polyhedron canonicalizer uses generator enumeration instead, and this module
serves as its independent cross-check.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence


def _simplex(T, basis, ncols):
    """Minimise the last row of tableau T in place. Returns False if unbounded."""
    m = len(T) - 1
    while True:
        obj = T[m]
        enter = next((j for j in range(ncols) if obj[j] < 0), None)
        if enter is None:
            return True
        best = None
        leave = None
        for i in range(m):
            a = T[i][enter]
            if a > 0:
                ratio = T[i][-1] / a
                if best is None or ratio < best or (ratio == best and basis[i] < basis[leave]):
                    best, leave = ratio, i
        if leave is None:
            return False
        piv = T[leave][enter]
        T[leave] = [x / piv for x in T[leave]]
        for i in range(len(T)):
            if i != leave and T[i][enter] != 0:
                f = T[i][enter]
                T[i] = [x - f * y for x, y in zip(T[i], T[leave])]
        basis[leave] = enter


def minimize(c: Sequence, ineqs: Sequence[tuple[Sequence, object]],
             eqs: Sequence[tuple[Sequence, object]] = ()):
    """Minimise c.x subject to a.x >= b (ineqs) and a.x = b (eqs), x free.

    Returns ``("infeasible", None)``, ``("unbounded", None)`` or
    ``("optimal", (value, x))``.
    """
    n = len(c)
    # x = xp - xn; each inequality gets a surplus variable.
    rows = []
    for a, b in ineqs:
        rows.append((list(a), Fraction(b), True))
    for a, b in eqs:
        rows.append((list(a), Fraction(b), False))
    m = len(rows)
    ns = sum(1 for r in rows if r[2])
    nv = 2 * n + ns
    T = []
    s = 0
    for a, b, is_ineq in rows:
        row = [Fraction(x) for x in a] + [-Fraction(x) for x in a] + [Fraction(0)] * ns
        if is_ineq:
            row[2 * n + s] = Fraction(-1)
            s += 1
        if b < 0:
            row = [-x for x in row]
            b = -b
        T.append(row + [Fraction(0)] * m + [b])
    for i in range(m):
        T[i][nv + i] = Fraction(1)
    total = nv + m
    # phase one
    obj = [Fraction(0)] * (total + 1)
    for i in range(m):
        obj = [o - x for o, x in zip(obj, T[i])]
    for i in range(m):
        obj[nv + i] = Fraction(0)
    T.append(obj)
    basis = [nv + i for i in range(m)]
    _simplex(T, basis, total)
    if T[m][-1] != 0:
        return "infeasible", None
    # drive artificials out of the basis
    for i in range(m):
        if basis[i] >= nv:
            j = next((j for j in range(nv) if T[i][j] != 0), None)
            if j is None:
                continue
            piv = T[i][j]
            T[i] = [x / piv for x in T[i]]
            for k in range(len(T)):
                if k != i and T[k][j] != 0:
                    f = T[k][j]
                    T[k] = [x - f * y for x, y in zip(T[k], T[i])]
            basis[i] = j
    keep = [i for i in range(m) if basis[i] < nv]
    T2 = [T[i][:nv] + [T[i][-1]] for i in keep]
    basis2 = [basis[i] for i in keep]
    cost = [Fraction(x) for x in c] + [-Fraction(x) for x in c] + [Fraction(0)] * ns
    obj = cost + [Fraction(0)]
    for i, bi in enumerate(basis2):
        if obj[bi] != 0:
            f = obj[bi]
            obj = [o - f * x for o, x in zip(obj, T2[i])]
    T2.append(obj)
    if not _simplex(T2, basis2, nv):
        return "unbounded", None
    x = [Fraction(0)] * nv
    for i, bi in enumerate(basis2):
        x[bi] = T2[i][-1]
    sol = tuple(x[j] - x[n + j] for j in range(n))
    value = sum((Fraction(ci) * xi for ci, xi in zip(c, sol)), Fraction(0))
    return "optimal", (value, sol)


def is_feasible(ineqs, eqs=(), n=None) -> bool:
    if n is None:
        n = len((list(ineqs) + list(eqs))[0][0])
    return minimize([0] * n, ineqs, eqs)[0] != "infeasible"


def is_redundant(ineqs, eqs, k) -> bool:
    """Whether inequality k is implied by the others."""
    a, b = ineqs[k]
    rest = [q for i, q in enumerate(ineqs) if i != k]
    status, res = minimize(a, rest, eqs)
    if status == "infeasible":
        return True
    if status == "unbounded":
        return False
    return res[0] >= Fraction(b)
