from fractions import Fraction
from itertools import product

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropcycle.errors import DimensionMismatch, EmptyPolyhedron
from tropcycle.lp import is_feasible, is_redundant, minimize
from tropcycle.polyhedra import (
    Polyhedron,
    canonicalize,
    faces,
    intersect,
    project,
    recession_cone,
    relative_interior_point,
    thicken,
    translate,
)

coef = st.integers(-3, 3)
row2 = st.tuples(st.tuples(coef, coef), st.integers(-4, 4))
row3 = st.tuples(st.tuples(coef, coef, coef), st.integers(-4, 4))


def oracle_dim(n, ineqs, eqs):
    """Dimension via LP: count implicit equalities, then rank of the equality system."""
    from tropcycle.linalg import rank

    if not is_feasible(ineqs, eqs, n):
        return -1
    implicit = [a for a, b in ineqs
                if minimize([-x for x in a], ineqs, eqs)[0] == "optimal"
                and -minimize([-x for x in a], ineqs, eqs)[1][0] == b]
    rows = [a for a, _ in eqs] + implicit
    return n - (rank(rows) if rows else 0)


# ---------------------------------------------------------------- canonical form


def test_dominated_constraint():
    P = Polyhedron(1, [((1,), 0), ((1,), -1)])
    assert P == Polyhedron(1, [((1,), 0)])
    assert len(P.ineqs) == 1


def test_implicit_equality():
    P = Polyhedron(1, [((1,), 0), ((-1,), 0)])
    assert P.dim == 0 and len(P.eqs) == 1 and not P.ineqs


def test_infeasible():
    P = Polyhedron(1, [((1,), 1), ((-1,), 0)])
    assert P.is_empty and P.dim == -1


def test_dimension_mismatch():
    with pytest.raises(DimensionMismatch):
        Polyhedron(2, [((1,), 0)])


@given(st.lists(row2, min_size=1, max_size=5))
def test_canonical_form_against_lp_2d(rows):
    _check_against_lp(2, rows)


@given(st.lists(row3, min_size=1, max_size=5))
def test_canonical_form_against_lp_3d(rows):
    _check_against_lp(3, rows)


def _check_against_lp(n, rows):
    rows = [(a, b) for a, b in rows if any(a)]
    P = Polyhedron(n, rows)
    assert P.dim == oracle_dim(n, rows, [])
    if P.is_empty:
        return
    # every stored facet is irredundant with respect to the stored system
    for k in range(len(P.ineqs)):
        assert not is_redundant(list(P.ineqs), list(P.eqs), k)
    # the stored system implies every input inequality
    for a, b in rows:
        status, res = minimize(a, P.ineqs, P.eqs)
        assert status == "optimal" and res[0] >= b
    # the generators reproduce the same polyhedron
    Q = Polyhedron.from_generators(n, P.vertices, P.rays, P.lines)
    assert Q == P
    # presentation independence
    assert Polyhedron(n, [(tuple(3 * x for x in a), 3 * b) for a, b in reversed(rows)]) == P
    assert canonicalize(P) == P


@given(st.lists(row2, min_size=1, max_size=4), st.lists(row2, min_size=1, max_size=4),
       st.tuples(st.integers(-5, 5), st.integers(-5, 5)))
def test_intersection_membership(r1, r2, x):
    P = Polyhedron(2, [(a, b) for a, b in r1 if any(a)])
    Q = Polyhedron(2, [(a, b) for a, b in r2 if any(a)])
    assert intersect(P, Q).contains(x) == (P.contains(x) and Q.contains(x))


# ---------------------------------------------------------------- intersect, recession, faces


def test_intersect_examples():
    P = Polyhedron(2, [((1, 0), 0), ((0, 1), 0)])
    assert intersect(P, Polyhedron.universe(2)) == P
    xa = Polyhedron(2, [], [((0, 1), 0)])
    ya = Polyhedron(2, [], [((1, 0), 0)])
    assert intersect(xa, ya) == Polyhedron.point((0, 0))
    assert intersect(Polyhedron(2, [((1, 1), 1)]), Polyhedron(2, [((-1, -1), 0)])).is_empty


def test_recession_examples():
    seg = Polyhedron.from_generators(2, [(0, 0), (1, 2)])
    assert recession_cone(seg) == Polyhedron.point((0, 0))
    assert recession_cone(Polyhedron(1, [((1,), 0)])) == Polyhedron.cone(1, [(1,)])
    P = Polyhedron(2, [((1, 0), 0)], [((-1, 1), 1)])
    assert recession_cone(P) == Polyhedron.cone(2, [(1, 1)])
    with pytest.raises(EmptyPolyhedron):
        recession_cone(Polyhedron.empty(2))


def test_faces_examples():
    square = Polyhedron.from_generators(2, [(0, 0), (1, 0), (0, 1), (1, 1)])
    assert sorted(F.vertices[0] for F in faces(square, 0)) == [(0, 0), (0, 1), (1, 0), (1, 1)]
    quad = Polyhedron.cone(2, [(1, 0), (0, 1)])
    assert sorted(F.rays for F in faces(quad, 1)) == [((0, 1),), ((1, 0),)]
    simplex = Polyhedron(2, [((1, 0), 0), ((0, 1), 0), ((-1, -1), -1)])
    assert len(faces(simplex, 1)) == 3


@given(st.lists(st.tuples(st.integers(-4, 4), st.integers(-4, 4)), min_size=3, max_size=7))
def test_polygon_euler(points):
    P = Polyhedron.from_generators(2, points)
    if P.dim == 2:
        assert len(faces(P, 0)) == len(faces(P, 1)) == len(P.vertices)
        # the faces of faces are faces
        for E in faces(P, 1):
            for v in faces(E, 0):
                assert v in faces(P, 0)


# ---------------------------------------------------------------- projection, interior points, thickening


def test_project_examples():
    assert project(Polyhedron.point((1, 2)), []) == Polyhedron.point((1, 2))
    r = Polyhedron.cone(2, [(1, 1)])
    assert project(r, [(1, 1)]).dim == 0
    Q = project(Polyhedron.cone(2, [(1, 0), (0, 1)]), [(1, 0)])
    assert Q.ambient_dim == 1 and Q.dim == 1 and len(Q.rays) == 1 and not Q.lines


def test_relative_interior_examples():
    seg = Polyhedron.from_generators(1, [(0,), (1,)])
    assert relative_interior_point(seg) == (Fraction(1, 2),)
    assert relative_interior_point(Polyhedron.point((3, 4))) == (3, 4)
    x = relative_interior_point(Polyhedron(1, [((1,), 0)]))
    assert x[0] > 0


@given(st.lists(row2, min_size=1, max_size=5))
def test_relative_interior_is_interior(rows):
    P = Polyhedron(2, [(a, b) for a, b in rows if any(a)])
    if P.is_empty:
        return
    x = relative_interior_point(P)
    assert P.in_relint(x)
    assert all(a[0] * x[0] + a[1] * x[1] > b for a, b in P.ineqs)


def test_thicken_examples():
    assert thicken(Polyhedron(1, [((1,), 0)]), 1) == Polyhedron(1, [((1,), -1)])
    pt = Polyhedron(1, [((1,), 0), ((-1,), 0)])
    assert thicken(pt, 1) == Polyhedron.from_generators(1, [(-1,), (1,)])


@given(st.lists(row2, min_size=1, max_size=5), st.fractions(min_value=Fraction(1, 10), max_value=3))
def test_thicken_keeps_recession(rows, eps):
    P = Polyhedron(2, [(a, b) for a, b in rows if any(a)])
    if P.is_empty:
        return
    T = thicken(P, eps)
    assert recession_cone(T) == recession_cone(P)
    assert T.contains_poly(P) and T.dim == 2


@given(st.lists(row2, min_size=1, max_size=4), st.tuples(coef, coef))
def test_translate_membership(rows, v):
    P = Polyhedron(2, [(a, b) for a, b in rows if any(a)])
    T = translate(P, v)
    for x in product(range(-3, 4), repeat=2):
        assert T.contains((x[0] + v[0], x[1] + v[1])) == P.contains(x)
