from fractions import Fraction

import pytest
from conftest import axis, line_through, min_line, ray, standard_line
from hypothesis import given
from hypothesis import strategies as st

from tropcycle.cycles import (
    TropicalCycle,
    ZeroCycle,
    balancing_check,
    common_refinement,
    connected_components,
    degree,
    is_balanced,
    local_multiplicity,
    multi_stable_intersect,
    recession_fan,
    refine,
    relative_multiplicity_in_smooth_face,
    restrict_to_component,
    stable_intersect,
    star,
    support_set_intersection,
)
from tropcycle.divisors import TropicalPolynomial, tropical_hypersurface
from tropcycle.fans import projective_space_fan
from tropcycle.errors import NotPureDimensional, PointNotInterior, PointNotOnSupport
from tropcycle.fixtures import conic_polynomial, shifted_line_polynomial, star_curve
from tropcycle.polyhedra import Polyhedron


def cells_as(S):
    """Cells summarised as (sorted vertices, sorted rays, lines, weight)."""
    return sorted((tuple(sorted(P.vertices)), tuple(sorted(P.rays)), len(P.lines), w) for P, w in S.cells)


def seg(a, b):
    return Polyhedron.from_generators(len(a), [a, b])


def points(S):
    return {P.vertices[0]: w for P, w in S.cells}


# ---------------------------------------------------------------- construction and balancing


def test_not_pure_dimensional():
    with pytest.raises(NotPureDimensional):
        TropicalCycle(2, 1, [(Polyhedron.point((0, 0)), 1)])


def test_balancing_examples():
    assert is_balanced(TropicalCycle(2, 1, [(line_through(2, (1, 2)), 1)]))
    assert is_balanced(standard_line())
    for n in range(1, 6):
        assert is_balanced(star_curve(n))
        assert balancing_check(TropicalCycle(2, 1, [(ray(2, (1, 0)), 1), (ray(2, (0, 1)), n),
                                                   (ray(2, (-1, -n)), 1)])) == []


def test_balancing_violation_reported():
    S = TropicalCycle(2, 1, [(ray(2, (1, 0)), 1), (ray(2, (0, 1)), 1)])
    bad = balancing_check(S)
    assert len(bad) == 1 and bad[0][0] == Polyhedron.point((0, 0))


# ---------------------------------------------------------------- refinement


def test_refine_complex_is_unchanged(std_line):
    assert cells_as(refine(std_line)) == cells_as(std_line)


def test_refine_overlapping_segments():
    S = TropicalCycle(1, 1, [(seg((0,), (2,)), 1), (seg((1,), (3,)), 1)])
    R = refine(S)
    assert cells_as(R) == [(((0,), (1,)), (), 0, 1), (((1,), (2,)), (), 0, 2), (((2,), (3,)), (), 0, 1)]


def test_refine_crossing_lines():
    S = TropicalCycle(2, 1, [(line_through(2, (1, 0)), 1), (line_through(2, (0, 1)), 1)])
    R = refine(S)
    assert len(R.cells) == 4 and all(len(P.rays) == 1 and P.vertices == ((0, 0),) for P, _ in R.cells)


def test_common_refinement_examples():
    a = TropicalCycle(2, 0, [(Polyhedron.point((0, 0)), 1)])
    b = TropicalCycle(2, 0, [(Polyhedron.point((1, 1)), 1)])
    A, B = common_refinement(a, b)
    assert cells_as(A) == cells_as(a) and cells_as(B) == cells_as(b)
    A, B = common_refinement(axis(2, 0), axis(2, 1))
    assert len(A.cells) == 2 and len(B.cells) == 2
    A, B = common_refinement(standard_line(), standard_line((1, 2)))
    # every pair of cells meets in a common face
    from tropcycle.cycles import is_face, meets
    from tropcycle.polyhedra import intersect

    for P, _ in A.cells:
        for Q, _ in B.cells:
            if meets(P, Q):
                I = intersect(P, Q)
                assert is_face(I, P) and is_face(I, Q)


# ---------------------------------------------------------------- stars


def test_star_examples(std_line):
    assert cells_as(star(std_line, (0, 0))) == cells_as(std_line)
    S = star(std_line, (2, 2))
    assert cells_as(S) == [(((0, 0),), (), 1, 1)]
    with pytest.raises(PointNotOnSupport):
        star(std_line, (1, 0))


def test_star_of_conic_at_11():
    X = tropical_hypersurface(conic_polynomial())
    got = {P.rays: w for P, w in star(X, (1, 1)).cells}
    assert got == {((1, 0),): 1, ((0, 1),): 1, ((-1, -1),): 1}


# ---------------------------------------------------------------- stable intersection


def test_axes_weighted():
    S = stable_intersect(axis(2, 0, 2), axis(2, 1, 3))
    assert points(S) == {(0, 0): 6}


@pytest.mark.parametrize("n", [1, 2, 3, 4, 5])
def test_star_self_intersection(n):
    X = star_curve(n)
    S = stable_intersect(X, X)
    assert points(S) == {(0, 0): n}
    assert local_multiplicity(X, X, (0, 0)) == n


def test_two_lines_generic():
    S = stable_intersect(standard_line(), standard_line((1, 2)))
    assert degree(S) == 1 and len(S.cells) == 1


def test_local_multiplicity_examples(std_line):
    assert local_multiplicity(std_line, standard_line((1, 2)), (5, 5)) == 0
    assert local_multiplicity(axis(2, 0), axis(2, 1), (0, 0)) == 1


def test_multi_examples():
    planes = [TropicalCycle(3, 2, [(Polyhedron(3, [], [(e, 0)]), 1)])
              for e in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]]
    assert points(multi_stable_intersect(planes)) == {(0, 0, 0): 1}
    full = TropicalCycle(2, 2, [(Polyhedron.universe(2), 1)])
    assert cells_as(multi_stable_intersect([standard_line(), full])) == cells_as(standard_line())
    out = multi_stable_intersect([standard_line(), standard_line((1, 2)), standard_line((3, -1))])
    assert out.is_empty()


def test_degree_examples():
    assert degree(ZeroCycle()) == 0
    assert degree(ZeroCycle([((0, 0), 6)])) == 6


# ---------------------------------------------------------------- random plane curves


def curve(deg, vals):
    exps = [(i, j) for i in range(deg + 1) for j in range(deg + 1 - i)]
    return tropical_hypersurface(TropicalPolynomial(2, list(zip(exps, vals))))


@st.composite
def plane_curves(draw, max_deg=2):
    d = draw(st.integers(1, max_deg))
    k = (d + 1) * (d + 2) // 2
    vals = draw(st.lists(st.fractions(min_value=-3, max_value=3, max_denominator=3), min_size=k, max_size=k))
    return d, curve(d, vals)


@given(plane_curves(), plane_curves())
def test_commutative_and_bezout(a, b):
    (d, X), (e, Y) = a, b
    XY, YX = stable_intersect(X, Y), stable_intersect(Y, X)
    assert XY.equals(YX)
    assert degree(XY) == d * e
    # local multiplicity at each point agrees with the cycle
    for p, w in points(XY).items():
        assert local_multiplicity(X, Y, p) == w


@given(plane_curves(), plane_curves(), st.tuples(st.integers(-3, 3), st.integers(-3, 3)))
def test_translation_equivariance(a, b, v):
    X, Y = a[1], b[1]
    lhs = stable_intersect(X.translated(v), Y.translated(v))
    rhs = stable_intersect(X, Y).translated(v)
    assert lhs.equals(rhs)


@given(plane_curves(max_deg=1), plane_curves(max_deg=1), st.integers(1, 3))
def test_bilinearity(a, b, k):
    X, Y = a[1], b[1]
    assert stable_intersect(X.scaled(k), Y).equals(stable_intersect(X, Y).scaled(k))


def test_associativity_in_r3():
    H = [TropicalCycle(3, 2, [(Polyhedron(3, [], [(e, c)]), 1)])
         for e, c in [((1, 0, 0), 0), ((0, 1, 0), 1), ((1, 1, 1), 2)]]
    D = projective_space_fan(3)
    P3 = TropicalCycle(3, 2, [(D.cone(c), 1) for c in D.cones_of_dim(2)])
    for trio in ([H[0], H[1], P3], [P3, H[2], H[0]]):
        a = stable_intersect(stable_intersect(trio[0], trio[1]), trio[2])
        b = stable_intersect(trio[0], stable_intersect(trio[1], trio[2]))
        assert a.equals(b)


def test_outputs_balanced():
    P3fan = projective_space_fan(3)
    P = TropicalCycle(3, 2, [(P3fan.cone(c), 1) for c in P3fan.cones_of_dim(2)])
    L = stable_intersect(P, P.translated((1, 0, -1)))
    assert L.dim == 1 and is_balanced(L)


# ---------------------------------------------------------------- recession and components


def test_recession_examples(std_line):
    assert cells_as(recession_fan(std_line)) == cells_as(std_line)
    assert recession_fan(standard_line((5, 7))).equals(std_line)
    X = tropical_hypersurface(conic_polynomial())
    got = {P.rays: w for P, w in recession_fan(X).cells}
    assert got == {((1, 0),): 2, ((0, 1),): 2, ((-1, -1),): 2}


def test_components_examples():
    two = TropicalCycle(2, 0, [(Polyhedron.point((0, 0)), 1), (Polyhedron.point((1, 0)), 1)])
    assert len(connected_components(two)) == 2
    assert len(connected_components(standard_line())) == 1


def test_selfinter_example_component():
    X = tropical_hypersurface(conic_polynomial())
    Y = tropical_hypersurface(shifted_line_polynomial())
    region = support_set_intersection(X, Y)
    comps = connected_components(region)
    assert len(comps) == 1
    C = comps[0]
    assert any(P.contains((0, 0)) for P in C) and any(P.contains((1, 1)) for P in C)
    S = stable_intersect(X, Y)
    assert degree(restrict_to_component(S, C)) == 2


def test_restrict_trivial_cases(std_line):
    assert cells_as(restrict_to_component(std_line, std_line.polyhedra())) == cells_as(std_line)
    assert restrict_to_component(std_line, []).is_empty()


def test_relative_multiplicity():
    X, Y = min_line(), min_line((1, 2))
    u = next(iter(points(stable_intersect(X, Y))))
    full = TropicalCycle(2, 2, [(Polyhedron.universe(2), 1)])
    assert relative_multiplicity_in_smooth_face(X, Y, full, u) == local_multiplicity(X, Y, u)
    plane = TropicalCycle(3, 2, [(Polyhedron(3, [], [((0, 0, 1), 0)]), 1)])
    l1 = TropicalCycle(3, 1, [(Polyhedron.cone(3, [], [(1, 0, 0)]), 1)])
    l2 = TropicalCycle(3, 1, [(Polyhedron.cone(3, [], [(0, 1, 0)]), 1)])
    assert relative_multiplicity_in_smooth_face(l1, l2, plane, (0, 0, 0)) == 1
    with pytest.raises(PointNotInterior):
        relative_multiplicity_in_smooth_face(l1, l2, plane, (0, 0, 1))


def test_rational_vertices_exact():
    X = curve(1, [Fraction(1, 3), Fraction(-2, 7), 0])
    Y = curve(1, [0, Fraction(5, 2), Fraction(1, 9)])
    (p,) = points(stable_intersect(X, Y))
    assert all(isinstance(x, Fraction) for x in p)
