"""Named worked examples, shipped as JSON documents plus expected results."""

from __future__ import annotations

from .cycles import TropicalCycle
from .divisors import TropicalPolynomial, tropical_hypersurface
from .errors import UnknownFixture
from .fans import hirzebruch_fan, product_p1_fan, projective_space_fan
from .polyhedra import Polyhedron
from .serialize import to_json

NAMES = ("selfintersection-n", "selfinter-ex", "tp3", "bezout-2-2")


def star_polynomial(n: int) -> TropicalPolynomial:
    """x^n + y + 1 with trivial valuations: rays e1, e2, -e1-n*e2 of weights 1, n, 1."""
    return TropicalPolynomial(2, [((n, 0), 0), ((0, 1), 0), ((0, 0), 0)])


def star_curve(n: int) -> TropicalCycle:
    return tropical_hypersurface(star_polynomial(n))


def conic_polynomial() -> TropicalPolynomial:
    # a x^2 + xy + a y^2 + x + y + a with val(a) = 1
    return TropicalPolynomial(2, [((2, 0), 1), ((1, 1), 0), ((0, 2), 1),
                                  ((1, 0), 0), ((0, 1), 0), ((0, 0), 1)])


def shifted_line_polynomial() -> TropicalPolynomial:
    # x + y + a with val(a) = 1
    return TropicalPolynomial(2, [((1, 0), 0), ((0, 1), 0), ((0, 0), 1)])


def tp3_plane() -> TropicalCycle:
    D = projective_space_fan(3)
    return TropicalCycle(3, 2, [(D.cone(c), 1) for c in D.cones_of_dim(2)])


def tp3_alpha() -> TropicalCycle:
    """Standard tropical line inside the plane x = 0."""
    return TropicalCycle(3, 1, [(Polyhedron.cone(3, [r]), 1)
                                for r in [(0, 1, 0), (0, 0, 1), (0, -1, -1)]])


def tp3_x_plane() -> TropicalCycle:
    return TropicalCycle(3, 2, [(Polyhedron(3, [], [((1, 0, 0), 0)]), 1)])


def selfintersection(n: int = 3) -> dict:
    if n < 1:
        raise UnknownFixture("selfintersection-n needs n >= 1")
    X = star_curve(n)
    return {
        "curve.json": to_json(X),
        "polynomial.json": to_json(star_polynomial(n)),
        "fan.json": to_json(hirzebruch_fan(n)),
        "expected.json": {
            "local_multiplicity_at_origin": str(n),
            "note": "self stable intersection of the (1, n, 1) star at the origin",
        },
    }


def selfinter_ex() -> dict:
    return {
        "curve.json": to_json(tropical_hypersurface(conic_polynomial())),
        "line.json": to_json(tropical_hypersurface(shifted_line_polynomial())),
        "curve_polynomial.json": to_json(conic_polynomial()),
        "line_polynomial.json": to_json(shifted_line_polynomial()),
        "fan.json": to_json(product_p1_fan(2)),
        "expected.json": {
            "component_point": ["1", "1"],
            "stable": "2",
            "mw": "4",
            "note": "degree on the component through (1,1) versus the class product on P1 x P1",
        },
    }


def tp3() -> dict:
    return {
        "plane.json": to_json(tp3_plane()),
        "alpha.json": to_json(tp3_alpha()),
        "x_plane.json": to_json(tp3_x_plane()),
        "fan.json": to_json(projective_space_fan(3)),
        "expected.json": {
            "x_plane": "0",
            "plane": "1",
            "note": "degree of alpha cut by F in the compactification, F the x = 0 plane or the standard plane",
        },
    }


def bezout_2_2() -> dict:
    f = TropicalPolynomial(2, [((2, 0), 0), ((1, 1), 1), ((0, 2), 0),
                               ((1, 0), 1), ((0, 1), 1), ((0, 0), 0)])
    g = TropicalPolynomial(2, [((2, 0), 3), ((1, 1), 0), ((0, 2), 2),
                               ((1, 0), 1), ((0, 1), -1), ((0, 0), 1)])
    return {
        "curve1.json": to_json(tropical_hypersurface(f)),
        "curve2.json": to_json(tropical_hypersurface(g)),
        "fan.json": to_json(projective_space_fan(2)),
        "expected.json": {"stable": "4", "mw": "4", "note": "two plane conics meet in 4 points"},
    }


def load(name: str, n: int = 3) -> dict:
    if name in ("selfintersection-n", "selfintersection"):
        return selfintersection(n)
    if name.startswith("selfintersection-") and name[len("selfintersection-"):].isdigit():
        return selfintersection(int(name[len("selfintersection-"):]))
    if name == "selfinter-ex":
        return selfinter_ex()
    if name == "tp3":
        return tp3()
    if name == "bezout-2-2":
        return bezout_2_2()
    raise UnknownFixture(f"unknown fixture {name!r}; choose from {', '.join(NAMES)}")


__all__ = ["NAMES", "load", "selfintersection", "selfinter_ex", "tp3", "bezout_2_2",
           "star_curve", "star_polynomial", "conic_polynomial", "shifted_line_polynomial",
           "tp3_plane", "tp3_alpha", "tp3_x_plane"]
