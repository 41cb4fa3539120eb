from fractions import Fraction

import pytest
from hypothesis import HealthCheck, settings

from tropcycle import Polyhedron, TropicalCycle, TropicalPolynomial, tropical_hypersurface

settings.register_profile(
    "repo",
    deadline=None,
    derandomize=True,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("repo")


def ray(n, v, apex=None):
    P = Polyhedron.cone(n, [v])
    if apex is not None:
        from tropcycle.polyhedra import translate

        P = translate(P, apex)
    return P


def line_through(n, v):
    return Polyhedron.cone(n, [], lines=[v])


def standard_line(apex=(0, 0)):
    """Tropical line with rays (-1,0), (0,-1), (1,1) from apex, all weights 1."""
    return TropicalCycle(2, 1, [(ray(2, v, apex), 1) for v in [(-1, 0), (0, -1), (1, 1)]])


def min_line(apex=(0, 0)):
    """Corner locus of min(x - a, y - b, 0): rays (1,0), (0,1), (-1,-1) from apex."""
    a, b = apex
    return tropical_hypersurface(TropicalPolynomial(2, [((1, 0), -a), ((0, 1), -b), ((0, 0), 0)]))


def axis(n, i, w=1):
    e = [0] * n
    e[i] = 1
    return TropicalCycle(n, 1, [(line_through(n, e), w)])


def F(x):
    return Fraction(x)


@pytest.fixture
def std_line():
    return standard_line()
