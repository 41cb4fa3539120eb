"""Exact tropical intersection theory: stable intersection, tropical toric
compactifications, Minkowski weights and Cartier divisor products."""

from .cycles import (
    TropicalCycle,
    ZeroCycle,
    balancing_check,
    connected_components,
    degree,
    is_balanced,
    local_multiplicity,
    multi_stable_intersect,
    recession_fan,
    restrict_to_component,
    stable_intersect,
    star,
)
from .divisors import (
    CartierDivisor,
    Chart,
    RationalFunction,
    ToricDivisor,
    TropicalPolynomial,
    cartier_intersect,
    divisor_polytope,
    is_ample,
    is_cartier,
    normal_fan,
    support_function,
    tropical_hypersurface,
)
from .errors import InputError, PreconditionError, TropError
from .fans import (
    Fan,
    StratifiedCycle,
    boundary_cycle,
    compactified_stable_intersect,
    hirzebruch_fan,
    is_compatible,
    is_complete,
    is_unimodular,
    product_p1_fan,
    projective_space_fan,
)
from .linalg import Lattice, QuotientFrame, hermite_normal_form, lattice_index
from .polyhedra import Polyhedron
from .weights import MinkowskiWeight, mw_class_by_pairing, mw_degree, mw_from_cycle, mw_product

__all__ = [
    "CartierDivisor",
    "Chart",
    "Fan",
    "InputError",
    "Lattice",
    "MinkowskiWeight",
    "Polyhedron",
    "PreconditionError",
    "QuotientFrame",
    "RationalFunction",
    "StratifiedCycle",
    "ToricDivisor",
    "TropError",
    "TropicalCycle",
    "TropicalPolynomial",
    "ZeroCycle",
    "balancing_check",
    "boundary_cycle",
    "cartier_intersect",
    "compactified_stable_intersect",
    "connected_components",
    "degree",
    "divisor_polytope",
    "hermite_normal_form",
    "hirzebruch_fan",
    "is_ample",
    "is_balanced",
    "is_cartier",
    "is_compatible",
    "is_complete",
    "is_unimodular",
    "lattice_index",
    "local_multiplicity",
    "multi_stable_intersect",
    "mw_class_by_pairing",
    "mw_degree",
    "mw_from_cycle",
    "mw_product",
    "normal_fan",
    "product_p1_fan",
    "projective_space_fan",
    "recession_fan",
    "restrict_to_component",
    "stable_intersect",
    "star",
    "support_function",
    "tropical_hypersurface",
]

__version__ = "0.1.0"
