import json

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropcycle.divisors import TropicalPolynomial, tropical_hypersurface
from tropcycle.errors import InputError, ParseError
from tropcycle.fans import StratifiedCycle, boundary_cycles, hirzebruch_fan, projective_space_fan
from tropcycle.fixtures import NAMES, load
from tropcycle.polyhedra import Polyhedron
from tropcycle.serialize import (
    cycle_from_json,
    detect_kind,
    dumps,
    fan_from_json,
    loads,
    mw_from_json,
    parse_rat,
    polyhedron_from_json,
    polynomial_from_json,
    stratified_from_json,
    to_json,
)
from tropcycle.weights import MinkowskiWeight

PARSERS = {
    "polyhedron": polyhedron_from_json,
    "cycle": cycle_from_json,
    "fan": fan_from_json,
    "polynomial": polynomial_from_json,
    "weight": mw_from_json,
    "stratified": stratified_from_json,
}


def roundtrip(obj):
    text = dumps(to_json(obj))
    doc = loads(text)
    back = PARSERS[detect_kind(doc)](doc)
    assert dumps(to_json(back)) == text
    return back


rats = st.fractions(min_value=-5, max_value=5, max_denominator=7)


@given(st.lists(st.tuples(st.tuples(rats, rats), rats), min_size=1, max_size=4))
def test_polyhedron_roundtrip(rows):
    P = Polyhedron(2, [(a, b) for a, b in rows if any(a)])
    assert roundtrip(P) == P


@given(st.lists(st.tuples(st.tuples(st.integers(0, 3), st.integers(0, 3)), rats), min_size=2, max_size=5))
def test_cycle_and_polynomial_roundtrip(terms):
    f = TropicalPolynomial(2, terms)
    g = roundtrip(f)
    assert g.terms == f.terms
    if len(f.terms) > 1:
        H = tropical_hypersurface(f)
        assert roundtrip(H).equals(H)


def test_fan_weight_stratified_roundtrip():
    D = hirzebruch_fan(3)
    assert roundtrip(D) == D
    c = MinkowskiWeight(D, 1, {frozenset([0]): 1, frozenset([2]): 3})
    assert roundtrip(c) == c
    P2 = projective_space_fan(2)
    L = tropical_hypersurface(TropicalPolynomial(2, [((1, 0), 0), ((0, 1), 1), ((0, 0), 0)]))
    A = boundary_cycles(L, P2)
    B = roundtrip(A)
    assert isinstance(B, StratifiedCycle) and B.strata() == A.strata()


def test_fixtures_roundtrip():
    for name in NAMES:
        for fname, doc in load(name).items():
            if fname == "expected.json":
                continue
            obj = PARSERS[detect_kind(doc)](doc)
            assert dumps(to_json(obj)) == dumps(doc)


def test_numbers_are_strings():
    text = dumps(to_json(tropical_hypersurface(TropicalPolynomial(2, [((1, 0), "1/2"), ((0, 1), 0), ((0, 0), 0)]))))

    def walk(x):
        if isinstance(x, dict):
            for v in x.values():
                walk(v)
        elif isinstance(x, list):
            for v in x:
                walk(v)
        else:
            assert isinstance(x, str)

    walk(json.loads(text))
    assert '"1/2"' in text or '"-1/2"' in text


def test_canonical_is_sorted():
    doc = to_json(projective_space_fan(2))
    assert dumps(doc) == json.dumps(json.loads(dumps(doc)), sort_keys=True, indent=2) + "\n"


def test_plain_numbers_rejected_for_coordinates():
    with pytest.raises(ParseError):
        polyhedron_from_json({"dim": "1", "ineqs": [[1, "0"]], "eqs": []})
    with pytest.raises(ParseError):
        parse_rat(0.5)
    # structural integers may be plain
    P = polyhedron_from_json({"dim": 1, "ineqs": [["1", "0"]], "eqs": []})
    assert P == Polyhedron(1, [((1,), 0)])


def test_parse_errors_carry_position():
    with pytest.raises(ParseError, match="line 2"):
        loads('{\n  "dim": }')
    assert issubclass(ParseError, InputError)


def test_malformed_documents():
    with pytest.raises(ParseError):
        polyhedron_from_json({"dim": "2", "ineqs": [["1", "0"]]})
    with pytest.raises(ParseError):
        detect_kind([1, 2])
    with pytest.raises(ParseError):
        cycle_from_json({"dim": "1", "ambient": "2"})
