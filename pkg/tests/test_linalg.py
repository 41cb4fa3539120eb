from fractions import Fraction
from itertools import product
from math import isqrt

import pytest
from hypothesis import given
from hypothesis import strategies as st

from tropcycle.errors import InputError
from tropcycle.linalg import (
    Lattice,
    QuotientFrame,
    det,
    hermite_normal_form,
    integer_kernel,
    integer_solve,
    lattice_index,
    nullspace,
    primitive_generator,
    project_lattice,
    rank,
    rref,
    saturate,
    solve,
)

small = st.integers(-6, 6)


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def gram_det(rows):
    return det([[sum(a * b for a, b in zip(r, s)) for s in rows] for r in rows]) if rows else 1


def independent_index(sub, sup):
    """[sup : sub] from Gram determinants of bases (no normal forms involved)."""
    ratio = Fraction(gram_det(sub)) / Fraction(gram_det(sup))
    root = isqrt(int(ratio))
    assert ratio.denominator == 1 and root * root == ratio
    return root


# ---------------------------------------------------------------- HNF


def test_hnf_identity():
    H, U = hermite_normal_form([[1, 0], [0, 1]])
    assert H == [[1, 0], [0, 1]]
    assert U == [[1, 0], [0, 1]]


def test_hnf_already_reduced():
    H, _ = hermite_normal_form([[2, 0], [0, 3]])
    assert H == [[2, 0], [0, 3]]


def test_hnf_det_two():
    H, U = hermite_normal_form([[1, 1], [1, -1]])
    assert abs(det(H)) == 2
    assert matmul(U, [[1, 1], [1, -1]]) == H


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=4))
def test_hnf_properties(M):
    H, U = hermite_normal_form(M)
    assert abs(det(U)) == 1
    assert matmul(U, M) == H
    # row echelon with positive pivots and reduced entries above them
    last = -1
    for i, row in enumerate(H):
        nz = [j for j, x in enumerate(row) if x]
        if not nz:
            assert all(not any(r) for r in H[i:])
            break
        p = nz[0]
        assert p > last and row[p] > 0
        for k in range(i):
            assert 0 <= H[k][p] < row[p]
        last = p
    # idempotent
    H2, _ = hermite_normal_form([r for r in H if any(r)])
    assert H2 == [r for r in H if any(r)]


# ---------------------------------------------------------------- indices


def test_index_identity():
    assert lattice_index(Lattice.standard(2), Lattice.standard(2)) == 1


def test_index_diagonal():
    assert lattice_index(Lattice([(2, 0), (0, 3)], 2), Lattice.standard(2)) == 6


def test_index_rotated():
    sub = Lattice([(1, 1), (1, -1)], 2)
    assert lattice_index(sub, Lattice.standard(2)) == 2
    assert independent_index([(1, 1), (1, -1)], [(1, 0), (0, 1)]) == 2


def test_index_not_sublattice():
    with pytest.raises(InputError):
        lattice_index(Lattice([(1, 0)], 2), Lattice([(2, 0)], 2))


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_index_matches_gram_oracle(gens):
    L = Lattice(gens, 3)
    if L.rank == 0:
        return
    sat = saturate(L)
    assert lattice_index(L, sat) == independent_index(L.basis, sat.basis)


@given(st.lists(st.lists(small, min_size=2, max_size=2), min_size=2, max_size=3),
       st.integers(1, 4))
def test_index_chain(gens, k):
    L = Lattice(gens, 2)
    if L.rank < 2:
        return
    M = Lattice([[k * x for x in r] for r in L.basis], 2)
    Z = Lattice.standard(2)
    assert lattice_index(M, Z) == lattice_index(M, L) * lattice_index(L, Z)
    assert lattice_index(M, L) == k * k


# ---------------------------------------------------------------- primitive vectors


@pytest.mark.parametrize("v,out", [((2, 4), (1, 2)), ((Fraction(1, 2), Fraction(3, 2)), (1, 3)),
                                   ((0, -6), (0, -1))])
def test_primitive_examples(v, out):
    assert primitive_generator(v) == out


def test_primitive_zero():
    with pytest.raises(InputError):
        primitive_generator((0, 0))


@given(st.lists(small, min_size=1, max_size=4), st.integers(1, 30), st.integers(1, 30))
def test_primitive_scaling(v, p, q):
    if not any(v):
        return
    assert primitive_generator(v) == primitive_generator([Fraction(p, q) * x for x in v])


# ---------------------------------------------------------------- saturation and projection


def test_saturate_examples():
    Z2 = Lattice.standard(2)
    assert saturate(Z2) == Z2
    assert saturate(Lattice([(2, 0)], 2)) == Lattice([(1, 0)], 2)
    assert saturate(Lattice([(2, 2), (0, 4)], 2)) == Lattice([(1, 1), (0, 1)], 2)


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=2),
       st.lists(st.integers(-3, 3), min_size=2, max_size=2), st.integers(1, 5))
def test_saturate_contains_rational_combinations(gens, coeffs, d):
    L = Lattice(gens, 3)
    S = saturate(L)
    v = [sum(Fraction(c, d) * g[i] for c, g in zip(coeffs, gens)) for i in range(3)]
    assert S.contains(v) == all(x.denominator == 1 for x in v)


def test_project_lattice_examples():
    Z2 = Lattice.standard(2)
    assert project_lattice(Z2, []).rank == 2
    assert lattice_index(project_lattice(Z2, []), Lattice.standard(2)) == 1
    P = project_lattice(Z2, [(1, 1)])
    assert P.rank == 1 and lattice_index(P, Lattice.standard(1)) == 1
    P = project_lattice(Lattice([(2, 0), (0, 1)], 2), [(0, 1)])
    assert lattice_index(P, Lattice.standard(1)) == 2


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=2),
       st.lists(small, min_size=3, max_size=3))
def test_quotient_frame_lift(span, y0):
    if rank(span) == 0:
        return
    F = QuotientFrame(span, 3)
    # projection kills the span, and lifting inverts projection on lattice points
    for s in span:
        assert not any(F.project(s))
    y = F.project(y0)
    assert F.project(F.lift(y)) == y
    # the frame is onto Z^m: index of the image of Z^3 is one
    imgs = [F.project(e) for e in [(1, 0, 0), (0, 1, 0), (0, 0, 1)]]
    assert lattice_index(Lattice(imgs, F.dim), Lattice.standard(F.dim)) == 1


# ---------------------------------------------------------------- rational routines


@given(st.lists(st.lists(small, min_size=3, max_size=3), min_size=1, max_size=3))
def test_nullspace_and_rank(A):
    N = nullspace(A, 3)
    assert len(N) + rank(A) == 3
    for v in N:
        assert all(sum(a * x for a, x in zip(row, v)) == 0 for row in A)
    R, piv = rref(A, 3)
    assert len(piv) == rank(A)


@given(st.lists(st.lists(small, min_size=2, max_size=2), min_size=2, max_size=2),
       st.lists(small, min_size=2, max_size=2))
def test_solve_against_brute_force(A, x):
    b = [sum(a * xi for a, xi in zip(row, x)) for row in A]
    y = solve(A, b, 2)
    assert y is not None
    assert [sum(a * yi for a, yi in zip(row, y)) for row in A] == b


@given(st.lists(st.lists(st.integers(-3, 3), min_size=2, max_size=2), min_size=1, max_size=2),
       st.lists(st.integers(-4, 4), min_size=1, max_size=2))
def test_integer_solve_brute_force(A, b):
    b = (b * 2)[: len(A)]
    got = integer_solve(A, b, 2)
    brute = [v for v in product(range(-12, 13), repeat=2)
             if all(sum(a * x for a, x in zip(row, v)) == bi for row, bi in zip(A, b))]
    if got is None:
        assert not brute
    else:
        assert all(sum(a * x for a, x in zip(row, got)) == bi for row, bi in zip(A, b))
    K = integer_kernel(A, 2)
    for k in K:
        assert all(sum(a * x for a, x in zip(row, k)) == 0 for row in A)
