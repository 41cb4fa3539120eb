"""Exact integer and rational linear algebra.

Vectors are tuples of :class:`fractions.Fraction` (rational data) or ``int``
(lattice data). Matrices are sequences of rows.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

from .errors import (
    DimensionMismatch,
    InfiniteIndex,
    NotRationalSubspace,
    NotSublattice,
    ZeroVector,
)

Rat = Fraction
Vector = tuple


def frac_vec(v: Iterable) -> tuple[Fraction, ...]:
    return tuple(Fraction(x) for x in v)


def dot(a: Sequence, b: Sequence):
    return sum((x * y for x, y in zip(a, b)), 0)


def vsub(a: Sequence, b: Sequence) -> tuple:
    return tuple(x - y for x, y in zip(a, b))


def vadd(a: Sequence, b: Sequence) -> tuple:
    return tuple(x + y for x, y in zip(a, b))


def vscale(c, a: Sequence) -> tuple:
    return tuple(c * x for x in a)


def is_zero(v: Sequence) -> bool:
    return all(x == 0 for x in v)


def clear_denominators(v: Sequence) -> tuple[int, ...]:
    """Scale a rational vector by the lcm of its denominators."""
    m = 1
    for x in v:
        m = lcm(m, Fraction(x).denominator)
    return tuple(int(Fraction(x) * m) for x in v)


def primitive_generator(v: Sequence) -> tuple[int, ...]:
    """Primitive integer vector on the ray spanned by ``v``."""
    w = clear_denominators(v)
    g = 0
    for x in w:
        g = gcd(g, x)
    if g == 0:
        raise ZeroVector("zero vector has no primitive generator")
    return tuple(x // g for x in w)


# ---------------------------------------------------------------- rational


def rref(rows: Sequence[Sequence], ncols: int | None = None):
    """Reduced row echelon form over Q. Returns (nonzero rows, pivot columns)."""
    A = [list(frac_vec(r)) for r in rows]
    if ncols is None:
        ncols = len(A[0]) if A else 0
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(A)) if A[i][c] != 0), None)
        if p is None:
            continue
        A[r], A[p] = A[p], A[r]
        inv = 1 / A[r][c]
        A[r] = [x * inv for x in A[r]]
        for i in range(len(A)):
            if i != r and A[i][c] != 0:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[r])]
        pivots.append(c)
        r += 1
        if r == len(A):
            break
    return [tuple(row) for row in A[:r]], pivots


def rank(rows: Sequence[Sequence]) -> int:
    return len(rref(rows)[1]) if rows else 0


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[tuple[Fraction, ...]]:
    """Basis of {x : row . x = 0 for every row}."""
    R, piv = rref(rows, ncols)
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        x = [Fraction(0)] * ncols
        x[f] = Fraction(1)
        for row, p in zip(R, piv):
            x[p] = -row[f]
        basis.append(tuple(x))
    return basis


def solve(A: Sequence[Sequence], b: Sequence, ncols: int | None = None):
    """One rational solution of A x = b, or None when inconsistent."""
    if ncols is None:
        ncols = len(A[0]) if A else 0
    aug = [list(frac_vec(r)) + [Fraction(bi)] for r, bi in zip(A, b)]
    R, piv = rref(aug, ncols + 1)
    if ncols in piv:
        return None
    x = [Fraction(0)] * ncols
    for row, p in zip(R, piv):
        x[p] = row[ncols]
    return tuple(x)


def in_span(rows: Sequence[Sequence], v: Sequence) -> bool:
    if not rows:
        return is_zero(v)
    cols = list(zip(*rows))
    return solve(cols, v, len(rows)) is not None


def det(M: Sequence[Sequence]):
    A = [list(frac_vec(r)) for r in M]
    n = len(A)
    d = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if A[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            A[c], A[p] = A[p], A[c]
            d = -d
        d *= A[c][c]
        for i in range(c + 1, n):
            if A[i][c] != 0:
                f = A[i][c] / A[c][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    return d


def orthogonal_complement(rows: Sequence[Sequence], n: int):
    return nullspace(rows, n)


# ---------------------------------------------------------------- integer


def hermite_normal_form(M: Sequence[Sequence[int]]):
    """Row-style Hermite normal form.

    Returns ``(H, U)`` with ``U`` unimodular and ``U M = H``. Nonzero rows of
    ``H`` come first, pivots are positive and entries above a pivot lie in
    ``[0, pivot)``.
    """
    m = len(M)
    n = len(M[0]) if m else 0
    H = [[int(x) for x in r] for r in M]
    U = [[int(i == j) for j in range(m)] for i in range(m)]

    def sub(i, k, q):
        H[i] = [a - q * b for a, b in zip(H[i], H[k])]
        U[i] = [a - q * b for a, b in zip(U[i], U[k])]

    row = 0
    for col in range(n):
        if row >= m:
            break
        found = False
        while True:
            nz = [i for i in range(row, m) if H[i][col] != 0]
            if not nz:
                break
            found = True
            p = min(nz, key=lambda i: abs(H[i][col]))
            H[row], H[p] = H[p], H[row]
            U[row], U[p] = U[p], U[row]
            clean = True
            for i in range(row + 1, m):
                if H[i][col]:
                    sub(i, row, H[i][col] // H[row][col])
                    if H[i][col]:
                        clean = False
            if clean:
                break
        if not found:
            continue
        if H[row][col] < 0:
            H[row] = [-a for a in H[row]]
            U[row] = [-a for a in U[row]]
        for i in range(row):
            q = H[i][col] // H[row][col]
            if q:
                sub(i, row, q)
        row += 1
    return H, U


def integer_kernel(A: Sequence[Sequence[int]], n: int) -> list[tuple[int, ...]]:
    """Basis of the lattice {x in Z^n : A x = 0}."""
    if not A:
        return [tuple(int(i == j) for j in range(n)) for i in range(n)]
    At = [[int(A[r][c]) for r in range(len(A))] for c in range(n)]
    H, U = hermite_normal_form(At)
    return [tuple(U[i]) for i in range(n) if not any(H[i])]


def integer_solve(A: Sequence[Sequence[int]], b: Sequence[int], n: int):
    """An integer solution of A x = b, or None if there is none."""
    if not A:
        return tuple([0] * n)
    At = [[int(A[r][c]) for r in range(len(A))] for c in range(n)]
    H, U = hermite_normal_form(At)
    # x = U^T z, so H^T z = b; H is in echelon form.
    z = [Fraction(0)] * n
    for j, hrow in enumerate(H):
        piv = next((c for c, x in enumerate(hrow) if x), None)
        if piv is None:
            break
        s = Fraction(b[piv]) - sum(H[i][piv] * z[i] for i in range(j))
        z[j] = s / hrow[piv]
        if z[j].denominator != 1:
            return None
    x = tuple(int(sum(U[i][k] * z[i] for i in range(n))) for k in range(n))
    for row, bi in zip(A, b):
        if dot(row, x) != bi:
            return None
    return x


class Lattice:
    """A sublattice of Z^n stored by its canonical row-HNF basis."""

    __slots__ = ("ambient_rank", "basis")

    def __init__(self, generators: Iterable[Sequence[int]], ambient_rank: int):
        gens = [tuple(int(x) for x in g) for g in generators]
        for g in gens:
            if len(g) != ambient_rank:
                raise DimensionMismatch("generator length differs from ambient rank")
        H, _ = hermite_normal_form(gens) if gens else ([], [])
        self.ambient_rank = ambient_rank
        self.basis = tuple(tuple(r) for r in H if any(r))

    @classmethod
    def standard(cls, n: int) -> "Lattice":
        return cls([tuple(int(i == j) for j in range(n)) for i in range(n)], n)

    @classmethod
    def of_subspace(cls, span: Sequence[Sequence], n: int) -> "Lattice":
        """span(rows) intersected with Z^n."""
        rows = [clear_denominators(v) for v in span if not is_zero(v)]
        perp = integer_kernel(rows, n)
        return cls(integer_kernel(perp, n), n)

    @property
    def rank(self) -> int:
        return len(self.basis)

    def contains(self, v: Sequence) -> bool:
        if any(Fraction(x).denominator != 1 for x in v):
            return False
        if not self.basis:
            return is_zero(v)
        cols = [list(c) for c in zip(*self.basis)]
        return integer_solve(cols, [int(x) for x in v], self.rank) is not None

    def __eq__(self, other):
        return (
            isinstance(other, Lattice)
            and self.ambient_rank == other.ambient_rank
            and self.basis == other.basis
        )

    def __hash__(self):
        return hash((self.ambient_rank, self.basis))

    def __repr__(self):
        return f"Lattice({[list(b) for b in self.basis]}, {self.ambient_rank})"


def saturate(L: Lattice) -> Lattice:
    return Lattice.of_subspace(L.basis, L.ambient_rank)


def lattice_index(sub: Lattice, sup: Lattice) -> int:
    """Group index [sup : sub]."""
    if sub.ambient_rank != sup.ambient_rank:
        raise DimensionMismatch("lattices live in different ambient ranks")
    if sub.rank != sup.rank:
        raise InfiniteIndex("ranks differ")
    if sub.rank == 0:
        return 1
    cols = [list(c) for c in zip(*sup.basis)]
    coords = []
    for v in sub.basis:
        x = integer_solve(cols, v, sup.rank)
        if x is None:
            raise NotSublattice(f"{v} is not in the larger lattice")
        coords.append(x)
    return abs(int(det(coords)))


def sum_index(spans: Sequence[Sequence[Sequence]], n: int) -> int:
    """[Z^n : L_1 + ... + L_k] where L_i is the saturated lattice of span i.

    Requires the spans to add up to all of R^n.
    """
    gens = []
    for s in spans:
        gens.extend(Lattice.of_subspace(s, n).basis)
    total = Lattice(gens, n)
    return lattice_index(total, Lattice.standard(n))


# ---------------------------------------------------------------- quotients


class QuotientFrame:
    """Coordinates on N / (span(tau) ∩ N).

    The projection is ``x -> Q x`` where the rows of ``Q`` are the HNF basis
    of the integer points of span(tau)^perp. Q is a surjection Z^n -> Z^m with
    kernel span(tau) ∩ Z^n.
    """

    __slots__ = ("n", "span", "Q")

    def __init__(self, span: Sequence[Sequence], n: int):
        rows = []
        for v in span:
            if len(v) != n:
                raise DimensionMismatch("span vector length differs from n")
            if any(not isinstance(x, (int, Fraction)) for x in v):
                raise NotRationalSubspace("span must be given by rational vectors")
            if not is_zero(v):
                rows.append(clear_denominators(v))
        self.n = n
        self.span = Lattice.of_subspace(rows, n).basis
        perp = integer_kernel(list(self.span), n)
        self.Q = Lattice(perp, n).basis

    @property
    def dim(self) -> int:
        return len(self.Q)

    def project(self, x: Sequence) -> tuple:
        return tuple(dot(q, x) for q in self.Q)

    def lift(self, y: Sequence[int]) -> tuple[int, ...]:
        """An integer preimage of an integer quotient vector."""
        x = integer_solve([list(q) for q in self.Q], list(y), self.n)
        assert x is not None
        return x

    def lift_rational(self, y: Sequence) -> tuple[Fraction, ...]:
        x = solve([list(q) for q in self.Q], list(y), self.n)
        assert x is not None
        return x

    def __eq__(self, other):
        return isinstance(other, QuotientFrame) and (self.n, self.Q) == (other.n, other.Q)

    def __hash__(self):
        return hash((self.n, self.Q))


def project_lattice(L: Lattice, tau_span: Sequence[Sequence]) -> Lattice:
    """Image of L in the quotient frame of span(tau)."""
    F = QuotientFrame(tau_span, L.ambient_rank)
    return Lattice([F.project(b) for b in L.basis], F.dim)
