"""Integer lattice helpers: primitive vectors, saturation and quotient maps."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Sequence

__all__ = [
    "to_integer",
    "primitive",
    "row_reduce",
    "QuotientData",
    "quotient_data",
    "saturated_basis",
    "maximal_minor_gcd",
    "mat_vec",
    "mat_mul",
]

IntVec = tuple


def to_integer(v: Sequence) -> list[int]:
    """Scale a rational vector by the lcm of denominators."""
    fr = [Fraction(x) for x in v]
    den = 1
    for x in fr:
        den = lcm(den, x.denominator)
    return [int(x * den) for x in fr]


def primitive(v: Sequence) -> IntVec:
    """Primitive integer vector on the ray through ``v`` (zero stays zero)."""
    iv = to_integer(v)
    g = 0
    for x in iv:
        g = gcd(g, x)
    if g == 0:
        return tuple(iv)
    return tuple(x // g for x in iv)


def mat_vec(m: Sequence[Sequence], v: Sequence) -> tuple:
    return tuple(sum(a * b for a, b in zip(row, v)) for row in m)


def mat_mul(a: Sequence[Sequence], b: Sequence[Sequence]) -> list[list]:
    cols = list(zip(*b)) if b else []
    return [[sum(x * y for x, y in zip(row, col)) for col in cols] for row in a]


def row_reduce(cols: Sequence[Sequence[int]], n: int):
    """Left-unimodular reduction of the n x k matrix whose columns are ``cols``.

    Returns ``(U, Uinv, H, r)`` with ``U @ M = H``, U unimodular, and the
    last ``n - r`` rows of ``H`` zero.
    """
    k = len(cols)
    m = [[int(cols[j][i]) for j in range(k)] for i in range(n)]
    u = [[int(i == j) for j in range(n)] for i in range(n)]
    ui = [[int(i == j) for j in range(n)] for i in range(n)]

    def add(dst, src, c):
        # row_dst += c * row_src ; inverse gets col_src -= c * col_dst
        if c == 0:
            return
        m[dst] = [a + c * b for a, b in zip(m[dst], m[src])]
        u[dst] = [a + c * b for a, b in zip(u[dst], u[src])]
        for row in ui:
            row[src] -= c * row[dst]

    def swap(a, b):
        m[a], m[b] = m[b], m[a]
        u[a], u[b] = u[b], u[a]
        for row in ui:
            row[a], row[b] = row[b], row[a]

    def neg(a):
        m[a] = [-x for x in m[a]]
        u[a] = [-x for x in u[a]]
        for row in ui:
            row[a] = -row[a]

    r = 0
    for c in range(k):
        if r == n:
            break
        while True:
            nz = [i for i in range(r, n) if m[i][c] != 0]
            if not nz:
                break
            piv = min(nz, key=lambda i: abs(m[i][c]))
            if piv != r:
                swap(piv, r)
            if m[r][c] < 0:
                neg(r)
            done = True
            for i in range(r + 1, n):
                if m[i][c]:
                    add(i, r, -(m[i][c] // m[r][c]))
                    if m[i][c]:
                        done = False
            if done:
                break
        if any(m[i][c] for i in range(r, n)):
            r += 1
    return u, ui, m, r


class QuotientData:
    """Integral data for the quotient Z^n / (span(gens) ∩ Z^n).

    Attributes:
        n: ambient rank.
        rank: rank of the saturated sublattice T.
        tangent: saturated basis of T (list of integer vectors).
        q: (n - rank) x n matrix with kernel exactly T, surjective onto Z^(n-rank).
        lift: n x (n - rank) matrix with ``q @ lift = I``.
    """

    def __init__(self, gens: Sequence[Sequence[int]], n: int):
        gens = [to_integer(g) for g in gens if any(Fraction(x) for x in g)]
        self.n = n
        if gens:
            u, ui, _, r = row_reduce(gens, n)
        else:
            u = [[int(i == j) for j in range(n)] for i in range(n)]
            ui = [row[:] for row in u]
            r = 0
        self.rank = r
        self.tangent = [tuple(ui[i][j] for i in range(n)) for j in range(r)]
        self.q = [tuple(row) for row in u[r:]]
        self.lift = [tuple(ui[i][j] for j in range(r, n)) for i in range(n)]

    @property
    def dim(self) -> int:
        return self.n - self.rank

    def project(self, v: Sequence) -> tuple:
        return mat_vec(self.q, v)


def quotient_data(gens: Sequence[Sequence[int]], n: int) -> QuotientData:
    return QuotientData(gens, n)


def saturated_basis(gens: Sequence[Sequence], n: int) -> list[tuple]:
    """Basis of span(gens) ∩ Z^n."""
    return QuotientData(gens, n).tangent


def maximal_minor_gcd(vectors: Sequence[Sequence[int]], n: int) -> int:
    """gcd of the maximal minors of the matrix with the given columns.

    Returns 0 when the vectors are linearly dependent.
    """
    vecs = [to_integer(v) for v in vectors]
    if not vecs:
        return 1
    _, _, h, r = row_reduce(vecs, n)
    if r < len(vecs):
        return 0
    d = 1
    for i in range(r):
        d *= h[i][i]
    return abs(d)
