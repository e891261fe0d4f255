"""Linear algebra over GF(2) and affine subspaces of (Z/2)^m.

Matrices are dense ``numpy.uint8`` arrays holding 0/1 entries. Bit vectors
that need to be hashed (points of affine subspaces, sign labels) are plain
tuples of ints.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import DependentBasis, DimTooLarge, PointsNotAffine

__all__ = [
    "as_gf2",
    "rref",
    "rank",
    "rank_kernel",
    "row_basis",
    "in_row_space",
    "coords_in_rref",
    "solve_left",
    "exterior_power_matrix",
    "wedge_power_map",
    "gaussian_binomial",
    "Z2AffineSubspace",
    "affine_canonical",
    "linear_subspaces",
    "enumerate_affine_subspaces",
]

Bits = tuple


def as_gf2(m, cols: int | None = None) -> np.ndarray:
    """Coerce a nested sequence or array to a 2-d uint8 matrix mod 2."""
    a = np.asarray(m, dtype=np.int64)
    if a.ndim == 1:
        if a.size == 0 and cols is not None:
            a = a.reshape(0, cols)
        else:
            a = a.reshape(1, -1) if a.size else a.reshape(0, cols or 0)
    return (a % 2).astype(np.uint8)


def rref(m) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form over GF(2).

    Args:
        m: matrix with 0/1 entries.

    Returns:
        ``(R, pivots)`` where ``R`` has the same shape as ``m`` and
        ``pivots`` lists the pivot column of each nonzero row.
    """
    a = as_gf2(m).copy()
    rows, cols = a.shape
    pivots: list[int] = []
    r = 0
    for c in range(cols):
        if r == rows:
            break
        nz = np.nonzero(a[r:, c])[0]
        if nz.size == 0:
            continue
        p = r + int(nz[0])
        if p != r:
            a[[r, p]] = a[[p, r]]
        hit = np.nonzero(a[:, c])[0]
        hit = hit[hit != r]
        if hit.size:
            a[hit] ^= a[r]
        pivots.append(c)
        r += 1
    return a, pivots


def rank(m) -> int:
    a = as_gf2(m)
    if a.size == 0:
        return 0
    return len(rref(a)[1])


def rank_kernel(m) -> tuple[int, list[Bits]]:
    """Rank and a kernel basis of ``m`` acting on column vectors."""
    a = as_gf2(m)
    cols = a.shape[1]
    r, piv = rref(a)
    free = [c for c in range(cols) if c not in piv]
    kernel = []
    for f in free:
        v = [0] * cols
        v[f] = 1
        for i, pc in enumerate(piv):
            if r[i, f]:
                v[pc] = 1
        kernel.append(tuple(v))
    return len(piv), kernel


def row_basis(m, cols: int | None = None) -> tuple[np.ndarray, list[int]]:
    """RREF basis of the row space (zero rows dropped) and its pivots."""
    a = as_gf2(m, cols)
    if a.shape[0] == 0:
        return a.reshape(0, a.shape[1]), []
    r, piv = rref(a)
    return r[: len(piv)], piv


def coords_in_rref(basis: np.ndarray, pivots: Sequence[int], v) -> np.ndarray | None:
    """Coordinates of ``v`` in an RREF basis, or None if ``v`` is outside its span."""
    v = as_gf2(v).reshape(-1)
    if not len(pivots):
        return np.zeros(0, dtype=np.uint8) if not v.any() else None
    c = v[list(pivots)]
    back = (c.astype(np.int64) @ basis.astype(np.int64)) % 2
    if np.array_equal(back.astype(np.uint8), v):
        return c.copy()
    return None


def in_row_space(m, v) -> bool:
    b, piv = row_basis(m, len(v))
    return coords_in_rref(b, piv, v) is not None


def solve_left(a, v) -> np.ndarray | None:
    """Find ``c`` with ``c @ a == v`` over GF(2), or None."""
    a = as_gf2(a)
    v = as_gf2(v).reshape(-1)
    k, n = a.shape
    aug = np.concatenate([a, np.eye(k, dtype=np.uint8)], axis=1)
    r, piv = rref(aug)
    # rows of r whose left part is zero are relations; we only need the left part pivots
    left_piv = [(i, p) for i, p in enumerate(piv) if p < n]
    target = v.copy()
    comb = np.zeros(k, dtype=np.uint8)
    for i, p in left_piv:
        if target[p]:
            target ^= r[i, :n]
            comb ^= r[i, n:]
    if target.any():
        return None
    return comb


def exterior_power_matrix(a, p: int) -> np.ndarray:
    """Matrix of the p-th exterior power of a linear map over GF(2).

    Rows and columns are indexed by the p-subsets of the codomain and
    domain coordinates in lexicographic order; entries are p x p minors mod 2.
    """
    a = as_gf2(a)
    m, n = a.shape
    rows = list(itertools.combinations(range(m), p))
    cols = list(itertools.combinations(range(n), p))
    out = np.zeros((len(rows), len(cols)), dtype=np.uint8)
    if p == 0:
        out[0, 0] = 1
        return out
    for j, cj in enumerate(cols):
        sub = a[:, cj]
        if rank(sub) < p:
            continue
        for i, ri in enumerate(rows):
            if rank(sub[list(ri)]) == p:
                out[i, j] = 1
    return out


def wedge_power_map(basis: Sequence[Sequence[int]], p: int, m: int | None = None) -> np.ndarray:
    """Columns are the wedge monomials of p-subsets of ``basis`` in Λ^p GF(2)^m.

    Raises:
        DependentBasis: if the vectors are dependent over GF(2).
        DimTooLarge: if p exceeds the number of vectors.
    """
    b = as_gf2(basis, m)
    if m is None:
        m = b.shape[1]
    if b.shape[0] and rank(b) < b.shape[0]:
        raise DependentBasis(f"{b.shape[0]} vectors have rank {rank(b)}")
    if p > b.shape[0]:
        raise DimTooLarge(f"p={p} exceeds {b.shape[0]} vectors")
    return exterior_power_matrix(b.T.reshape(m, b.shape[0]), p)


def gaussian_binomial(d: int, p: int, q: int = 2) -> int:
    """Number of p-dimensional subspaces of GF(q)^d, by exact recurrence."""
    if p < 0 or p > d:
        return 0
    if p == 0 or p == d:
        return 1
    return gaussian_binomial(d - 1, p - 1, q) + q**p * gaussian_binomial(d - 1, p, q)


@dataclass(frozen=True)
class Z2AffineSubspace:
    """Affine subspace of (Z/2)^m in canonical form.

    The direction basis is in RREF and the base point is the
    lexicographically least element, so equality is structural.
    """

    ambient_dim: int
    base_point: Bits
    directions: tuple[Bits, ...]

    @property
    def dim(self) -> int:
        return len(self.directions)

    def points(self) -> list[Bits]:
        base = np.array(self.base_point, dtype=np.uint8)
        dirs = np.array(self.directions, dtype=np.uint8).reshape(self.dim, self.ambient_dim)
        out = []
        for coeffs in itertools.product((0, 1), repeat=self.dim):
            v = base.copy()
            for c, d in zip(coeffs, dirs):
                if c:
                    v ^= d
            out.append(tuple(int(x) for x in v))
        return sorted(out)

    def contains(self, point: Sequence[int]) -> bool:
        diff = as_gf2(point).reshape(-1) ^ np.array(self.base_point, dtype=np.uint8)
        if not self.dim:
            return not diff.any()
        piv = _pivots_of(self.directions)
        return coords_in_rref(np.array(self.directions, dtype=np.uint8), piv, diff) is not None

    def image(self, mat) -> "Z2AffineSubspace":
        """Image under a linear map given as a (k x m) matrix."""
        a = as_gf2(mat)
        base = (a.astype(np.int64) @ np.array(self.base_point, dtype=np.int64)) % 2
        dirs = [(a.astype(np.int64) @ np.array(d, dtype=np.int64)) % 2 for d in self.directions]
        return affine_canonical(base=tuple(int(x) for x in base), directions=dirs, ambient_dim=a.shape[0])

    def to_json(self) -> dict:
        return {"base": list(self.base_point), "directions": [list(d) for d in self.directions]}


def _pivots_of(rows: Sequence[Sequence[int]]) -> list[int]:
    return [next(i for i, x in enumerate(r) if x) for r in rows]


def affine_canonical(
    points: Iterable[Sequence[int]] | None = None,
    *,
    base: Sequence[int] | None = None,
    directions: Iterable[Sequence[int]] = (),
    ambient_dim: int | None = None,
) -> Z2AffineSubspace:
    """Canonical form of an affine subspace from points or base+directions.

    Raises:
        PointsNotAffine: if a point set is not closed under the affine law.
    """
    if points is not None:
        pts = sorted({tuple(int(x) % 2 for x in p) for p in points})
        if not pts:
            raise PointsNotAffine("empty point set")
        m = len(pts[0])
        p0 = np.array(pts[0], dtype=np.uint8)
        diffs = [np.array(p, dtype=np.uint8) ^ p0 for p in pts[1:]]
        sub = _canonical(pts[0], diffs, m)
        if len(pts) != 2**sub.dim or any(not sub.contains(p) for p in pts):
            raise PointsNotAffine(f"{len(pts)} points span a {sub.dim}-dimensional affine hull")
        return sub
    if base is None:
        raise PointsNotAffine("empty input")
    m = ambient_dim if ambient_dim is not None else len(base)
    return _canonical(tuple(base), [np.asarray(d, dtype=np.uint8) % 2 for d in directions], m)


def _canonical(base: Sequence[int], dirs: list, m: int) -> Z2AffineSubspace:
    if dirs:
        basis, piv = row_basis(np.array(dirs, dtype=np.uint8).reshape(len(dirs), m), m)
    else:
        basis, piv = np.zeros((0, m), dtype=np.uint8), []
    b = np.array(base, dtype=np.uint8) % 2
    for row, pc in zip(basis, piv):
        if b[pc]:
            b ^= row
    return Z2AffineSubspace(
        m,
        tuple(int(x) for x in b),
        tuple(tuple(int(x) for x in row) for row in basis),
    )


def linear_subspaces(d: int, p: int) -> list[np.ndarray]:
    """All p-dimensional subspaces of GF(2)^d as RREF (p x d) matrices."""
    if p > d or p < 0:
        return []
    out = []
    for piv in itertools.combinations(range(d), p):
        free = [(i, c) for i in range(p) for c in range(piv[i] + 1, d) if c not in piv]
        for bits in itertools.product((0, 1), repeat=len(free)):
            m = np.zeros((p, d), dtype=np.uint8)
            for i, c in enumerate(piv):
                m[i, c] = 1
            for (i, c), b in zip(free, bits):
                m[i, c] = b
            out.append(m)
    return out


def enumerate_affine_subspaces(h: Z2AffineSubspace, p: int) -> list[Z2AffineSubspace]:
    """All p-dimensional affine subspaces contained in ``h``, sorted canonically.

    Raises:
        DimTooLarge: if p > dim(h).
    """
    d = h.dim
    if p > d:
        raise DimTooLarge(f"p={p} > dim={d}")
    dirs = np.array(h.directions, dtype=np.int64).reshape(d, h.ambient_dim)
    base = np.array(h.base_point, dtype=np.int64)
    found: set[Z2AffineSubspace] = set()
    for sub in linear_subspaces(d, p):
        sub_dirs = [(row.astype(np.int64) @ dirs) % 2 for row in sub]
        for coeffs in itertools.product((0, 1), repeat=d):
            pt = (base + np.array(coeffs, dtype=np.int64) @ dirs) % 2
            found.add(_canonical(tuple(pt), [s.astype(np.uint8) for s in sub_dirs], h.ambient_dim))
    return sorted(found, key=lambda s: (s.directions, s.base_point))
