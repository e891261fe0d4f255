import itertools

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from troppatch import gf2
from troppatch.errors import DependentBasis, DimTooLarge, PointsNotAffine

matrices = st.integers(1, 5).flatmap(
    lambda r: st.integers(1, 6).flatmap(
        lambda c: st.lists(st.lists(st.integers(0, 1), min_size=c, max_size=c), min_size=r, max_size=r)
    )
)


def test_rank_kernel_small():
    r, ker = gf2.rank_kernel([[1, 1, 0], [0, 1, 1]])
    assert r == 2
    assert ker == [(1, 1, 1)]


def test_rank_of_zero_and_identity():
    assert gf2.rank(np.zeros((3, 4), dtype=np.uint8)) == 0
    assert gf2.rank(np.eye(4, dtype=np.uint8)) == 4


@given(matrices)
def test_rank_nullity(m):
    a = np.array(m, dtype=np.uint8)
    r, ker = gf2.rank_kernel(a)
    assert r + len(ker) == a.shape[1]
    for v in ker:
        assert not ((a.astype(int) @ np.array(v)) % 2).any()


@given(matrices)
def test_rref_is_idempotent_and_row_equivalent(m):
    r, piv = gf2.rref(m)
    r2, piv2 = gf2.rref(r)
    assert np.array_equal(r, r2) and piv == piv2
    for row in np.array(m, dtype=np.uint8):
        assert gf2.in_row_space(r[: len(piv)] if piv else np.zeros((0, len(row)), dtype=np.uint8), row) or not row.any()


@given(matrices, st.data())
def test_solve_left(m, data):
    a = np.array(m, dtype=np.uint8)
    c = np.array(data.draw(st.lists(st.integers(0, 1), min_size=a.shape[0], max_size=a.shape[0])), dtype=np.uint8)
    v = (c.astype(int) @ a) % 2
    sol = gf2.solve_left(a, v)
    assert sol is not None
    assert np.array_equal((sol.astype(int) @ a) % 2, v)


@pytest.mark.parametrize("d,p", [(0, 0), (3, 1), (3, 2), (4, 2), (5, 3)])
def test_gaussian_binomial_counts_subspaces(d, p):
    assert gf2.gaussian_binomial(d, p) == len(gf2.linear_subspaces(d, p))


def test_gaussian_binomial_values():
    assert gf2.gaussian_binomial(3, 1) == 7
    assert gf2.gaussian_binomial(4, 2) == 35
    assert gf2.gaussian_binomial(2, 3) == 0


@pytest.mark.parametrize("d,p", [(2, 1), (3, 1), (3, 2), (2, 0), (2, 2)])
def test_affine_subspace_count(d, p):
    h = gf2.affine_canonical(base=[0] * d, directions=np.eye(d, dtype=int).tolist(), ambient_dim=d)
    subs = gf2.enumerate_affine_subspaces(h, p)
    assert len(subs) == 2 ** (d - p) * gf2.gaussian_binomial(d, p)
    assert len(set(subs)) == len(subs)


def test_enumerate_too_large():
    h = gf2.affine_canonical([(0, 0), (1, 0)])
    with pytest.raises(DimTooLarge):
        gf2.enumerate_affine_subspaces(h, 2)


def test_affine_canonical_examples():
    h = gf2.affine_canonical([(1, 0), (1, 1)])
    assert h.dim == 1 and h.base_point == (1, 0) and h.directions == ((0, 1),)
    with pytest.raises(PointsNotAffine):
        gf2.affine_canonical([(0, 0), (1, 0), (0, 1)])


@given(st.integers(1, 4), st.data())
def test_affine_canonical_is_unique(m, data):
    pts = data.draw(st.lists(st.tuples(*[st.integers(0, 1)] * m), min_size=1, max_size=2**m, unique=True))
    try:
        h = gf2.affine_canonical(pts)
    except PointsNotAffine:
        return
    assert h.points() == sorted(set(pts))
    shuffled = data.draw(st.permutations(pts))
    assert gf2.affine_canonical(shuffled) == h
    other_base = data.draw(st.sampled_from(h.points()))
    assert gf2.affine_canonical(base=other_base, directions=list(h.directions)[::-1], ambient_dim=m) == h


def test_exterior_power_identity_and_zero():
    assert np.array_equal(gf2.exterior_power_matrix(np.eye(3, dtype=np.uint8), 2), np.eye(3, dtype=np.uint8))
    assert gf2.exterior_power_matrix(np.zeros((2, 2), dtype=np.uint8), 0).tolist() == [[1]]
    assert not gf2.exterior_power_matrix(np.zeros((2, 2), dtype=np.uint8), 1).any()


square3 = st.lists(st.lists(st.integers(0, 1), min_size=3, max_size=3), min_size=3, max_size=3)


@settings(max_examples=50)
@given(square3, square3, st.integers(0, 3))
def test_exterior_power_is_functorial(a, b, p):
    a, b = np.array(a, dtype=np.uint8), np.array(b, dtype=np.uint8)
    ab = (a.astype(int) @ b) % 2
    lhs = gf2.exterior_power_matrix(ab, p)
    rhs = (gf2.exterior_power_matrix(a, p).astype(int) @ gf2.exterior_power_matrix(b, p)) % 2
    assert np.array_equal(lhs, rhs)


def test_wedge_power_map():
    w = gf2.wedge_power_map([(1, 0, 1), (0, 1, 1)], 2, 3)
    # e0^e1 + e0^e2 + e2^e1: minors of the 3x2 matrix over pairs (01, 02, 12)
    assert w[:, 0].tolist() == [1, 1, 1]
    with pytest.raises(DependentBasis):
        gf2.wedge_power_map([(1, 1), (1, 1)], 1, 2)
    with pytest.raises(DimTooLarge):
        gf2.wedge_power_map([(1, 0)], 2, 2)


def test_subspace_image():
    h = gf2.affine_canonical([(0, 0, 1), (1, 1, 1)])
    img = h.image(np.array([[1, 1, 0]], dtype=np.uint8))
    assert img.points() == [(0,)]
    assert all(h.contains(p) for p in h.points())
    assert not h.contains((1, 0, 0))
    assert sorted(itertools.chain(h.points())) == [(0, 0, 1), (1, 1, 1)]
