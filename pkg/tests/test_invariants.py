import pytest

from troppatch.errors import MatroidMismatch, PhaseInvalid
from troppatch.invariants import (
    betti_bounds,
    bm_concentrated,
    euler_signature,
    fp_homology,
    hirzebruch,
    matroid_manifold_profile,
)
from troppatch.io import parse_input
from troppatch.matroid import characteristic_polynomial, poly_eval


def test_line_fp_homology():
    c = parse_input("u23_line")
    assert fp_homology(c) == [[1, 0], [2, 0]]
    assert fp_homology(c, borel_moore=True) == [[0, 2], [0, 1]]


def test_line_betti_bounds():
    e = parse_input("u23_phase")
    rep = betti_bounds(e.complex, e)
    assert rep.betti == [3, 0] and rep.bound == [3, 0] and rep.holds
    bm = betti_bounds(e.complex, e, borel_moore=True)
    assert bm.betti == [0, 3] and bm.bound == [0, 3]
    assert rep.to_json()["e1_page"]["1,0"] == 2


def test_conic_bounds():
    e = parse_input("conic_phase")
    rep = betti_bounds(e.complex, e)
    assert rep.holds and rep.betti[0] == 4


@pytest.mark.parametrize("name", ["u23_phase", "u34_phase", "conic_phase", "u23_tp2_phase", "u34_tp3_phase"])
def test_euler_equals_signature(name):
    e = parse_input(name)
    out = euler_signature(e.complex, e)
    assert out["chain_level_agrees"] and out["equal"] and out["equal_bm"]


def test_invalid_phase():
    e = parse_input("conic_phase_broken_cover")
    with pytest.raises(PhaseInvalid):
        betti_bounds(e.complex, e)


@pytest.mark.parametrize("cx,m", [("u23_line", "u23"), ("u34_plane", "u34")])
def test_hirzebruch_is_reduced_charpoly(cx, m):
    _, reduced = characteristic_polynomial(parse_input(m))
    c = parse_input(cx)
    d = c.d
    h = hirzebruch(c)
    assert h == reduced
    assert all(a == 0 or (a > 0) == ((d - p) % 2 == 0) for p, a in enumerate(h))
    assert bm_concentrated(c)


def test_hirzebruch_at_minus_one_is_bm_signature():
    e = parse_input("u34_phase")
    assert poly_eval(hirzebruch(e.complex), -1) == euler_signature(e.complex, e)["sigma_bm"]


@pytest.mark.parametrize(
    "m,om,rp,sphere",
    [("u12", "u12_om", [1], []), ("u23", "u23_om", [1, 1], [2]), ("u34", "u34_om", [1, 1, 1], [1, 1])],
)
def test_manifold_profiles(m, om, rp, sphere):
    rep = matroid_manifold_profile(parse_input(m), parse_input(om))
    assert rep["rp_betti"] == rp and rep["rp_match"] and rep["closed"]
    assert rep["sphere_betti"] == sphere and rep["sphere_match"]


def test_profile_mismatch():
    with pytest.raises(MatroidMismatch):
        matroid_manifold_profile(parse_input("u23"), parse_input("u34_om"))
