import pytest

from troppatch.cosheaf import (
    build_Fp,
    build_Kp,
    build_sign_cosheaf,
    chain_complex,
    check_exact_sequence,
    homology_dims,
)
from troppatch.errors import PhaseInvalid
from troppatch.io import parse_input
from troppatch.polyhedral import Cell, RationalPolyhedron, TropicalComplex, trivial_fan


def _segment():
    pt = lambda x: RationalPolyhedron.make(1, vertices=[(x,)])
    cells = [
        Cell("a", (), pt(0)),
        Cell("b", (), pt(1)),
        Cell("ab", (), RationalPolyhedron.make(1, vertices=[(0,), (1,)]), ("a", "b")),
    ]
    return TropicalComplex(1, trivial_fan(1), cells)


@pytest.mark.parametrize("p", [0, 1])
def test_segment_cosheaves_are_constant(p):
    f = build_Fp(_segment(), p)
    assert set(f.stalk_dims().values()) == {1}
    assert homology_dims(chain_complex(f)) == [1, 0]
    assert homology_dims(chain_complex(f, borel_moore=True)) == [1, 0]


PHASES = ["u23_phase", "u34_phase", "conic_phase", "u23_tp2_phase", "u34_tp3_phase"]


@pytest.mark.parametrize("name", PHASES)
def test_cosheaves_are_functorial(name):
    e = parse_input(name)
    c = e.complex
    for p in range(c.d + 1):
        assert build_Fp(c, p).check_functorial() == []
        assert build_Kp(c, e, p).check_functorial() == []
    assert build_sign_cosheaf(c, e).check_functorial() == []


@pytest.mark.parametrize("name", PHASES)
def test_boundary_squares_to_zero_and_euler(name):
    e = parse_input(name)
    c = e.complex
    for bm in (False, True):
        cc = chain_complex(build_sign_cosheaf(c, e), bm)
        h = homology_dims(cc)
        chain_euler = sum((-1) ** q * cc.ranks.get(q, 0) for q in range(cc.top + 1))
        assert chain_euler == sum((-1) ** q * x for q, x in enumerate(h))


@pytest.mark.parametrize("name", ["u23_phase", "u34_phase", "conic_phase"])
def test_k_filtration_exact(name):
    e = parse_input(name)
    for p in range(e.complex.d + 1):
        res = check_exact_sequence(e.complex, e, p)
        assert res.ok, res.counterexample


def test_line_stalks():
    e = parse_input("u23_phase")
    c = e.complex
    assert build_sign_cosheaf(c, e).dim("{}") == 3
    assert build_Kp(c, e, 1).dim("{}") == 2
    assert [build_Fp(c, p).dim("{}") for p in (0, 1)] == [1, 2]


def test_sign_cosheaf_refuses_invalid_phase():
    e = parse_input("u23_phase_broken_cover")
    with pytest.raises(PhaseInvalid):
        build_sign_cosheaf(e.complex, e)
