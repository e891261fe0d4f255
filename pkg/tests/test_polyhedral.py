from fractions import Fraction

import pytest

from troppatch.errors import UnknownCell
from troppatch.io import parse_input
from troppatch.polyhedral import (
    Cell,
    Fan,
    RationalPolyhedron,
    TropicalComplex,
    cell_is_compact,
    check_unimodular,
    compactify,
    projective_space_fan,
    recession_fan,
    star_fan,
    trivial_fan,
    validate_complex,
)


def test_polyhedron_make_normalizes():
    p = RationalPolyhedron.make(2, vertices=[(0, 0), (0, 0)], rays=[(2, 4)])
    assert p.vertices == ((Fraction(0), Fraction(0)),)
    assert p.rays == ((1, 2),)
    assert p.dim == 1 and not p.is_bounded()
    raw = RationalPolyhedron.make(2, vertices=[(0, 0)], rays=[(2, 4)], normalize=False)
    assert raw.rays == ((2, 4),)


def test_polyhedron_containment():
    seg = RationalPolyhedron.make(2, vertices=[(0, 0), (1, 1)])
    ray = RationalPolyhedron.make(2, vertices=[(0, 0)], rays=[(1, 1)])
    assert ray.contains(seg) and not seg.contains(ray)
    assert seg.contains_point((Fraction(1, 2), Fraction(1, 2)))
    assert ray.contains_direction((3, 3))
    assert seg.contains_point(seg.interior_point())


def test_unimodular():
    assert check_unimodular(RationalPolyhedron.make(2, vertices=[(0, 0), (1, 0), (0, 1)]))
    assert not check_unimodular(RationalPolyhedron.make(2, vertices=[(0, 0), (1, 0), (0, 2)]))


def test_fan_projection_kills_cone():
    fan = projective_space_fan(2)
    assert fan.is_pointed()
    for cone in fan.cones:
        if fan.dim(cone) == 1:
            q = fan.projection((), cone)
            (r,) = [fan.rays[i] for i in cone]
            assert all(sum(a * b for a, b in zip(row, r)) == 0 for row in q)
    assert len(trivial_fan(3).cones) == 1


def test_tropical_line():
    c = parse_input("u23_line")
    assert validate_complex(c).ok
    assert c.d == 1 and len(c.facets) == 3
    assert [cid for cid in c.cell_ids if cell_is_compact(c, cid)] == ["{}"]
    fan = recession_fan(c)
    assert sum(1 for cone in fan.cones if len(cone) == 1) == 3
    s = star_fan(c, "{}")
    assert sum(1 for cone in s.cones if len(cone) == 1) == 3
    with pytest.raises(UnknownCell):
        c.faces("nope")


def test_compactified_line_counts():
    c = parse_input("u23_line")
    cc = compactify(c, recession_fan(c))
    # vertex, three rays, three points at infinity
    assert len(cc.cell_ids) == 7
    assert sorted(cc.dim(x) for x in cc.cell_ids) == [0, 0, 0, 0, 1, 1, 1]
    assert validate_complex(cc).ok


@pytest.mark.parametrize(
    "name,code",
    [("broken_overlap", "IntersectionNotAFace"), ("broken_nonprimitive", "NotPrimitive")],
)
def test_broken_complexes(name, code):
    c = parse_input(name, validate=False)
    assert code in validate_complex(c).codes()


def test_duplicate_ids_rejected():
    p = RationalPolyhedron.make(1, vertices=[(0,)])
    with pytest.raises(ValueError):
        TropicalComplex(1, trivial_fan(1), [Cell("a", (), p), Cell("a", (), p)])


def test_fan_json_roundtrip_is_stable():
    fan = Fan(2, [(1, 0), (0, 1), (-1, -1)], [(0, 1), (1, 2), (0, 2)])
    assert fan.to_json() == Fan(2, [(1, 0), (0, 1), (-1, -1)], [(1, 2), (0, 2), (0, 1)]).to_json()
