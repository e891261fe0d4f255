import json

import pytest

from troppatch.errors import ParseError, SchemaError, ValidationError
from troppatch.io import corpus_names, dumps, file_hash, parse_input, resolve


def test_corpus_is_listed():
    names = corpus_names()
    assert "u23_line" in names and names == sorted(names)


def test_parse_error_has_position(tmp_path):
    p = tmp_path / "bad.json"
    p.write_text('{"kind": "fan",\n  "rays": [1, }')
    with pytest.raises(ParseError, match=r"bad.json:2:\d+"):
        parse_input(p)


def test_schema_errors(tmp_path):
    p = tmp_path / "x.json"
    p.write_text(json.dumps({"kind": "banana"}))
    with pytest.raises(SchemaError):
        parse_input(p)
    p.write_text(json.dumps([1, 2]))
    with pytest.raises(SchemaError):
        parse_input(p)
    p.write_text(json.dumps({"ground": 2}))
    with pytest.raises(SchemaError, match="kind"):
        parse_input(p)


def test_missing_file():
    with pytest.raises(ParseError):
        resolve("no_such_thing")


def test_validation_error_carries_report():
    with pytest.raises(ValidationError) as info:
        parse_input("broken_overlap")
    assert "IntersectionNotAFace" in info.value.report.codes()
    assert parse_input("broken_overlap", validate=False) is not None


@pytest.mark.parametrize("name", ["u23_line", "conic", "u34_plane", "fig3_P", "tp2_fan", "u34", "u34_om"])
def test_roundtrip(tmp_path, name):
    obj = parse_input(name)
    p = tmp_path / f"{name}.json"
    p.write_text(dumps(obj.to_json()))
    again = parse_input(p)
    assert dumps(again.to_json()) == dumps(obj.to_json())


def test_phase_resolves_relative_complex(tmp_path):
    c = parse_input("u23_line")
    (tmp_path / "line.json").write_text(dumps(c.to_json()))
    e = parse_input("u23_phase")
    d = e.to_json()
    d["complex"] = "line.json"
    (tmp_path / "ph.json").write_text(dumps(d))
    e2 = parse_input(tmp_path / "ph.json")
    assert e2.to_json()["facet_phases"] == d["facet_phases"]
    assert dumps(e2.complex.to_json()) == dumps(c.to_json())


def test_realization_input(tmp_path):
    p = tmp_path / "om.json"
    p.write_text(json.dumps({"kind": "oriented_matroid", "realization": [[1, 0], [0, 1], ["1/2", "1/2"]]}))
    assert len(parse_input(p).covectors) == 13


def test_dumps_is_deterministic(tmp_path):
    assert dumps({"b": 1, "a": [1, 2]}) == '{\n  "a": [\n    1,\n    2\n  ],\n  "b": 1\n}'
    p = tmp_path / "f"
    p.write_text("abc")
    assert file_hash(p) == file_hash(p) and len(file_hash(p)) == 64
