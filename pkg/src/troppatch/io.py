"""JSON input and output for complexes, fans, matroids, oriented matroids and phases."""

from __future__ import annotations

import hashlib
import json
from fractions import Fraction
from importlib import resources
from pathlib import Path

from . import gf2
from .errors import ParseError, SchemaError, ValidationError
from .matroid import Matroid, validate_matroid
from .oriented_matroid import OrientedMatroid, covectors_from_realization, validate_covectors
from .phase import RealPhaseStructure
from .polyhedral import Cell, Fan, RationalPolyhedron, TropicalComplex, trivial_fan, validate_complex

__all__ = ["parse_input", "load_json", "resolve", "file_hash", "corpus_names", "dumps"]

KINDS = ("complex", "fan", "matroid", "oriented_matroid", "phase")


def corpus_dir() -> Path:
    return Path(str(resources.files("troppatch") / "corpus"))


def corpus_names() -> list[str]:
    return sorted(p.stem for p in corpus_dir().glob("*.json"))


def resolve(name: str, base: Path | None = None) -> Path:
    """A path as given, relative to ``base``, or a bundled corpus name."""
    for cand in (Path(name), (base / name) if base else None, corpus_dir() / f"{name}.json", corpus_dir() / name):
        if cand is not None and cand.is_file():
            return cand
    raise ParseError(f"{name}: no such file or corpus entry")


def file_hash(path: Path) -> str:
    return hashlib.sha256(Path(path).read_bytes()).hexdigest()


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2, ensure_ascii=False)


def load_json(path: Path) -> dict:
    try:
        text = Path(path).read_text(encoding="utf-8")
    except UnicodeDecodeError as exc:
        raise ParseError(f"{path}: not UTF-8") from exc
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"{path}:{exc.lineno}:{exc.colno}: {exc.msg}") from exc
    if not isinstance(data, dict):
        raise SchemaError(f"{path}: top level must be an object")
    return data


def _need(d: dict, key: str, where: str):
    if key not in d:
        raise SchemaError(f"{where}: missing key '{key}'")
    return d[key]


def _rational(x, where: str) -> Fraction:
    try:
        return Fraction(x) if not isinstance(x, float) else Fraction(str(x))
    except (ValueError, ZeroDivisionError, TypeError) as exc:
        raise SchemaError(f"{where}: bad rational {x!r}") from exc


def _int_vec(v, where: str) -> list[int]:
    if not isinstance(v, list) or not all(isinstance(x, int) for x in v):
        raise SchemaError(f"{where}: expected a list of integers")
    return v


def _fan(d: dict, where: str) -> Fan:
    n = _need(d, "ambient_dim", where)
    rays = [_int_vec(r, f"{where}.rays[{i}]") for i, r in enumerate(d.get("rays", []))]
    cones = [_int_vec(c, f"{where}.cones[{i}]") for i, c in enumerate(d.get("cones", []))]
    return Fan(n, rays, cones)


def _fail(report, what: str):
    exc = ValidationError(f"{what}: {', '.join(sorted(report.codes()))}")
    exc.report = report
    raise exc


def _complex(d: dict, where: str, validate: bool) -> TropicalComplex:
    n = _need(d, "ambient_dim", where)
    fan = _fan(d["fan"], f"{where}.fan") if "fan" in d else trivial_fan(n)
    cells = []
    for i, cd in enumerate(_need(d, "cells", where)):
        w = f"{where}.cells[{i}]"
        verts = [[_rational(x, w) for x in v] for v in cd.get("vertices", [])]
        rays = [_int_vec(r, f"{w}.rays") for r in cd.get("rays", [])]
        lin = [_int_vec(r, f"{w}.lineality") for r in cd.get("lineality", [])]
        if any(len(v) != n for v in verts + rays + lin):
            raise SchemaError(f"{w}: coordinate length differs from ambient_dim {n}")
        poly = RationalPolyhedron.make(n, verts, rays, lin, normalize=False)
        cells.append(Cell(str(_need(cd, "id", w)), tuple(cd.get("sedentarity", [])), poly, tuple(cd.get("faces", [])), dict(cd.get("meta", {}))))
    try:
        c = TropicalComplex(n, fan, cells, d.get("meta", {}))
    except Exception as exc:
        raise SchemaError(f"{where}: {exc}") from exc
    if validate:
        rep = validate_complex(c)
        if not rep.ok:
            _fail(rep, where)
    return c


def _phase(d: dict, where: str, c: TropicalComplex) -> RealPhaseStructure:
    phases = {}
    for fid, sd in sorted(_need(d, "facet_phases", where).items()):
        w = f"{where}.facet_phases.{fid}"
        try:
            if "points" in sd:
                sub = gf2.affine_canonical([tuple(p) for p in sd["points"]])
            else:
                base = _int_vec(_need(sd, "base", w), w)
                sub = gf2.affine_canonical(base=base, directions=[_int_vec(r, w) for r in sd.get("directions", [])], ambient_dim=len(base))
        except SchemaError:
            raise
        except Exception as exc:
            raise SchemaError(f"{w}: {exc}") from exc
        phases[fid] = sub
    return RealPhaseStructure(c, phases)


def parse_input(path, validate: bool = True, _seen=None):
    """Load a JSON object of one of the supported kinds.

    Phases name their complex under ``"complex"`` (a path relative to the
    phase file or a corpus name). With ``validate`` the module validators run
    eagerly; phases are structurally parsed but their even-covering check is
    left to ``validate_phase`` so that broken phases remain inspectable.

    Raises:
        ParseError, SchemaError, ValidationError.
    """
    path = Path(path) if Path(path).is_file() else resolve(str(path))
    d = load_json(path)
    where = str(path.name)
    kind = _need(d, "kind", where)
    if kind not in KINDS:
        raise SchemaError(f"{where}: unknown kind {kind!r}")
    if kind == "fan":
        return _fan(d, where)
    if kind == "complex":
        return _complex(d, where, validate)
    if kind == "matroid":
        m = Matroid(_need(d, "ground", where), _need(d, "bases", where), check=False)
        if validate:
            rep = validate_matroid(m)
            if not rep.ok:
                _fail(rep, where)
        return m
    if kind == "oriented_matroid":
        if "realization" in d:
            return covectors_from_realization([[_rational(x, where) for x in row] for row in d["realization"]])
        om = OrientedMatroid(_need(d, "ground", where), _need(d, "covectors", where), check=False)
        if validate:
            rep = validate_covectors(om)
            if not rep.ok:
                _fail(rep, where)
        return om
    c = parse_input(resolve(_need(d, "complex", where), path.parent), validate)
    return _phase(d, where, c)
