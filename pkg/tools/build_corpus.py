"""Regenerate the bundled JSON corpus in src/troppatch/corpus.

Run from the repository root: ``python3 tools/build_corpus.py``.
"""

from __future__ import annotations

from pathlib import Path

from troppatch import gf2
from troppatch.io import dumps
from troppatch.matroid import bergman_fan, coarse_projective_fan, uniform_matroid
from troppatch.oriented_matroid import covectors_from_realization, phase_from_om
from troppatch.phase import RealPhaseStructure, transfer_under_subdivision
from troppatch.polyhedral import Cell, RationalPolyhedron, TropicalComplex, compactify, projective_space_fan, trivial_fan

OUT = Path(__file__).resolve().parents[1] / "src" / "troppatch" / "corpus"

U23_ROWS = [[1, 0], [0, 1], [1, 1]]
U34_ROWS = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1]]


def write(name: str, obj: dict) -> None:
    (OUT / f"{name}.json").write_text(dumps(obj) + "\n", encoding="utf-8")


def phase_json(complex_name: str, phases: dict) -> dict:
    return {"kind": "phase", "complex": complex_name, "facet_phases": {k: v.to_json() for k, v in sorted(phases.items())}}


def complex_from(n: int, rows: list, fan=None) -> TropicalComplex:
    """rows: (id, vertices, rays, faces)."""
    cells = [Cell(cid, (), RationalPolyhedron.make(n, v, r), tuple(f)) for cid, v, r, f in rows]
    return TropicalComplex(n, fan or trivial_fan(n), cells)


def line_fine(coarse: TropicalComplex) -> TropicalComplex:
    """Split the ray {0} of the projective tropical line at its primitive point."""
    v = list(coarse.cells["{0}"].polyhedron.rays[0])
    rows = [
        ("{}", [[0, 0]], [], []),
        ("p", [v], [], []),
        ("{0}a", [[0, 0], v], [], ["{}", "p"]),
        ("{0}b", [v], [v], ["p"]),
        ("{1}", [[0, 0]], list(coarse.cells["{1}"].polyhedron.rays), ["{}"]),
        ("{2}", [[0, 0]], list(coarse.cells["{2}"].polyhedron.rays), ["{}"]),
    ]
    return complex_from(2, rows)


def conic_spec(split: bool = False) -> list:
    rows = [
        ("a", [[0, 0]], [], []),
        ("b", [[1, 1]], [], []),
        ("-x", [[0, 0]], [[-1, 0]], ["a"]),
        ("-y", [[0, 0]], [[0, -1]], ["a"]),
        ("+x", [[1, 1]], [[1, 0]], ["b"]),
        ("+y", [[1, 1]], [[0, 1]], ["b"]),
    ]
    if split:
        rows += [("m", [["1/2", "1/2"]], [], []), ("d1", [[0, 0], ["1/2", "1/2"]], [], ["a", "m"]), ("d2", [["1/2", "1/2"], [1, 1]], [], ["m", "b"])]
    else:
        rows += [("d", [[0, 0], [1, 1]], [], ["a", "b"])]
    return rows


CONIC_PHASES = {
    "d": [(1, 0), (0, 1)],
    "-x": [(0, 1), (1, 1)],
    "-y": [(1, 0), (1, 1)],
    "+x": [(0, 0), (1, 0)],
    "+y": [(0, 0), (0, 1)],
}


def fig3_spec() -> list:
    """R^2 cut by x = 0, x = 1, y = 0, y = 1 and the diagonal of the unit square."""
    V = {"00": [0, 0], "10": [1, 0], "01": [0, 1], "11": [1, 1]}
    E, W, N, S = [1, 0], [-1, 0], [0, 1], [0, -1]
    rows = [("a", [V["00"]], [], []), ("b", [V["11"]], [], []), ("c", [V["10"]], [], []), ("e", [V["01"]], [], [])]
    rows += [
        ("d", [V["00"], V["11"]], [], ["a", "b"]),
        ("ac", [V["00"], V["10"]], [], ["a", "c"]),
        ("ae", [V["00"], V["01"]], [], ["a", "e"]),
        ("cb", [V["10"], V["11"]], [], ["c", "b"]),
        ("eb", [V["01"], V["11"]], [], ["e", "b"]),
        ("-x", [V["00"]], [W], ["a"]),
        ("-y", [V["00"]], [S], ["a"]),
        ("+x", [V["11"]], [E], ["b"]),
        ("+y", [V["11"]], [N], ["b"]),
        ("c+x", [V["10"]], [E], ["c"]),
        ("c-y", [V["10"]], [S], ["c"]),
        ("e-x", [V["01"]], [W], ["e"]),
        ("e+y", [V["01"]], [N], ["e"]),
        ("t1", [V["00"], V["10"], V["11"]], [], ["d", "ac", "cb"]),
        ("t2", [V["00"], V["01"], V["11"]], [], ["d", "ae", "eb"]),
        ("sE", [V["10"], V["11"]], [E], ["cb", "c+x", "+x"]),
        ("sW", [V["00"], V["01"]], [W], ["ae", "-x", "e-x"]),
        ("sN", [V["01"], V["11"]], [N], ["eb", "e+y", "+y"]),
        ("sS", [V["00"], V["10"]], [S], ["ac", "-y", "c-y"]),
        ("qNE", [V["11"]], [N, E], ["+x", "+y"]),
        ("qSW", [V["00"]], [S, W], ["-x", "-y"]),
        ("qSE", [V["10"]], [S, E], ["c+x", "c-y"]),
        ("qNW", [V["01"]], [N, W], ["e-x", "e+y"]),
    ]
    return rows


def fig2_spec() -> list:
    return [
        ("v-1", [[-1]], [], []),
        ("v0", [[0]], [], []),
        ("v1", [[1]], [], []),
        ("s-", [[-1], [0]], [], ["v-1", "v0"]),
        ("s+", [[0], [1]], [], ["v0", "v1"]),
        ("r-", [[-1]], [[-1]], ["v-1"]),
        ("r+", [[1]], [[1]], ["v1"]),
    ]


def main() -> None:
    OUT.mkdir(parents=True, exist_ok=True)
    for old in OUT.glob("*.json"):
        old.unlink()

    # matroids and oriented matroids
    u23, u34, u12 = uniform_matroid(2, 3), uniform_matroid(3, 4), uniform_matroid(1, 2)
    write("u12", u12.to_json())
    write("u23", u23.to_json())
    write("u34", u34.to_json())
    om23 = covectors_from_realization(U23_ROWS)
    om34 = covectors_from_realization(U34_ROWS)
    om12 = covectors_from_realization([[1], [1]])
    write("u12_om", om12.to_json())
    write("u23_om", om23.to_json())
    write("u34_om", om34.to_json())
    write("broken_matroid", {"kind": "matroid", "ground": 4, "bases": [[0, 1], [2, 3]]})
    write("broken_om", {"kind": "oriented_matroid", "ground": 2, "covectors": [["0", "0"], ["+", "+"], ["-", "-"], ["+", "-"]]})

    # fans
    write("tp1_fan", projective_space_fan(1).to_json())
    write("tp2_fan", projective_space_fan(2).to_json())
    write("tp3_fan", projective_space_fan(3).to_json())

    # tropical line and its relatives
    line = bergman_fan(u23, projective=True)
    e_line = phase_from_om(om23, line)
    write("u23_line", line.to_json())
    write("u23_phase", phase_json("u23_line", e_line.facet_phases))
    bad = dict(e_line.facet_phases)
    bad["{2}"] = gf2.affine_canonical(base=(0, 0), directions=[(0, 1)], ambient_dim=2)
    write("u23_phase_broken_cover", phase_json("u23_line", bad))

    tp2 = compactify(line, projective_space_fan(2))
    write("u23_line_tp2", tp2.to_json())
    write("u23_tp2_phase", phase_json("u23_line_tp2", {f: e_line[tp2.cells[f].meta["base"]] for f in tp2.facets}))

    fine = line_fine(line)
    write("u23_line_fine", fine.to_json())
    write("u23_fine_phase", phase_json("u23_line_fine", transfer_under_subdivision(line, e_line, fine).facet_phases))

    straight = complex_from(2, [("o", [[0, 0]], [], []), ("l", [[0, 0]], [[-1, 0]], ["o"]), ("r", [[0, 0]], [[1, 0]], ["o"])])
    write("straight_line", straight.to_json())
    flat = gf2.affine_canonical(base=(0, 0), directions=[(1, 0)], ambient_dim=2)
    write("straight_phase", phase_json("straight_line", {"l": flat, "r": flat}))
    tilted = gf2.affine_canonical(base=(0, 0), directions=[(0, 1)], ambient_dim=2)
    write("straight_phase_broken_parallel", phase_json("straight_line", {"l": tilted, "r": tilted}))

    # matroid planes
    plane = bergman_fan(u34, projective=True)
    e_plane = phase_from_om(om34, plane)
    write("u34_plane", plane.to_json())
    write("u34_phase", phase_json("u34_plane", e_plane.facet_phases))
    bad = dict(e_plane.facet_phases)
    first = sorted(bad)[0]
    h = bad[first]
    free = next(i for i in range(h.ambient_dim) if not h.contains(tuple((b + int(j == i)) % 2 for j, b in enumerate(h.base_point))))
    flipped = tuple(1 - x if i == free else x for i, x in enumerate(h.base_point))
    bad[first] = gf2.affine_canonical(base=flipped, directions=list(h.directions), ambient_dim=h.ambient_dim)
    write("u34_phase_broken_cover", phase_json("u34_plane", bad))

    coarse = coarse_projective_fan(u34)
    e_coarse = phase_from_om(om34, coarse)
    tp3 = compactify(coarse, projective_space_fan(3))
    write("u34_coarse", coarse.to_json())
    write("u34_coarse_phase", phase_json("u34_coarse", e_coarse.facet_phases))
    write("u34_plane_tp3", tp3.to_json())
    write("u34_tp3_phase", phase_json("u34_plane_tp3", {f: e_coarse[tp3.cells[f].meta["base"]] for f in tp3.facets}))

    coarse23 = coarse_projective_fan(u23)
    tp2c = compactify(coarse23, projective_space_fan(2))
    e23c = phase_from_om(om23, coarse23)
    write("u23_line_tp2_coarse", tp2c.to_json())
    write("u23_tp2_coarse_phase", phase_json("u23_line_tp2_coarse", {f: e23c[tp2c.cells[f].meta["base"]] for f in tp2c.facets}))

    # conic-style curve
    conic = complex_from(2, conic_spec())
    phases = {k: gf2.affine_canonical(v) for k, v in CONIC_PHASES.items()}
    write("conic", conic.to_json())
    write("conic_phase", phase_json("conic", phases))
    bad = dict(phases)
    bad["+y"] = gf2.affine_canonical([(1, 0), (1, 1)])
    write("conic_phase_broken_cover", phase_json("conic", bad))
    conic_fine = complex_from(2, conic_spec(split=True))
    write("conic_fine", conic_fine.to_json())
    write("conic_fine_phase", phase_json("conic_fine", transfer_under_subdivision(conic, RealPhaseStructure(conic, phases), conic_fine).facet_phases))

    # degenerations
    fig2 = complex_from(1, fig2_spec())
    write("fig2_P", fig2.to_json())
    fig2_x = fig2.subcomplex(["v-1", "v0", "v1"])
    write("fig2_X", fig2_x.to_json())
    write("fig2_X_phase", phase_json("fig2_X", {v: gf2.affine_canonical([(0,)]) for v in ("v-1", "v0", "v1")}))
    fig3 = complex_from(2, fig3_spec())
    write("fig3_P", fig3.to_json())
    fig3_x = fig3.subcomplex([c[0] for c in conic_spec()])
    write("fig3_X", fig3_x.to_json())
    write("fig3_X_phase", phase_json("fig3_X", phases))

    # broken complexes
    overlap = complex_from(1, [("p", [[0]], [], []), ("q", [[1]], [], []), ("r", [[2]], [], []), ("s", [[0], [2]], [], ["p", "r"]), ("t", [[1], [2]], [], ["q", "r"])])
    write("broken_overlap", overlap.to_json())
    nonprim = straight.to_json()
    nonprim["cells"][1]["rays"] = [[-2, 0]]
    write("broken_nonprimitive", nonprim)


if __name__ == "__main__":
    main()
