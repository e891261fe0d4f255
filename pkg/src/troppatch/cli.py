"""Command-line interface: ``troppatch <command> [options] OBJECT...``.

Objects are JSON files or names of bundled corpus entries. Every command
prints a text table and can write a deterministic JSON report with
``--json PATH`` (``-`` for stdout). Exit codes: 0 success or certified,
2 refuted or violated, 1 error.
"""

from __future__ import annotations

import argparse
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from . import io
from .cosheaf import build_Fp, build_Kp, build_sign_cosheaf, chain_complex, homology_dims
from .errors import MissingObject, TropPatchError, UnknownCommand, ValidationError
from .invariants import betti_bounds, bm_concentrated, euler_signature, hirzebruch
from .matroid import Matroid, bergman_fan, characteristic_polynomial, poly_str
from .oriented_matroid import OrientedMatroid, phase_from_om, tope_count
from .patchwork import build_patchwork, check_closed_chain, positive_special_fibre_poset, q_posets
from .phase import RealPhaseStructure, validate_phase
from .polyhedral import Fan, TropicalComplex, recession_fan, validate_complex
from .posets import (
    bounded_cubical_poset,
    compactification_certificate,
    interval_poset,
    poset_isomorphic,
    special_fibre_poset,
)

EXIT_OK, EXIT_ERROR, EXIT_REFUTED = 0, 1, 2


def threads() -> int:
    try:
        return max(1, int(os.environ.get("TROPPATCH_THREADS", "1")))
    except ValueError:
        return 1


def parallel_map(fn, items) -> list:
    items = list(items)
    n = threads()
    if n == 1 or len(items) < 2:
        return [fn(x) for x in items]
    with ThreadPoolExecutor(max_workers=n) as pool:
        return list(pool.map(fn, items))


class Workspace:
    """Objects loaded by name, with the sha256 of every file read."""

    def __init__(self):
        self.objects = {}
        self.hashes = {}

    def load(self, name: str, validate: bool = True):
        path = io.resolve(name)
        obj = io.parse_input(path, validate)
        self.hashes[path.name] = io.file_hash(path)
        if isinstance(obj, RealPhaseStructure):
            d = io.load_json(path)
            cpath = io.resolve(d["complex"], path.parent)
            self.hashes[cpath.name] = io.file_hash(cpath)
        self.objects[name] = obj
        return obj

    def pick(self, names, kind, validate=True, required=True):
        for n in names:
            obj = self.objects.get(n) or self.load(n, validate)
            if isinstance(obj, kind):
                return obj
        if required:
            raise MissingObject(f"no {kind.__name__} among {list(names)}")
        return None


def _phase_and_complex(ws: Workspace, names, validate=True):
    """A phase, rebound to an explicitly named complex when one is given."""
    e = ws.pick(names, RealPhaseStructure, validate)
    c = ws.pick(names, TropicalComplex, validate, required=False)
    if c is not None:
        if set(c.cell_ids) != set(e.complex.cell_ids):
            raise MissingObject("the phase belongs to a different complex")
        e = RealPhaseStructure(c, e.facet_phases)
    return e.complex, e


# commands return (status, result dict, optional poset json)


def cmd_validate(ws, a):
    try:
        obj = ws.load(a.objects[0], validate=True)
    except ValidationError as exc:
        rep = getattr(exc, "report", None)
        return EXIT_REFUTED, {"ok": False, **(rep.to_json() if rep is not None else {"error": str(exc)})}, None
    if isinstance(obj, TropicalComplex):
        return EXIT_OK, validate_complex(obj).to_json(), None
    if isinstance(obj, RealPhaseStructure):
        rep = validate_phase(obj.complex, obj)
        return (EXIT_OK if rep.ok else EXIT_REFUTED), rep.to_json(), None
    return EXIT_OK, {"ok": True, "kind": type(obj).__name__}, None


def cmd_phase_check(ws, a):
    c, e = _phase_and_complex(ws, a.objects)
    rep = validate_phase(c, e)
    return (EXIT_OK if rep.ok else EXIT_REFUTED), rep.to_json(), None


def cmd_patchwork(ws, a):
    c, e = _phase_and_complex(ws, a.objects)
    pw = build_patchwork(c, e)
    counts = {}
    for x in pw.cells:
        counts[str(pw.dims[x])] = counts.get(str(pw.dims[x]), 0) + 1
    closed = check_closed_chain(pw)
    res = {
        "cells": len(pw),
        "cells_by_dim": counts,
        "euler": pw.euler(False),
        "euler_bm": pw.euler(True),
        "closed": closed.ok,
    }
    return EXIT_OK, res, pw.poset().to_json()


def cmd_closed_check(ws, a):
    c, e = _phase_and_complex(ws, a.objects)
    pw = build_patchwork(c, e, validate=False)
    r = check_closed_chain(pw)
    return (EXIT_OK if r.ok else EXIT_REFUTED), r.to_json(), None


def cmd_homology(ws, a):
    if a.cosheaf == "fp":
        c = ws.pick(a.objects, TropicalComplex, required=False) or ws.pick(a.objects, RealPhaseStructure).complex
        ps = [a.p] if a.p is not None else list(range(c.d + 1))
        dims = parallel_map(lambda p: homology_dims(chain_complex(build_Fp(c, p), a.bm)), ps)
        res = {"cosheaf": "fp", "borel_moore": a.bm, "dims": dims[0] if a.p is not None else {str(p): d for p, d in zip(ps, dims)}}
        return EXIT_OK, res, None
    c, e = _phase_and_complex(ws, a.objects)
    if a.cosheaf == "sign":
        f = build_sign_cosheaf(c, e)
    else:
        f = build_Kp(c, e, a.p or 0)
    res = {"cosheaf": a.cosheaf, "p": a.p, "borel_moore": a.bm, "dims": homology_dims(chain_complex(f, a.bm)), "stalks": f.stalk_dims()}
    return EXIT_OK, res, None


def cmd_betti_bounds(ws, a):
    c, e = _phase_and_complex(ws, a.objects)
    rep = betti_bounds(c, e, a.bm)
    return (EXIT_OK if rep.holds else EXIT_REFUTED), rep.to_json(), None


def cmd_euler(ws, a):
    c, e = _phase_and_complex(ws, a.objects)
    r = euler_signature(c, e)
    ok = r["equal"] and r["equal_bm"] and r["chain_level_agrees"]
    return (EXIT_OK if ok else EXIT_REFUTED), r, None


def cmd_hirzebruch(ws, a):
    c = ws.pick(a.objects, TropicalComplex, required=False) or ws.pick(a.objects, RealPhaseStructure).complex
    coeffs = hirzebruch(c)
    res = {"coefficients": coeffs, "polynomial": poly_str(coeffs, "y"), "value_at_minus_one": sum(x * (-1) ** k for k, x in enumerate(coeffs)), "bm_concentrated_in_top_degree": bm_concentrated(c)}
    status = EXIT_OK
    if a.matroid:
        m = ws.pick([a.matroid], Matroid)
        _, red = characteristic_polynomial(m)
        res["reduced_characteristic_polynomial"] = poly_str(red, "y")
        res["matches_matroid"] = red == coeffs
        status = EXIT_OK if res["matches_matroid"] else EXIT_REFUTED
    return status, res, None


def cmd_bergman(ws, a):
    m = ws.pick([a.matroid], Matroid)
    c = bergman_fan(m, projective=a.projective)
    return EXIT_OK, {"cells": len(c.cell_ids), "dim": c.d, "complex": c.to_json()}, None


def cmd_phase_from_om(ws, a):
    om = ws.pick(a.objects, OrientedMatroid)
    c = ws.pick(a.objects, TropicalComplex)
    e = phase_from_om(om, c)
    rep = validate_phase(c, e)
    return (EXIT_OK if rep.ok else EXIT_REFUTED), {"valid": rep.ok, "phase": e.to_json()}, None


def cmd_tope_count(ws, a):
    om = ws.pick(a.objects, OrientedMatroid)
    r = tope_count(om)
    return (EXIT_OK if r["zaslavsky_match"] else EXIT_REFUTED), r, None


def cmd_compactify(ws, a):
    c = ws.pick(a.objects, TropicalComplex)
    fan = ws.pick([a.fan], Fan)
    cc, cert = compactification_certificate(c, fan)
    res = {"cells": len(cc.cell_ids), "certificate": cert.to_json(), "complex": cc.to_json()}
    return (EXIT_OK if cert.ok else EXIT_REFUTED), res, cc.poset().to_json()


def cmd_poset(ws, a):
    kind = a.which
    names = a.objects
    if kind == "int":
        c = ws.pick(names, TropicalComplex)
        p = interval_poset(c.poset())
        return EXIT_OK, {"elements": len(p)}, p.to_json()
    if kind == "iso":
        cs = [ws.pick([n], TropicalComplex) for n in names]
        if len(cs) == 1:
            fan = ws.pick([a.fan], Fan) if a.fan else recession_fan(cs[0])
            _, cert = compactification_certificate(cs[0], fan)
        else:
            cert = poset_isomorphic(cs[0].poset(), cs[1].poset())
        return (EXIT_OK if cert.ok else EXIT_REFUTED), cert.to_json(), None
    P = ws.pick(names[:1], TropicalComplex)
    rest = names[1:]
    e = ws.pick(rest, RealPhaseStructure, required=False) if rest else None
    if e is not None:
        xs = e.complex.cell_ids
    elif rest:
        xs = ws.pick(rest, TropicalComplex).cell_ids
    else:
        xs = P.cell_ids
    if kind == "bc":
        p = bounded_cubical_poset(P, xs)
        return EXIT_OK, {"elements": len(p)}, p.to_json()
    if kind == "special-fibre":
        p, certs = special_fibre_poset(P, xs)
        ok = all(c.ok for c in certs.values())
        return (EXIT_OK if ok else EXIT_REFUTED), {"elements": len(p), "certificates": {k: v.to_json() for k, v in certs.items()}}, p.to_json()
    if e is None:
        raise MissingObject("poset q needs a phase on the subcomplex")
    qp, qx = q_posets(P, xs, e)
    psf, marked, cert = positive_special_fibre_poset(P, xs, e)
    res = {"Q(P)": len(qp), "Q(X,E)": len(qx), "positive_special_fibre": len(psf), "certificate": cert.to_json()}
    return (EXIT_OK if cert.ok else EXIT_REFUTED), res, psf.to_json(marked)


COMMANDS = {
    "validate": cmd_validate,
    "phase-check": cmd_phase_check,
    "patchwork": cmd_patchwork,
    "closed-check": cmd_closed_check,
    "homology": cmd_homology,
    "betti-bounds": cmd_betti_bounds,
    "euler": cmd_euler,
    "hirzebruch": cmd_hirzebruch,
    "bergman": cmd_bergman,
    "phase-from-om": cmd_phase_from_om,
    "tope-count": cmd_tope_count,
    "compactify": cmd_compactify,
    "poset": cmd_poset,
}


HELP = {
    "validate": "validate complexes, fans, matroids, oriented matroids or phases",
    "phase-check": "validate a real phase structure on its complex",
    "patchwork": "build the patchwork of a phase and report its cells and Betti numbers",
    "closed-check": "check that the patchwork is a closed cellular chain",
    "homology": "homology of F_p, the sign cosheaf or K_p",
    "betti-bounds": "patchwork Betti numbers against sums of F_p homology",
    "euler": "Euler characteristics against tropical signatures",
    "hirzebruch": "chi_y from Borel-Moore F_p homology, optionally against a matroid",
    "bergman": "Bergman fan of a matroid",
    "phase-from-om": "real phase structure on a Bergman fan from an oriented matroid",
    "tope-count": "tope count against the Whitney-sum prediction",
    "compactify": "compactify a complex in a fan and certify its face poset",
    "poset": "interval, bounded-cubical, special-fibre, Q and isomorphism posets",
}


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", metavar="PATH", help="write the JSON report to PATH ('-' for stdout)")
    common.add_argument("--emit-poset", metavar="PATH", help="write the relevant poset as JSON")
    ap = argparse.ArgumentParser(prog="troppatch", description="Real phase structures, patchworks and tropical homology over GF(2).")
    sub = ap.add_subparsers(dest="command", metavar="COMMAND")
    for name in ("validate", "phase-check", "patchwork", "closed-check", "betti-bounds", "euler", "phase-from-om", "tope-count"):
        sp = sub.add_parser(name, parents=[common], help=HELP[name])
        sp.add_argument("objects", nargs="+")
        if name == "betti-bounds":
            sp.add_argument("--bm", action="store_true")
    sp = sub.add_parser("homology", parents=[common], help=HELP["homology"])
    sp.add_argument("--cosheaf", choices=["fp", "sign", "kp"], required=True)
    sp.add_argument("--p", type=int)
    sp.add_argument("--bm", action="store_true")
    sp.add_argument("objects", nargs="+")
    sp = sub.add_parser("hirzebruch", parents=[common], help=HELP["hirzebruch"])
    sp.add_argument("--matroid")
    sp.add_argument("objects", nargs="+")
    sp = sub.add_parser("bergman", parents=[common], help=HELP["bergman"])
    sp.add_argument("--matroid", required=True)
    sp.add_argument("--projective", action="store_true")
    sp = sub.add_parser("compactify", parents=[common], help=HELP["compactify"])
    sp.add_argument("--fan", required=True)
    sp.add_argument("objects", nargs="+")
    sp = sub.add_parser("poset", parents=[common], help=HELP["poset"])
    sp.add_argument("which", choices=["int", "bc", "special-fibre", "q", "iso"])
    sp.add_argument("--fan")
    sp.add_argument("objects", nargs="+")
    return ap


def _table(res, indent: int = 0) -> list[str]:
    lines = []
    pad = "  " * indent
    for k in sorted(res):
        v = res[k]
        if isinstance(v, dict) and k not in ("complex", "phase"):
            lines.append(f"{pad}{k}:")
            lines += _table(v, indent + 1)
        elif k in ("complex", "phase", "bijection"):
            lines.append(f"{pad}{k}: <{len(v)} entries, see JSON>")
        else:
            lines.append(f"{pad}{k}: {v}")
    return lines


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; the exit-code contract reserves 2 for refutations
        return EXIT_OK if exc.code == 0 else EXIT_ERROR
    if not args.command:
        ap.print_help()
        return EXIT_ERROR
    ws = Workspace()
    try:
        if args.command not in COMMANDS:
            raise UnknownCommand(args.command)
        status, result, poset = COMMANDS[args.command](ws, args)
    except TropPatchError as exc:
        print(f"error: {exc.code}: {exc}", file=sys.stderr)
        return EXIT_ERROR
    report = {
        "command": args.command,
        "inputs": dict(sorted(ws.hashes.items())),
        "status": {EXIT_OK: "ok", EXIT_REFUTED: "refuted"}[status],
        "result": result,
    }
    text = io.dumps(report)
    if args.json == "-":
        print(text)
    else:
        print(f"{args.command}: {report['status']}")
        print("\n".join(_table(result, 1)))
        if args.json:
            Path(args.json).write_text(text + "\n", encoding="utf-8")
    if getattr(args, "emit_poset", None) and poset is not None:
        Path(args.emit_poset).write_text(io.dumps(poset) + "\n", encoding="utf-8")
    return status


if __name__ == "__main__":
    sys.exit(main())
