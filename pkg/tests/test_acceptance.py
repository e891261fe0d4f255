"""Acceptance gate: one test per criterion, each printing a PASS/FAIL line in the summary."""

import time

from troppatch.cli import main as cli_main
from troppatch.cosheaf import build_Fp, build_sign_cosheaf, chain_complex, check_exact_sequence, homology_dims
from troppatch.invariants import betti_bounds, euler_signature, fp_homology, hirzebruch, matroid_manifold_profile
from troppatch.io import corpus_names
from troppatch.matroid import bergman_fan, characteristic_polynomial, poly_eval, uniform_matroid
from troppatch.oriented_matroid import covectors_from_realization, phase_from_om, topes
from troppatch.patchwork import build_patchwork, check_closed_chain, positive_special_fibre_poset, q_posets
from troppatch.phase import transfer_under_subdivision, validate_phase
from troppatch.polyhedral import TropicalComplex, recession_fan
from troppatch.posets import (
    bounded_cubical_poset,
    compactification_certificate,
    compactification_poset,
    interval_poset,
    poset_isomorphic,
    special_fibre_poset,
    verify_isomorphism,
)

GOOD_PHASES = [n for n in corpus_names() if n.endswith("_phase")]
COVER_BREAKS = ["u23_phase_broken_cover", "u34_phase_broken_cover", "conic_phase_broken_cover"]
PARALLEL_BREAKS = ["straight_phase_broken_parallel"]

# generic real arrangements: any two rows independent, any three (in rank 3) independent
REALIZATIONS = {
    "U_{2,3}": ([(1, 0), (0, 1), (1, 1)], 6),
    "U_{3,4}": ([(1, 0, 0), (0, 1, 0), (0, 0, 1), (1, 1, 1)], 14),
}


def _checks(e):
    c = e.complex
    t = time.perf_counter()
    valid = validate_phase(c, e).ok
    closed = check_closed_chain(build_patchwork(c, e, validate=False)).ok
    return valid, closed, time.perf_counter() - t


def test_criterion_1_even_covering_iff_closed(corpus, record):
    bad = []
    slowest = 0.0
    for name in GOOD_PHASES:
        valid, closed, dt = _checks(corpus(name))
        slowest = max(slowest, dt)
        if not (valid and closed and dt < 1.0):
            bad.append(name)
    for name in COVER_BREAKS:
        # defect at a sedentarity-0 codim-1 face: both checks must fail together
        valid, closed, dt = _checks(corpus(name))
        slowest = max(slowest, dt)
        if valid or closed or dt >= 1.0:
            bad.append(name)
    for name in PARALLEL_BREAKS:
        # a translated facet still covers evenly: exactly the validator fails
        valid, closed, dt = _checks(corpus(name))
        slowest = max(slowest, dt)
        if valid or not closed or dt >= 1.0:
            bad.append(name)
    n = len(GOOD_PHASES) + len(COVER_BREAKS) + len(PARALLEL_BREAKS)
    record("1", not bad, f"{n} phases checked, slowest {slowest:.3f}s, mismatches {bad}")
    assert not bad


def test_criterion_2_zaslavsky(record):
    got = {}
    for label, (rows, expected) in REALIZATIONS.items():
        om = covectors_from_realization(rows)
        m = om.underlying_matroid()
        chi, _ = characteristic_polynomial(m)
        got[label] = (len(topes(om)), (-1) ** m.rank * poly_eval(chi, -1), expected)
    ok = all(a == b == c for a, b, c in got.values())
    record("2", ok, "; ".join(f"{k}: topes={a} whitney={b} expected={c}" for k, (a, b, c) in got.items()))
    assert ok


def test_criterion_3_dimension_identity(corpus, record):
    details = []
    ok = True
    for r, n, om_name, center in [(2, 3, "u23_om", 3), (3, 4, "u34_om", 7)]:
        c = bergman_fan(uniform_matroid(r, n), projective=True)
        e = phase_from_om(corpus(om_name), c)
        sign = build_sign_cosheaf(c, e)
        fps = [build_Fp(c, p) for p in range(c.d + 1)]
        faces_ok = all(sum(f.dim(t) for f in fps) == sign.dim(t) for t in c.cell_ids)
        at_center = sign.dim("{}")
        ok &= faces_ok and at_center == center
        details.append(f"U_{{{r},{n}}}: {len(c.cell_ids)} faces ok={faces_ok}, center {at_center} (want {center})")
    record("3", ok, "; ".join(details))
    assert ok


def test_criterion_4_exact_sequences(corpus, record):
    details = []
    ok = True
    for name in ["u23_phase", "u34_phase", "u23_tp2_phase"]:
        e = corpus(name)
        results = [check_exact_sequence(e.complex, e, p) for p in range(e.complex.d + 1)]
        good = all(x.ok for x in results)
        ok &= good
        details.append(f"{name}: p=0..{e.complex.d} {'exact' if good else 'FAILED'}")
    record("4", ok, "; ".join(details))
    assert ok


def test_criterion_5_line_bounds(corpus, record):
    e = corpus("u23_phase")
    c = e.complex
    ordinary = betti_bounds(c, e)
    bm = betti_bounds(c, e, borel_moore=True)
    es = euler_signature(c, e)
    ok = (
        ordinary.betti[0] == 3
        and ordinary.table[0][0] + ordinary.table[1][0] == 3
        and (ordinary.table[0][0], ordinary.table[1][0]) == (1, 2)
        and bm.betti[1] == 3
        and (bm.table[0][1], bm.table[1][1]) == (2, 1)
        and es["chi"] == es["sigma"] == 3
        and es["chi_bm"] == es["sigma_bm"] == -3
        and es["chain_level_agrees"]
    )
    record(
        "5",
        ok,
        f"b0={ordinary.betti[0]}<=1+2, b1BM={bm.betti[1]}<=2+1, chi={es['chi']} sigma={es['sigma']}, "
        f"chiBM={es['chi_bm']} sigmaBM={es['sigma_bm']}",
    )
    assert ok


def test_criterion_6_manifold_profiles(corpus, record):
    details = []
    ok = True
    e = corpus("u23_tp2_phase")
    line = build_patchwork(e.complex, e).betti()
    ok &= line == [1, 1]
    details.append(f"compactified line patchwork {line}")
    for m, om, rp, sphere in [("u23", "u23_om", [1, 1], [2]), ("u34", "u34_om", [1, 1, 1], [1, 1])]:
        t = time.perf_counter()
        rep = matroid_manifold_profile(corpus(m), corpus(om))
        dt = time.perf_counter() - t
        good = rep["rp_betti"] == rp and rep["rp_match"] and rep["sphere_betti"] == sphere and rep["sphere_match"] and dt < 10
        ok &= bool(good)
        details.append(f"{m}: RP {rep['rp_betti']} spheres {rep['sphere_betti']} x{rep['topes_checked']} in {dt:.2f}s")
    e = corpus("u34_tp3_phase")
    plane = build_patchwork(e.complex, e).betti()
    ok &= plane == [1, 1, 1]
    details.append(f"corpus RP^2 patchwork {plane}")
    record("6", ok, "; ".join(details))
    assert ok


def test_criterion_7_hirzebruch(corpus, record):
    details = []
    ok = True
    for cx, m, ph, want in [("u23_line", "u23", "u23_phase", [-2, 1]), ("u34_plane", "u34", "u34_phase", [3, -3, 1])]:
        c = corpus(cx)
        h = hirzebruch(c)
        _, reduced = characteristic_polynomial(corpus(m))
        d = c.d
        signs = all(a == 0 or (a > 0) == ((d - p) % 2 == 0) for p, a in enumerate(h))
        e = corpus(ph)
        sigma_bm = euler_signature(e.complex, e)["sigma_bm"]
        good = h == reduced == want and signs and poly_eval(h, -1) == sigma_bm
        ok &= good
        details.append(f"{cx}: chi_y={h} reduced={reduced} chi_y(-1)={poly_eval(h, -1)} sigmaBM={sigma_bm}")
    record("7", ok, "; ".join(details))
    assert ok


def _stored_compactification(c):
    base = c.subcomplex([x for x in c.cell_ids if c.sed(x) == ()])
    rec = {x: c.fan.cone_of(base.recession_generators(x)) for x in base.cell_ids}
    return compactification_poset(base.poset(), c.fan.poset(), rec)


def test_criterion_8_poset_certificates(corpus, record):
    details = []
    ok = True
    slowest = 0.0

    def timed(fn):
        nonlocal slowest
        t = time.perf_counter()
        out = fn()
        slowest = max(slowest, time.perf_counter() - t)
        return out

    # (a) every corpus complex
    count = 0
    for name in corpus_names():
        if name.startswith("broken"):
            continue
        c = corpus(name)
        if not isinstance(c, TropicalComplex):
            continue
        count += 1
        if c.meta.get("compactified"):
            abstract = _stored_compactification(c)
            cert = timed(lambda: poset_isomorphic(c.poset(), abstract))
            good = cert.ok and verify_isomorphism(c.poset(), abstract, cert.mapping)
        else:
            fan = recession_fan(c)
            cc, cert = timed(lambda: compactification_certificate(c, fan))
            rec = {x: fan.cone_of(c.recession_generators(x)) for x in c.cell_ids}
            abstract = compactification_poset(c.poset(), fan.poset(), rec)
            good = cert.ok and verify_isomorphism(cc.poset(), abstract, cert.mapping)
        if not good:
            ok = False
            details.append(f"(a) {name} FAILED")
    details.append(f"(a) {count} complexes")
    for fan_name, cx in [("tp2_fan", "u23_line"), ("tp3_fan", "u34_coarse")]:
        cc, cert = timed(lambda: compactification_certificate(corpus(cx), corpus(fan_name)))
        ok &= cert.ok
        details.append(f"(a) {cx} in {fan_name}: {len(cc.cell_ids)} cells {cert.ok}")

    # (b) special fibre against intervals and bounded-cubical closure
    for P_name, X_name in [("fig2_P", "fig2_X"), ("fig2_P", None), ("fig3_P", "fig3_X"), ("fig3_P", None)]:
        P = corpus(P_name)
        xs = corpus(X_name).cell_ids if X_name else P.cell_ids
        sf, certs = timed(lambda: special_fibre_poset(P, xs))
        good = all(v.ok for v in certs.values())
        ints = interval_poset(P.poset().subposet(xs))
        bc = bounded_cubical_poset(P, xs, closure=True)
        good = good and verify_isomorphism(sf, ints, certs["interval"].mapping)
        good = good and verify_isomorphism(sf, bc, certs["bounded_cubical"].mapping)
        ok &= good
        details.append(f"(b) {P_name}/{X_name or 'all'}: {len(sf)} cells {good}")

    # (c) positive special fibre against Q(P) with marking Q(X,E)
    for P_name, X_name, ph in [("fig2_P", "fig2_X", "fig2_X_phase"), ("fig3_P", "fig3_X", "fig3_X_phase")]:
        P, e = corpus(P_name), corpus(ph)
        xs = corpus(X_name).cell_ids
        psf, marked, cert = timed(lambda: positive_special_fibre_poset(P, xs, e))
        qp, qx = q_posets(P, xs, e)
        good = cert.ok and verify_isomorphism(psf, qp, cert.mapping, marked, qx.elements)
        ok &= good
        details.append(f"(c) {P_name}: |Q(P)|={len(qp)} |Q(X,E)|={len(qx)} {good}")
    ok &= slowest < 5
    details.append(f"slowest {slowest:.2f}s")
    record("8", ok, "; ".join(details))
    assert ok


def _summary(c, e):
    return {
        "fp": fp_homology(c),
        "fp_bm": fp_homology(c, True),
        "sign": homology_dims(chain_complex(build_sign_cosheaf(c, e))),
        "sign_bm": homology_dims(chain_complex(build_sign_cosheaf(c, e), True)),
        "betti": betti_bounds(c, e).to_json(),
        "betti_bm": betti_bounds(c, e, True).to_json(),
        "euler": euler_signature(c, e),
        "hirzebruch": hirzebruch(c),
    }


def test_criterion_9_subdivision_invariance(corpus, record):
    details = []
    ok = True
    for coarse, fine in [("u23_phase", "u23_line_fine"), ("conic_phase", "conic_fine")]:
        e = corpus(coarse)
        fc = corpus(fine)
        ef = transfer_under_subdivision(e.complex, e, fc)
        a, b = _summary(e.complex, e), _summary(fc, ef)
        same = a == b and len(fc.cell_ids) > len(e.complex.cell_ids)
        ok &= same
        details.append(f"{coarse}->{fine}: {len(e.complex.cell_ids)}->{len(fc.cell_ids)} cells, invariants equal={a == b}")
    record("9", ok, "; ".join(details))
    assert ok


SUITE = [
    ["validate", "u23_line"],
    ["validate", "u34_plane"],
    ["phase-check", "u34_phase"],
    ["patchwork", "u23_phase"],
    ["closed-check", "conic_phase"],
    ["homology", "--cosheaf", "sign", "--bm", "u23_phase"],
    ["homology", "--cosheaf", "kp", "--p", "1", "u34_phase"],
    ["betti-bounds", "u23_phase"],
    ["betti-bounds", "--bm", "u34_phase"],
    ["euler", "conic_phase"],
    ["hirzebruch", "u34_plane", "--matroid", "u34"],
    ["bergman", "--matroid", "u34", "--projective"],
    ["phase-from-om", "u34_om", "u34_plane"],
    ["tope-count", "u34_om"],
    ["compactify", "u23_line", "--fan", "tp2_fan"],
    ["poset", "special-fibre", "fig3_P", "fig3_X"],
    ["poset", "q", "fig3_P", "fig3_X_phase"],
    ["poset", "iso", "fig3_P"],
]


def test_criterion_10_determinism(tmp_path, record, capsys):
    runs = []
    codes = []
    for k in range(2):
        blobs = []
        for i, argv in enumerate(SUITE):
            out = tmp_path / f"run{k}_{i}.json"
            codes.append(cli_main(argv + ["--json", str(out)]))
            blobs.append(out.read_bytes())
        runs.append(blobs)
    capsys.readouterr()
    same = runs[0] == runs[1]
    ok = same and all(c == 0 for c in codes)
    record("10", ok, f"{len(SUITE)} CLI reports x2, byte-identical={same}, exit codes {sorted(set(codes))}")
    assert ok
