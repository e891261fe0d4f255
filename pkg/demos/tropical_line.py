"""Patchworking the tropical line in R^2.

Loads the line and its phase from the bundled corpus, builds the real part,
and prints homology of the cosheaves next to the Euler/signature values.
"""

from troppatch.cosheaf import check_exact_sequence
from troppatch.invariants import betti_bounds, euler_signature, hirzebruch
from troppatch.io import parse_input
from troppatch.patchwork import build_patchwork, check_closed_chain


def main():
    e = parse_input("u23_phase")
    c = e.complex
    pw = build_patchwork(c, e)
    print(f"patchwork cells: {len(pw.cells)}  closed: {check_closed_chain(pw).ok}")

    for bm in (False, True):
        rep = betti_bounds(c, e, bm)
        tag = "BM " if bm else ""
        print(f"{tag}F_p table {rep.table}  patchwork betti {rep.betti}  bound {rep.bound}")

    es = euler_signature(c, e)
    print(f"chi={es['chi']} sigma={es['sigma']}  chi_BM={es['chi_bm']} sigma_BM={es['sigma_bm']}")
    print("chi_y coefficients:", hirzebruch(c))

    for p in range(c.d + 1):
        print(f"0 -> K_{p + 1} -> K_{p} -> F_{p} -> 0 exact:", check_exact_sequence(c, e, p).ok)

    # the compactified line in TP^2 is a circle
    e2 = parse_input("u23_tp2_phase")
    print("compactified line betti:", build_patchwork(e2.complex, e2).betti())


if __name__ == "__main__":
    main()
