"""Face posets of special fibres for two small degenerations.

fig2: the real line cut at -1, 0, 1 with X the three vertices.
fig3: the unit square grid with a diagonal, X a conic-shaped subcomplex.
"""

from troppatch.io import parse_input
from troppatch.patchwork import positive_special_fibre_poset, q_posets
from troppatch.posets import special_fibre_poset


def show(P_name, X_name, phase_name):
    P = parse_input(P_name)
    xs = parse_input(X_name).cell_ids
    sf, certs = special_fibre_poset(P, xs)
    print(f"{P_name}: special fibre of {X_name} has {len(sf)} cells;",
          ", ".join(f"{k} iso {v.ok}" for k, v in certs.items()))
    e = parse_input(phase_name)
    qp, qx = q_posets(P, xs, e)
    psf, marked, cert = positive_special_fibre_poset(P, xs, e)
    print(f"  |Q(P)|={len(qp)} |Q(X,E)|={len(qx)}  positive special fibre {len(psf)}, marked {len(marked)}, iso {cert.ok}")


if __name__ == "__main__":
    show("fig2_P", "fig2_X", "fig2_X_phase")
    show("fig3_P", "fig3_X", "fig3_X_phase")
