"""Manifold profiles of uniform matroid patchworks.

For U_{r,n} with r = 1, 2, 3 the compactified projective patchwork should be
RP^{r-1}, and every Las Vergnas proper part a sphere S^{r-2}.
"""

import time

from troppatch.invariants import matroid_manifold_profile
from troppatch.io import parse_input
from troppatch.oriented_matroid import tope_count


def main():
    for m, om in [("u12", "u12_om"), ("u23", "u23_om"), ("u34", "u34_om")]:
        t = time.perf_counter()
        rep = matroid_manifold_profile(parse_input(m), parse_input(om))
        tc = tope_count(parse_input(om))
        print(
            f"{m}: RP betti {rep['rp_betti']} (want {rep['rp_expected']}), "
            f"sphere {rep['sphere_betti']} over {rep['topes_checked']} topes, "
            f"zaslavsky {tc['topes']}={tc['zaslavsky']}  [{time.perf_counter() - t:.2f}s]"
        )


if __name__ == "__main__":
    main()
