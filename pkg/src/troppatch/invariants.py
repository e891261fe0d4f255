"""Betti bounds, Euler characteristics against signatures, Hirzebruch polynomials
and manifold profiles of matroid patchworks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .cosheaf import build_Fp, build_sign_cosheaf, chain_complex, homology_dims
from .errors import MatroidMismatch, PhaseInvalid
from .matroid import Matroid, coarse_projective_fan
from .oriented_matroid import OrientedMatroid, las_vergnas_lattice, phase_from_om, topes
from .patchwork import build_patchwork, check_closed_chain
from .phase import RealPhaseStructure, validate_phase
from .polyhedral import TropicalComplex, compactify, projective_space_fan
from .posets import order_complex, simplicial_betti

__all__ = [
    "BettiReport",
    "fp_homology",
    "betti_bounds",
    "euler_signature",
    "hirzebruch",
    "bm_concentrated",
    "matroid_manifold_profile",
]


def _pad(dims: list, n: int) -> list:
    return list(dims) + [0] * (n - len(dims))


def fp_homology(c: TropicalComplex, borel_moore: bool = False) -> list[list[int]]:
    """Table h[p][q] = dim H_q(X; F_p), p and q from 0 to dim X."""
    d = c.d
    return [_pad(homology_dims(chain_complex(build_Fp(c, p), borel_moore)), d + 1) for p in range(d + 1)]


def _signature(table: list[list[int]]) -> int:
    return sum((-1) ** q * h for row in table for q, h in enumerate(row))


@dataclass
class BettiReport:
    """Patchwork Betti numbers against sums of F_p homology.

    ``table[p][q]`` is dim H_q(X; F_p), which is also the E^1 page of the
    spectral sequence of the K_p filtration.
    """

    borel_moore: bool
    table: list = field(default_factory=list)
    betti: list = field(default_factory=list)
    bound: list = field(default_factory=list)
    slack: list = field(default_factory=list)
    holds: bool = True
    euler: int = 0
    signature: int = 0

    def to_json(self) -> dict:
        return {
            "borel_moore": self.borel_moore,
            "fp_homology": self.table,
            "e1_page": {f"{p},{q}": h for p, row in enumerate(self.table) for q, h in enumerate(row)},
            "patchwork_betti": self.betti,
            "bound": self.bound,
            "slack": self.slack,
            "holds": self.holds,
            "euler": self.euler,
            "signature": self.signature,
        }


def _require_valid(c, e):
    rep = validate_phase(c, e)
    if not rep.ok:
        raise PhaseInvalid(rep.violations)


def betti_bounds(c: TropicalComplex, e: RealPhaseStructure, borel_moore: bool = False) -> BettiReport:
    """b_q of the patchwork (via the sign cosheaf) against sum_p dim H_q(X; F_p).

    Raises:
        PhaseInvalid: if the phase fails validation.
    """
    _require_valid(c, e)
    d = c.d
    betti = _pad(homology_dims(chain_complex(build_sign_cosheaf(c, e), borel_moore)), d + 1)
    table = fp_homology(c, borel_moore)
    bound = [sum(table[p][q] for p in range(d + 1)) for q in range(d + 1)]
    slack = [b - x for b, x in zip(bound, betti)]
    return BettiReport(
        borel_moore,
        table,
        betti,
        bound,
        slack,
        all(s >= 0 for s in slack),
        sum((-1) ** q * b for q, b in enumerate(betti)),
        _signature(table),
    )


def euler_signature(c: TropicalComplex, e: RealPhaseStructure) -> dict:
    """Euler characteristics of the patchwork against tropical signatures.

    Each Euler characteristic is computed twice: from sign-cosheaf homology
    and by counting patchwork cells.

    Raises:
        PhaseInvalid: if the phase fails validation.
    """
    ordinary = betti_bounds(c, e, False)
    bm = betti_bounds(c, e, True)
    pw = build_patchwork(c, e)
    out = {
        "chi": ordinary.euler,
        "chi_bm": bm.euler,
        "chi_cells": pw.euler(False),
        "chi_bm_cells": pw.euler(True),
        "sigma": ordinary.signature,
        "sigma_bm": bm.signature,
    }
    out["chain_level_agrees"] = out["chi"] == out["chi_cells"] and out["chi_bm"] == out["chi_bm_cells"]
    out["equal"] = out["chi"] == out["sigma"]
    out["equal_bm"] = out["chi_bm"] == out["sigma_bm"]
    return out


def hirzebruch(c: TropicalComplex) -> list[int]:
    """Coefficients (index = power of y) of sum (-1)^(p+q) dim H_q^BM(X; F_p) y^p."""
    table = fp_homology(c, borel_moore=True)
    return [sum((-1) ** (p + q) * h for q, h in enumerate(row)) for p, row in enumerate(table)]


def bm_concentrated(c: TropicalComplex) -> bool:
    """Is Borel-Moore F_p homology zero outside the top degree for every p?"""
    d = c.d
    return all(h == 0 for row in fp_homology(c, True) for q, h in enumerate(row) if q != d)


def _sphere_profile(k: int) -> list[int]:
    if k < 0:
        return []
    if k == 0:
        return [2]
    return [1] + [0] * (k - 1) + [1]


def matroid_manifold_profile(m: Matroid, om: OrientedMatroid) -> dict:
    """Betti numbers of the compactified projective patchwork and of Las Vergnas spheres.

    The projective fan is compactified in the tropical projective space,
    which needs the coarse fan structure; this is available for uniform
    matroids. For other matroids the projective part is reported as
    unsupported and only the sphere profiles are computed.

    Raises:
        MatroidMismatch: if the oriented matroid does not lie over ``m``.
    """
    under = om.underlying_matroid()
    if under.ground_size != m.ground_size or under.bases != m.bases:
        raise MatroidMismatch("oriented matroid has a different underlying matroid")
    r = m.rank
    rp_expected = [1] * r
    report = {"rank": r, "rp_expected": rp_expected}
    if m.is_uniform():
        fan = coarse_projective_fan(m)
        e = phase_from_om(om, fan)
        comp = compactify(fan, projective_space_fan(m.ground_size - 1))
        ec = RealPhaseStructure(comp, {f: e[comp.cells[f].meta["base"]] for f in comp.facets})
        pw = build_patchwork(comp, ec)
        report["rp_betti"] = _pad(pw.betti(), r)
        report["rp_betti_sign_cosheaf"] = _pad(homology_dims(chain_complex(build_sign_cosheaf(comp, ec))), r)
        report["closed"] = check_closed_chain(pw).ok
        report["rp_match"] = report["rp_betti"] == rp_expected == report["rp_betti_sign_cosheaf"]
    else:
        report["rp_betti"] = None
        report["rp_match"] = None
        report["rp_unsupported"] = "compactification in projective space needs a uniform matroid"
    sphere = _sphere_profile(r - 2)
    profiles = []
    for t in topes(om):
        lat = las_vergnas_lattice(om, t)
        proper = lat.subposet([x for x in lat.elements if x not in lat.minimal() and x not in lat.maximal()])
        profiles.append(simplicial_betti(order_complex(proper)))
    report["sphere_expected"] = sphere
    report["sphere_betti"] = profiles[0] if profiles else []
    report["sphere_match"] = all(p == sphere for p in profiles)
    report["topes_checked"] = len(profiles)
    return report

