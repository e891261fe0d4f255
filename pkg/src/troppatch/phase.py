"""Real phase structures: validation, induced phases, subdivision transfer and stars."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .errors import NotASubdivision, UnknownFace
from .polyhedral import TropicalComplex, ValidationReport, _star_data, fan_complex

__all__ = [
    "RealPhaseStructure",
    "validate_phase",
    "induced_phase_on_face",
    "transfer_under_subdivision",
    "star_phase",
]


@dataclass
class RealPhaseStructure:
    """Affine subspaces of (Z/2)^m attached to the facets of a complex.

    Phases live in the coordinates of the complex's sedentarity stratum.
    """

    complex: TropicalComplex
    facet_phases: dict = field(default_factory=dict)

    def __getitem__(self, facet_id) -> gf2.Z2AffineSubspace:
        return self.facet_phases[facet_id]

    def to_json(self) -> dict:
        return {"kind": "phase", "facet_phases": {k: v.to_json() for k, v in sorted(self.facet_phases.items())}}


def validate_phase(c: TropicalComplex, e: RealPhaseStructure) -> ValidationReport:
    """Parallel condition on facets and even covering at codimension-one faces.

    The covering condition is checked at codim-1 faces of the complex's own
    sedentarity only; faces at the boundary strata are not constrained.
    """
    rep = ValidationReport()
    facets = c.facets
    d = c.d
    sed = c.sedentarity
    missing = sorted(set(facets) - set(e.facet_phases))
    extra = sorted(set(e.facet_phases) - set(facets))
    if missing or extra:
        rep.add("FacetMismatch", {"missing": missing, "extra": extra})
        return rep
    for f in facets:
        sub = e[f]
        want = tuple(c.tangent_z2(f))
        if sub.ambient_dim != c.stratum_dim(f) or sub.dim != c.dim(f) or sub.directions != want:
            rep.add("NotParallel", f)
    for t in c.cell_ids:
        if c.sed(t) != sed or c.dim(t) != d - 1:
            continue
        above = [f for f in facets if c.le(t, f)]
        counts = Counter(p for f in above for p in e[f].points())
        odd = sorted(p for p, k in counts.items() if k % 2)
        if odd:
            rep.add("NotEvenCovering", t)
    rep.info = {"facets": len(facets), "dim": d}
    return rep


def induced_phase_on_face(c: TropicalComplex, e: RealPhaseStructure, face_id) -> list[tuple]:
    """Union of the projections of the phases of all facets containing the face."""
    if face_id not in c.cells:
        raise UnknownFace(face_id)
    out = set()
    for f in c.facets_above(face_id):
        pr = c.proj_z2(f, face_id)
        out.update(e[f].image(pr).points())
    return sorted(out)


def transfer_under_subdivision(c_coarse: TropicalComplex, e_coarse: RealPhaseStructure, c_fine: TropicalComplex) -> RealPhaseStructure:
    """Each fine facet inherits the phase of the coarse facet containing it.

    Raises:
        NotASubdivision: if a fine facet is not inside a unique coarse facet of
            the same dimension, or a coarse facet receives no fine facet.
    """
    phases = {}
    used = set()
    for f in c_fine.facets:
        poly = c_fine.stratum_polyhedron(f)
        hosts = [
            g
            for g in c_coarse.facets
            if c_coarse.sed(g) == c_fine.sed(f)
            and c_coarse.stratum_polyhedron(g).contains(poly)
            and c_coarse.dim(g) == poly.dim
        ]
        if len(hosts) != 1:
            raise NotASubdivision(f"fine facet {f} lies in {len(hosts)} coarse facets")
        phases[f] = e_coarse[hosts[0]]
        used.add(hosts[0])
    if used != set(c_coarse.facets):
        raise NotASubdivision(f"coarse facets {sorted(set(c_coarse.facets) - used)} not covered")
    return RealPhaseStructure(c_fine, phases)


def star_phase(c: TropicalComplex, e: RealPhaseStructure, face_id):
    """Star fan at a face with phases E(σ) / T_{Z_2}(τ).

    Returns ``(fan, phase)`` where ``phase.complex`` is the star fan viewed as
    a complex with cell ids ``c<ray indices>``.
    """
    if face_id not in c.cells:
        raise UnknownFace(face_id)
    fan, cone_of, qt = _star_data(c, face_id)
    fc = fan_complex(fan)
    m = c.stratum_dim(face_id)
    q2 = gf2.as_gf2(qt.q, m) if qt.q else np.zeros((0, m), dtype=np.uint8)
    top = set(fc.facets)
    phases = {}
    for s, cone in cone_of.items():
        cid = "c" + "-".join(map(str, cone))
        if cid not in top:
            continue
        here = gf2.affine_canonical(induced_phase_on_face(c, e, s))
        phases[cid] = here.image(q2)
    return fan, RealPhaseStructure(fc, phases)
