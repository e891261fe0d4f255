"""Real tropical toric varieties, patchworks, the closed-chain check and the Q-posets."""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

import numpy as np

from . import gf2
from .errors import NotPointed, PhaseInvalid
from .phase import RealPhaseStructure, induced_phase_on_face, star_phase, validate_phase
from .polyhedral import Fan, TropicalComplex, cell_is_compact, recession_fan
from .posets import FinitePoset, _check_strongly_unimodular, _check_subcomplex, cellular_betti, poset_isomorphic

__all__ = [
    "CertificateOrCounterexample",
    "PatchworkComplex",
    "real_toric_poset",
    "build_patchwork",
    "check_closed_chain",
    "q_posets",
    "positive_special_fibre_poset",
]


@dataclass
class CertificateOrCounterexample:
    ok: bool
    certificate: dict = field(default_factory=dict)
    counterexample: object = None

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {"ok": self.ok, "certificate": self.certificate, "counterexample": self.counterexample}


def _apply(mat: np.ndarray, v) -> tuple:
    if mat.shape[0] == 0:
        return ()
    return tuple(int(x) for x in (mat @ np.asarray(v, dtype=np.int64)) % 2)


def _all_bits(m: int) -> list[tuple]:
    return [tuple(b) for b in itertools.product((0, 1), repeat=m)]


def real_toric_poset(sigma: Fan) -> FinitePoset:
    """Strata (ρ, ε) of the real tropical toric variety of a pointed fan.

    Raises:
        NotPointed: if some cone of the fan contains a line.
    """
    if not sigma.is_pointed():
        raise NotPointed("fan is not pointed")
    elems = [(rho, eps) for rho in sigma.cones for eps in _all_bits(sigma.quotient(rho).dim)]
    proj = {}

    def le(a, b):
        (rho, eps), (eta, delta) = a, b
        if not set(eta) <= set(rho):
            return False
        key = (eta, rho)
        if key not in proj:
            proj[key] = gf2.as_gf2(sigma.projection(eta, rho), sigma.quotient(eta).dim)
        return _apply(proj[key], delta) == eps

    return FinitePoset.from_function(elems, le, [sigma.quotient(r).dim for r, _ in elems])


class PatchworkComplex:
    """Signed copies (τ, ε) of the cells of a complex, ε in the induced phase of τ.

    Sign vectors live in the stratum coordinates of τ. The face relation is
    (τ', ε') <= (τ, ε) iff τ' <= τ and ε' is the projection of ε.
    """

    def __init__(self, c: TropicalComplex, e: RealPhaseStructure):
        self.complex = c
        self.phase = e
        self.cells = [(cid, eps) for cid in c.cell_ids for eps in induced_phase_on_face(c, e, cid)]
        self.dims = {cell: c.dim(cell[0]) for cell in self.cells}
        self.compact = {cell: cell_is_compact(c, cell[0]) for cell in self.cells}
        self._poset = None

    def __len__(self) -> int:
        return len(self.cells)

    def le(self, a, b) -> bool:
        c = self.complex
        if not c.le(a[0], b[0]):
            return False
        return _apply(c.proj_z2(b[0], a[0]), b[1]) == a[1]

    def poset(self) -> FinitePoset:
        if self._poset is None:
            self._poset = FinitePoset.from_function(self.cells, self.le, [self.dims[x] for x in self.cells])
        return self._poset

    def euler(self, borel_moore: bool = False) -> int:
        """Alternating cell count, over compact cells unless Borel-Moore."""
        return sum((-1) ** self.dims[x] for x in self.cells if borel_moore or self.compact[x])

    def betti(self, borel_moore: bool = False) -> list[int]:
        keep = [x for x in self.cells if borel_moore or self.compact[x]]
        return cellular_betti(self.poset(), keep)

    def to_json(self) -> dict:
        return {
            "cells": [{"cell": cid, "eps": list(eps), "dim": self.dims[(cid, eps)], "compact": self.compact[(cid, eps)]} for cid, eps in self.cells],
            "poset": self.poset().to_json(),
        }


def build_patchwork(c: TropicalComplex, e: RealPhaseStructure, sigma: Fan | None = None, validate: bool = True) -> PatchworkComplex:
    """The patchwork of a complex with respect to a real phase structure.

    ``sigma`` is accepted for symmetry with the toric setting; a complex in a
    nontrivial toric variety must already carry its sedentarity labels.

    Raises:
        PhaseInvalid: if ``validate`` and the phase fails ``validate_phase``.
    """
    if sigma is not None and sigma.cones != c.fan.cones:
        raise ValueError("complex lives in a different toric variety; compactify it first")
    if validate:
        rep = validate_phase(c, e)
        if not rep.ok:
            raise PhaseInvalid(rep.violations)
    return PatchworkComplex(c, e)


def check_closed_chain(p: PatchworkComplex) -> CertificateOrCounterexample:
    """Every codim-1 cell must lie in an even number of top cells."""
    if not p.cells:
        return CertificateOrCounterexample(True, {"checked": 0})
    d = max(p.dims.values())
    top = [x for x in p.cells if p.dims[x] == d]
    checked = 0
    for t in p.cells:
        if p.dims[t] != d - 1:
            continue
        checked += 1
        k = sum(1 for f in top if p.le(t, f))
        if k % 2:
            return CertificateOrCounterexample(
                False,
                {"checked": checked},
                {"cell": t[0], "eps": list(t[1]), "sedentarity": list(p.complex.sed(t[0])), "incident_top_cells": k},
            )
    return CertificateOrCounterexample(True, {"checked": checked, "top_cells": len(top)})


def _phase_complex(P: TropicalComplex, xs: list, e: RealPhaseStructure) -> TropicalComplex:
    if set(e.complex.cell_ids) == set(xs):
        return e.complex
    return P.subcomplex(xs)


def q_posets(P: TropicalComplex, X, e: RealPhaseStructure) -> tuple[FinitePoset, FinitePoset]:
    """The posets Q(P) and Q(X, E).

    Elements are (σ, ε) with ε in Z_2 of the recession cone of σ, i.e. in
    the quotient of (Z/2)^n by that cone's tangent lattice.

    Raises:
        NotStronglyUnimodular, NotSubcomplex.
    """
    _check_strongly_unimodular(P)
    xs = _check_subcomplex(P, X)
    fan = recession_fan(P)
    rec = {cid: fan.cone_of(P.recession_generators(cid)) for cid in P.cell_ids}
    elems = [(cid, eps) for cid in P.cell_ids for eps in _all_bits(fan.quotient(rec[cid]).dim)]
    proj = {}

    def pi(src, dst):
        if (src, dst) not in proj:
            proj[(src, dst)] = gf2.as_gf2(fan.projection(src, dst), fan.quotient(src).dim)
        return proj[(src, dst)]

    def le(a, b):
        (s, eps), (t, delta) = a, b
        return P.contained_in(t, s) and _apply(pi(rec[t], rec[s]), delta) == eps

    dims = [P.dim(s) for s, _ in elems]
    qp = FinitePoset.from_function(elems, le, dims)
    xc = _phase_complex(P, xs, e)
    marked = []
    for s in xs:
        here = induced_phase_on_face(xc, e, s)
        mat = pi((), rec[s])
        imgs = {_apply(mat, v) for v in here}
        marked += [(s, eps) for eps in imgs]
    return qp, qp.subposet(marked)


def _reduce(basis: np.ndarray, pivots: list, v) -> tuple:
    v = np.asarray(v, dtype=np.uint8).copy()
    for row, piv in zip(basis, pivots):
        if v[piv]:
            v ^= row
    return tuple(int(x) for x in v)


def positive_special_fibre_poset(P: TropicalComplex, X, e: RealPhaseStructure):
    """Cell poset of the positive special fibre, glued from 2^n signed copies.

    Copy ε contributes the cells of P with reversed order; (σ, ε) and
    (σ, ε') are identified when ε - ε' lies in the mod-2 tangent lattice of
    the recession cone of σ. A cell is marked when σ is in X and the sign
    class of ε lies in the star phase of X at σ.

    Returns ``(poset, marked, certificate)`` where the certificate is an
    isomorphism onto Q(P) carrying the marking onto Q(X, E).
    """
    qp, qxe = q_posets(P, X, e)
    xs = _check_subcomplex(P, X)
    n = P.ambient_dim
    red = {}
    for cid in P.cell_ids:
        gens = P.recession_generators(cid)
        basis, piv = gf2.row_basis(gf2.as_gf2([[int(x) for x in g] for g in gens], n), n) if gens else (np.zeros((0, n), dtype=np.uint8), [])
        red[cid] = (basis, piv)
    elems = sorted({(cid, _reduce(*red[cid], eps)) for cid in P.cell_ids for eps in _all_bits(n)}, key=lambda x: (P.cell_ids.index(x[0]), x[1]))

    def le(a, b):
        (s, r), (t, q) = a, b
        return P.contained_in(t, s) and _reduce(*red[s], q) == r

    psf = FinitePoset.from_function(elems, le, [P.dim(s) for s, _ in elems])
    xc = _phase_complex(P, xs, e)
    marked = []
    for s in xs:
        fan, sp = star_phase(xc, e, s)
        apex = "c"
        allowed = set(induced_phase_on_face(sp.complex, sp, apex))
        qt = _tangent_quotient(xc, s)
        for cid, r in elems:
            if cid == s and _apply(qt, r) in allowed:
                marked.append((cid, r))
    cert = poset_isomorphic(psf, qp, marked, qxe.elements)
    return psf, marked, cert


def _tangent_quotient(c: TropicalComplex, cid) -> np.ndarray:
    from .lattice import QuotientData

    m = c.stratum_dim(cid)
    qt = QuotientData(c.stratum_polyhedron(cid).tangent_lattice(), m)
    return gf2.as_gf2(qt.q, m) if qt.q else np.zeros((0, m), dtype=np.uint8)
