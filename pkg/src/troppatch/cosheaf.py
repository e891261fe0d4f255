"""Cellular cosheaves over GF(2): multi-tangent F_p, sign cosheaf, the K_p filtration.

Every stalk is a subspace of an ambient space attached to its cell
(Λ^p of the mod-2 stratum lattice for F_p, the free space on the points of
the stratum's (Z/2)^m for sign-type cosheaves). Corestrictions are the
ambient maps restricted to stalks and written in RREF stalk coordinates.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb

import numpy as np

from . import gf2
from .errors import DimTooLarge, NotFunctorial, PhaseInvalid
from .patchwork import CertificateOrCounterexample
from .phase import RealPhaseStructure, induced_phase_on_face, validate_phase
from .polyhedral import TropicalComplex, cell_is_compact

__all__ = [
    "CellularCosheaf",
    "ChainComplexGF2",
    "build_Fp",
    "build_sign_cosheaf",
    "build_Kp",
    "chain_complex",
    "homology_dims",
    "check_exact_sequence",
    "KP_MAX_DIM",
]

KP_MAX_DIM = 5


def _mul(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    return ((a.astype(np.int64) @ b.astype(np.int64)) % 2).astype(np.uint8)


class CellularCosheaf:
    """Stalks as RREF row bases inside per-cell ambient spaces.

    Args:
        c: the underlying complex.
        ambient: cell id -> ambient dimension.
        generators: cell id -> rows spanning the stalk (ambient coordinates).
        ambient_map: callable ``(sigma, tau) -> matrix`` of shape
            (ambient tau, ambient sigma) for tau a face of sigma.
        labels: cell id -> names of the ambient coordinates.
    """

    def __init__(self, c: TropicalComplex, ambient: dict, generators: dict, ambient_map, labels: dict | None = None, kind: str = ""):
        self.complex = c
        self.kind = kind
        self.ambient = dict(ambient)
        self.labels = labels or {}
        self.basis = {}
        self.pivots = {}
        for cid in c.cell_ids:
            b, piv = gf2.row_basis(gf2.as_gf2(generators[cid], self.ambient[cid]), self.ambient[cid])
            self.basis[cid], self.pivots[cid] = b, piv
        self._ambient_map = ambient_map
        self.maps = {}
        for s in c.cell_ids:
            self.maps[(s, s)] = np.eye(self.dim(s), dtype=np.uint8)
            for t in c.faces(s):
                self.maps[(s, t)] = self._corestriction(s, t)

    def dim(self, cid) -> int:
        return len(self.pivots[cid])

    def ambient_map(self, s, t) -> np.ndarray:
        return self._ambient_map(s, t)

    def _corestriction(self, s, t) -> np.ndarray:
        a = gf2.as_gf2(self.ambient_map(s, t), self.ambient[s]).reshape(self.ambient[t], self.ambient[s])
        out = np.zeros((self.dim(t), self.dim(s)), dtype=np.uint8)
        for j, row in enumerate(self.basis[s]):
            img = _mul(a, row.reshape(-1, 1)).reshape(-1)
            coords = gf2.coords_in_rref(self.basis[t], self.pivots[t], img)
            if coords is None:
                raise NotFunctorial(f"image of stalk {s} leaves stalk {t}")
            out[:, j] = coords
        return out

    def corestriction(self, s, t) -> np.ndarray:
        """Matrix of i_{st}: stalk(s) -> stalk(t) for t <= s."""
        return self.maps[(s, t)]

    def check_functorial(self) -> list:
        """All triples u < t < s with i_{tu} i_{st} != i_{su}."""
        bad = []
        c = self.complex
        for s in c.cell_ids:
            for t in c.faces(s):
                for u in c.faces(t):
                    if not np.array_equal(_mul(self.maps[(t, u)], self.maps[(s, t)]), self.maps[(s, u)]):
                        bad.append((s, t, u))
        return bad

    def stalk_dims(self) -> dict:
        return {cid: self.dim(cid) for cid in self.complex.cell_ids}

    def to_json(self) -> dict:
        return {
            "kind": self.kind,
            "stalks": {
                cid: {"dim": self.dim(cid), "basis": [[int(x) for x in r] for r in self.basis[cid]]}
                for cid in self.complex.cell_ids
            },
        }


@dataclass
class ChainComplexGF2:
    """Graded cell lists and boundary matrices ∂_q: C_q -> C_{q-1}."""

    cells: dict = field(default_factory=dict)
    ranks: dict = field(default_factory=dict)
    boundaries: dict = field(default_factory=dict)
    top: int = -1

    def dims(self) -> list[int]:
        return [self.ranks.get(q, 0) for q in range(self.top + 1)]


def _wedge_gens(c: TropicalComplex, tau, p: int) -> list:
    m = c.stratum_dim(tau)
    rows = []
    for f in c.facets_above(tau):
        tz = c.tangent_z2(f)
        if tz:
            img = _mul(gf2.as_gf2(tz, c.stratum_dim(f)), c.proj_z2(f, tau).T)
        else:
            img = np.zeros((0, m), dtype=np.uint8)
        basis, _ = gf2.row_basis(img, m)
        if p > basis.shape[0]:
            continue
        w = gf2.wedge_power_map(basis, p, m)
        rows += [tuple(int(x) for x in col) for col in w.T]
    return rows


def build_Fp(c: TropicalComplex, p: int) -> CellularCosheaf:
    """The p-th multi-tangent cosheaf with stalks inside Λ^p (Z/2)^m.

    The stalk at τ is the sum of Λ^p of the mod-2 tangent lattices of the
    facets above τ, pushed into τ's stratum.
    """
    ambient = {cid: comb(c.stratum_dim(cid), p) for cid in c.cell_ids}
    gens = {cid: _wedge_gens(c, cid, p) for cid in c.cell_ids}

    def amap(s, t):
        return gf2.exterior_power_matrix(c.proj_z2(s, t), p)

    labels = {cid: [list(x) for x in itertools.combinations(range(c.stratum_dim(cid)), p)] for cid in c.cell_ids}
    return CellularCosheaf(c, ambient, gens, amap, labels, kind=f"F_{p}")


def _point_index(m: int) -> dict:
    return {pt: i for i, pt in enumerate(itertools.product((0, 1), repeat=m))}


def _sign_ambient_map(c: TropicalComplex):
    cache = {}

    def amap(s, t):
        key = (c.sed(s), c.sed(t))
        if key not in cache:
            ms, mt = c.stratum_dim(s), c.stratum_dim(t)
            pr = c.proj_z2(s, t)
            idx_t = _point_index(mt)
            a = np.zeros((2**mt, 2**ms), dtype=np.uint8)
            for j, pt in enumerate(itertools.product((0, 1), repeat=ms)):
                img = tuple(int(x) for x in _mul(pr, np.array(pt, dtype=np.uint8).reshape(-1, 1)).reshape(-1)) if mt else ()
                a[idx_t[img], j] = 1
            cache[key] = a
        return cache[key]

    return amap


def _indicator(points, m: int) -> tuple:
    idx = _point_index(m)
    v = [0] * (2**m)
    for pt in points:
        v[idx[tuple(pt)]] ^= 1
    return tuple(v)


def _require_valid(c, e):
    rep = validate_phase(c, e)
    if not rep.ok:
        raise PhaseInvalid(rep.violations)


def build_sign_cosheaf(c: TropicalComplex, e: RealPhaseStructure, validate: bool = True) -> CellularCosheaf:
    """Stalk at τ is the free space on the induced phase E(τ); w_ε maps to w_π(ε).

    Raises:
        PhaseInvalid: when ``validate`` and the phase is invalid.
    """
    if validate:
        _require_valid(c, e)
    ambient = {cid: 2 ** c.stratum_dim(cid) for cid in c.cell_ids}
    gens = {cid: [_indicator([pt], c.stratum_dim(cid)) for pt in induced_phase_on_face(c, e, cid)] for cid in c.cell_ids}
    labels = {cid: [list(pt) for pt in itertools.product((0, 1), repeat=c.stratum_dim(cid))] for cid in c.cell_ids}
    return CellularCosheaf(c, ambient, gens, _sign_ambient_map(c), labels, kind="S_E")


def _projected_phases(c: TropicalComplex, e: RealPhaseStructure, tau) -> list:
    return [e[f].image(c.proj_z2(f, tau)) for f in c.facets_above(tau)]


def _affine_generators(c: TropicalComplex, e: RealPhaseStructure, tau, p: int) -> list:
    """All G in Aff_p of the projected facet phases, deduplicated and sorted."""
    found = set()
    for h in _projected_phases(c, e, tau):
        if p <= h.dim:
            found.update(gf2.enumerate_affine_subspaces(h, p))
    return sorted(found, key=lambda s: (s.directions, s.base_point))


def build_Kp(c: TropicalComplex, e: RealPhaseStructure, p: int, validate: bool = True) -> CellularCosheaf:
    """Subcosheaf of the sign cosheaf spanned by indicators of p-dimensional affine pieces.

    Raises:
        PhaseInvalid: when ``validate`` and the phase is invalid.
        DimTooLarge: for complexes of dimension above ``KP_MAX_DIM``.
    """
    if c.d > KP_MAX_DIM:
        raise DimTooLarge(f"K_p enumeration capped at dimension {KP_MAX_DIM}")
    if validate:
        _require_valid(c, e)
    ambient = {cid: 2 ** c.stratum_dim(cid) for cid in c.cell_ids}
    gens = {
        cid: [_indicator(g.points(), c.stratum_dim(cid)) for g in _affine_generators(c, e, cid, p)]
        for cid in c.cell_ids
    }
    return CellularCosheaf(c, ambient, gens, _sign_ambient_map(c), kind=f"K_{p}")


def chain_complex(f: CellularCosheaf, borel_moore: bool = False) -> ChainComplexGF2:
    """Cellular chains with coefficients in ``f``; compact cells only unless Borel-Moore.

    Raises:
        NotFunctorial: if the cosheaf fails functoriality or ∂² is nonzero.
    """
    bad = f.check_functorial()
    if bad:
        raise NotFunctorial(f"corestrictions do not compose at {bad[0]}")
    c = f.complex
    keep = [cid for cid in c.cell_ids if borel_moore or cell_is_compact(c, cid)]
    top = c.d
    cells = {q: [cid for cid in keep if c.dim(cid) == q] for q in range(top + 1)}
    offsets = {}
    ranks = {}
    for q, ids in cells.items():
        off = 0
        for cid in ids:
            offsets[(q, cid)] = off
            off += f.dim(cid)
        ranks[q] = off
    bd = {}
    for q in range(1, top + 1):
        m = np.zeros((ranks[q - 1], ranks[q]), dtype=np.uint8)
        for s in cells[q]:
            for t in cells[q - 1]:
                if c.le(t, s):
                    r0, c0 = offsets[(q - 1, t)], offsets[(q, s)]
                    m[r0 : r0 + f.dim(t), c0 : c0 + f.dim(s)] ^= f.corestriction(s, t)
        bd[q] = m
    for q in range(2, top + 1):
        if _mul(bd[q - 1], bd[q]).any():
            raise NotFunctorial(f"boundary squares to a nonzero map in degree {q}")
    return ChainComplexGF2(cells, ranks, bd, top)


def homology_dims(cc: ChainComplexGF2) -> list[int]:
    """dim H_q = nullity ∂_q - rank ∂_{q+1}."""
    rk = {q: (gf2.rank(m) if m.size else 0) for q, m in cc.boundaries.items()}
    return [cc.ranks.get(q, 0) - rk.get(q, 0) - rk.get(q + 1, 0) for q in range(cc.top + 1)]


def _wedge_of(g: gf2.Z2AffineSubspace, p: int, m: int) -> tuple:
    w = gf2.wedge_power_map(list(g.directions), p, m)
    return tuple(int(x) for x in w[:, 0])


def check_exact_sequence(c: TropicalComplex, e: RealPhaseStructure, p: int) -> CertificateOrCounterexample:
    """Stalkwise check of 0 -> K_{p+1} -> K_p -> F_p -> 0 with the wedge map w_G -> ∧T(G).

    Checked per cell: containment of K_{p+1} in K_p, well-definedness and
    surjectivity of the wedge map, the dimension identity, that K_{p+1}
    lies in the kernel, and that every corestriction square commutes.
    """
    kp = build_Kp(c, e, p)
    kq = build_Kp(c, e, p + 1, validate=False)
    fp = build_Fp(c, p)
    stalks = {}
    phi = {}
    for t in c.cell_ids:
        m = c.stratum_dim(t)
        gens = _affine_generators(c, e, t, p)
        w = np.array([_indicator(g.points(), m) for g in gens], dtype=np.uint8).reshape(len(gens), 2**m)
        images = np.array([_wedge_of(g, p, m) for g in gens], dtype=np.uint8).reshape(len(gens), comb(m, p))
        dim_next = kq.dim(t)
        info = {"K_p": kp.dim(t), "K_p+1": dim_next, "F_p": fp.dim(t)}
        stalks[t] = info

        def fail(reason):
            return CertificateOrCounterexample(False, {"stalks": stalks}, {"cell": t, "p": p, "reason": reason, **info})

        for row in kq.basis[t]:
            if gf2.coords_in_rref(kp.basis[t], kp.pivots[t], row) is None:
                return fail("K_p+1 not contained in K_p")
        if len(gens) and gf2.rank(np.concatenate([w, images], axis=1)) != gf2.rank(w):
            return fail("wedge map not well defined")
        img_b, img_piv = gf2.row_basis(images, comb(m, p))
        if len(img_piv) != fp.dim(t) or any(gf2.coords_in_rref(fp.basis[t], fp.pivots[t], r) is None for r in img_b):
            return fail("wedge map not onto F_p")
        if kp.dim(t) - dim_next != fp.dim(t):
            return fail("dimension identity fails")
        for row in kq.basis[t]:
            coeffs = gf2.solve_left(w, row)
            if coeffs is None or _mul(coeffs.reshape(1, -1), images).any():
                return fail("K_p+1 not in the kernel")
        phi[t] = (w, images)
    for s in c.cell_ids:
        ws, ims = phi[s]
        for t in c.faces(s):
            wt, imt = phi[t]
            sign_map = kp.ambient_map(s, t)
            wedge_map = fp.ambient_map(s, t)
            for row, im in zip(ws, ims):
                pushed = _mul(sign_map, row.reshape(-1, 1)).reshape(-1)
                coeffs = gf2.solve_left(wt, pushed) if len(wt) else (None if pushed.any() else np.zeros(0, dtype=np.uint8))
                if coeffs is None:
                    return CertificateOrCounterexample(False, {"stalks": stalks}, {"cell": s, "face": t, "reason": "corestriction leaves K_p"})
                left = _mul(coeffs.reshape(1, -1), imt).reshape(-1) if len(wt) else np.zeros(imt.shape[1], dtype=np.uint8)
                right = _mul(wedge_map, im.reshape(-1, 1)).reshape(-1)
                if not np.array_equal(left, right):
                    return CertificateOrCounterexample(False, {"stalks": stalks}, {"cell": s, "face": t, "reason": "square does not commute"})
    return CertificateOrCounterexample(True, {"p": p, "stalks": stalks})
