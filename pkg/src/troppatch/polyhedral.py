"""Rational polyhedra, fans and polyhedral complexes in tropical toric varieties.

Everything is exact: coordinates are ``fractions.Fraction`` and ray or
lineality generators are primitive integer vectors. Polyhedra are given by
V-representation only; face relations come from the input and are checked,
never inferred by convex hulls.

A cell of sedentarity ρ is stored by a *lift*: a polyhedron in R^n whose
image under the quotient map R^n -> R^n / T(ρ) is the cell. The quotient
maps are integral and fixed once per cone (see ``Fan.quotient``).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

from . import gf2
from .errors import NoVertex, NotAFan, RecessionNotInFan, UnknownCell
from .feasibility import feasible, in_cone, in_polyhedron
from .lattice import QuotientData, mat_mul, mat_vec, maximal_minor_gcd, primitive, to_integer
from .posets import FinitePoset

__all__ = [
    "RationalPolyhedron",
    "Fan",
    "Cell",
    "TropicalComplex",
    "ValidationReport",
    "trivial_fan",
    "projective_space_fan",
    "fan_complex",
    "validate_complex",
    "recession_fan",
    "star_fan",
    "compactify",
    "check_unimodular",
    "cell_is_compact",
    "supporting_functional_exists",
]

Cone = tuple  # sorted tuple of ray indices


def _frac_vec(v: Iterable) -> tuple:
    return tuple(Fraction(x) for x in v)


def _is_zero(v) -> bool:
    return all(x == 0 for x in v)


@dataclass(frozen=True)
class RationalPolyhedron:
    """conv(vertices) + cone(rays) + span(lineality) in Q^ambient_dim."""

    ambient_dim: int
    vertices: tuple = ()
    rays: tuple = ()
    lineality: tuple = ()

    @classmethod
    def make(cls, ambient_dim: int, vertices=(), rays=(), lineality=(), normalize: bool = True) -> "RationalPolyhedron":
        """Sorted, deduplicated V-representation.

        With ``normalize`` false, integer generators are kept as given so that
        ``validate_complex`` can report non-primitive input.
        """
        norm = primitive if normalize else (lambda v: tuple(int(x) for x in v))
        verts = tuple(sorted(set(_frac_vec(v) for v in vertices)))
        rs = tuple(sorted(set(norm(r) for r in rays if not _is_zero(to_integer(r)))))
        ls = tuple(sorted(set(norm(l) for l in lineality if not _is_zero(to_integer(l)))))
        return cls(ambient_dim, verts, rs, ls)

    def tangent_generators(self) -> list:
        gens = []
        if self.vertices:
            v0 = self.vertices[0]
            gens += [to_integer([a - b for a, b in zip(v, v0)]) for v in self.vertices[1:]]
        gens += [list(r) for r in self.rays] + [list(l) for l in self.lineality]
        return [g for g in gens if not _is_zero(g)]

    def quotient(self) -> QuotientData:
        return QuotientData(self.tangent_generators(), self.ambient_dim)

    @property
    def dim(self) -> int:
        return self.quotient().rank

    def tangent_lattice(self) -> list[tuple]:
        """Saturated integral basis of the tangent space T_Z."""
        return self.quotient().tangent

    def is_bounded(self) -> bool:
        return not self.rays and not self.lineality

    def recession_generators(self) -> list[tuple]:
        return list(self.rays) + list(self.lineality) + [tuple(-x for x in l) for l in self.lineality]

    def contains_point(self, x) -> bool:
        return in_polyhedron(_frac_vec(x), self.vertices, self.rays, self.lineality)

    def contains_direction(self, d) -> bool:
        return in_cone(_frac_vec(d), self.rays, self.lineality)

    def contains(self, other: "RationalPolyhedron") -> bool:
        return (
            all(self.contains_point(v) for v in other.vertices)
            and all(self.contains_direction(r) for r in other.rays)
            and all(self.contains_direction(l) and self.contains_direction([-x for x in l]) for l in other.lineality)
        )

    def interior_point(self) -> tuple:
        """A point in the relative interior (vertex barycentre plus ray sum)."""
        k = len(self.vertices)
        pt = [sum((v[i] for v in self.vertices), Fraction(0)) / k for i in range(self.ambient_dim)]
        for r in self.rays:
            pt = [a + b for a, b in zip(pt, r)]
        return tuple(pt)

    def project(self, q: Sequence[Sequence[int]]) -> "RationalPolyhedron":
        m = len(q)
        return RationalPolyhedron.make(
            m,
            [mat_vec(q, v) for v in self.vertices],
            [mat_vec(q, r) for r in self.rays],
            [mat_vec(q, l) for l in self.lineality],
        )

    def translate(self, p) -> "RationalPolyhedron":
        return RationalPolyhedron(
            self.ambient_dim,
            tuple(tuple(a - b for a, b in zip(v, p)) for v in self.vertices),
            self.rays,
            self.lineality,
        )

    def to_json(self) -> dict:
        return {
            "vertices": [[_fstr(x) for x in v] for v in self.vertices],
            "rays": [list(r) for r in self.rays],
            "lineality": [list(l) for l in self.lineality],
        }


def _fstr(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


class Fan:
    """A rational fan given by primitive rays and cones as ray-index tuples.

    Simplicial cones are closed under faces automatically; non-simplicial
    cones must have their faces listed explicitly.
    """

    def __init__(self, ambient_dim: int, rays: Sequence[Sequence[int]], cones: Iterable[Iterable[int]]):
        self.ambient_dim = ambient_dim
        self.rays = tuple(primitive(r) for r in rays)
        closed = {()}
        for c in cones:
            c = tuple(sorted(set(c)))
            closed.add(c)
            if maximal_minor_gcd([self.rays[i] for i in c], ambient_dim) != 0:
                for k in range(len(c)):
                    closed.update(itertools.combinations(c, k))
        self.cones = tuple(sorted(closed, key=lambda c: (len(c), c)))
        self._quot: dict = {}
        self._poly: dict = {}

    def cone_polyhedron(self, cone: Cone) -> RationalPolyhedron:
        if cone not in self._poly:
            self._poly[cone] = RationalPolyhedron.make(
                self.ambient_dim, [[0] * self.ambient_dim], [self.rays[i] for i in cone]
            )
        return self._poly[cone]

    def quotient(self, cone: Cone) -> QuotientData:
        """Cached integral quotient data for R^n / T(cone)."""
        cone = tuple(cone)
        if cone not in self._quot:
            self._quot[cone] = QuotientData([self.rays[i] for i in cone], self.ambient_dim)
        return self._quot[cone]

    def dim(self, cone: Cone) -> int:
        return self.quotient(cone).rank

    def projection(self, src: Cone, dst: Cone) -> list[list[int]]:
        """Integer matrix of R^n/T(src) -> R^n/T(dst) for src ⊆ dst."""
        qs, qd = self.quotient(src), self.quotient(dst)
        if not qs.lift or not qd.q:
            return [[0] * qs.dim for _ in range(qd.dim)]
        return mat_mul(qd.q, qs.lift)

    def cone_of(self, gens: Sequence[Sequence[int]]) -> Cone | None:
        """The cone of the fan equal to cone(gens), or None."""
        target = RationalPolyhedron.make(self.ambient_dim, [[0] * self.ambient_dim], gens)
        for c in self.cones:
            poly = self.cone_polyhedron(c)
            if len(c) < len(_extremal(target)):
                continue
            if poly.contains(target) and target.contains(poly):
                return c
        return None

    def is_pointed(self) -> bool:
        for c in self.cones:
            rs = [self.rays[i] for i in c]
            if not rs:
                continue
            cons = [([r[j] for r in rs], "==", 0) for j in range(self.ambient_dim)]
            cons.append(([1] * len(rs), "==", 1))
            cons += [([-int(i == k) for k in range(len(rs))], "<=", 0) for i in range(len(rs))]
            if feasible(cons, len(rs)):
                return False
        return True

    def poset(self) -> FinitePoset:
        return FinitePoset.from_function(self.cones, lambda a, b: set(a) <= set(b), [self.dim(c) for c in self.cones])

    def star(self, cone: Cone) -> list[Cone]:
        return [c for c in self.cones if set(cone) <= set(c)]

    def to_json(self) -> dict:
        maximal = [c for c in self.cones if not any(set(c) < set(d) for d in self.cones)]
        return {"kind": "fan", "ambient_dim": self.ambient_dim, "rays": [list(r) for r in self.rays], "cones": [list(c) for c in maximal]}


def _extremal(p: RationalPolyhedron) -> list:
    rs = list(p.rays)
    out = []
    for i, r in enumerate(rs):
        others = rs[:i] + rs[i + 1:]
        if not in_cone(r, others, p.lineality):
            out.append(r)
    return out


def trivial_fan(n: int) -> Fan:
    return Fan(n, [], [()])


def projective_space_fan(n: int) -> Fan:
    """Fan of TP^n in the chart x_i - x_0: rays (1,...,1), -e_1, ..., -e_n."""
    rays = [[1] * n] + [[-int(i == j) for j in range(n)] for i in range(n)]
    cones = [c for k in range(n + 1) for c in itertools.combinations(range(n + 1), k)]
    return Fan(n, rays, cones)


@dataclass
class Cell:
    id: str
    sedentarity: Cone
    polyhedron: RationalPolyhedron
    faces: tuple = ()
    meta: dict = field(default_factory=dict)


@dataclass
class ValidationReport:
    """Outcome of a validation: ``ok`` plus (code, detail) violations."""

    ok: bool = True
    violations: list = field(default_factory=list)
    warnings: list = field(default_factory=list)
    info: dict = field(default_factory=dict)

    def add(self, code: str, detail) -> None:
        self.ok = False
        self.violations.append((code, detail))

    def codes(self) -> set:
        return {c for c, _ in self.violations}

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "ok": self.ok,
            "violations": [[c, d] for c, d in self.violations],
            "warnings": [[c, d] for c, d in self.warnings],
            "info": self.info,
        }


class TropicalComplex:
    """A polyhedral complex with sedentarity labels inside a toric variety.

    Args:
        ambient_dim: n, the rank of the ambient lattice.
        fan: fan Σ of the toric variety; sedentarities are cones of Σ.
        cells: cells with immediate (or all) faces listed by id.
    """

    def __init__(self, ambient_dim: int, fan: Fan, cells: Sequence[Cell], meta: dict | None = None):
        self.ambient_dim = ambient_dim
        self.fan = fan
        self.cells = {c.id: c for c in cells}
        if len(self.cells) != len(cells):
            raise ValueError("duplicate cell ids")
        self.cell_ids = [c.id for c in cells]
        self.meta = dict(meta or {})
        self._down: dict = {}
        self._cache: dict = {}
        for cid in self.cell_ids:
            self._closure(cid, ())

    def _closure(self, cid, stack) -> frozenset:
        if cid in self._down:
            return self._down[cid]
        if cid not in self.cells:
            raise UnknownCell(cid)
        if cid in stack:
            raise ValueError(f"cyclic face relation at {cid}")
        out = {cid}
        for f in self.cells[cid].faces:
            out |= self._closure(f, stack + (cid,))
        self._down[cid] = frozenset(out)
        return self._down[cid]

    def _memo(self, key, fn):
        if key not in self._cache:
            self._cache[key] = fn()
        return self._cache[key]

    # order

    def faces(self, cid) -> frozenset:
        """All proper faces of a cell."""
        if cid not in self.cells:
            raise UnknownCell(cid)
        return self._down[cid] - {cid}

    def le(self, a, b) -> bool:
        return a in self._down[b]

    def cofaces(self, cid) -> list:
        if cid not in self.cells:
            raise UnknownCell(cid)
        return [c for c in self.cell_ids if c != cid and cid in self._down[c]]

    def poset(self) -> FinitePoset:
        return self._memo(
            "poset",
            lambda: FinitePoset.from_function(self.cell_ids, self.le, [self.dim(c) for c in self.cell_ids]),
        )

    # geometry

    def sed(self, cid) -> Cone:
        return self.cells[cid].sedentarity

    def stratum_dim(self, cid) -> int:
        return self.fan.quotient(self.sed(cid)).dim

    def stratum_polyhedron(self, cid) -> RationalPolyhedron:
        if cid not in self.cells:
            raise UnknownCell(cid)
        return self._memo(("spoly", cid), lambda: self.cells[cid].polyhedron.project(self.fan.quotient(self.sed(cid)).q))

    def polyhedron_in(self, cid, cone: Cone) -> RationalPolyhedron:
        """Image of the cell's lift in the stratum of ``cone``."""
        return self._memo(("pin", cid, cone), lambda: self.cells[cid].polyhedron.project(self.fan.quotient(cone).q))

    def dim(self, cid) -> int:
        return self._memo(("dim", cid), lambda: self.stratum_polyhedron(cid).dim)

    @property
    def d(self) -> int:
        return max((self.dim(c) for c in self.cell_ids), default=-1)

    def tangent_z2(self, cid) -> list[tuple]:
        """RREF basis of T_{Z_2} of the cell in its stratum coordinates."""

        def comp():
            m = self.stratum_dim(cid)
            basis, _ = gf2.row_basis(self.stratum_polyhedron(cid).tangent_lattice(), m)
            return [tuple(int(x) for x in r) for r in basis]

        return self._memo(("tz2", cid), comp)

    def proj_z2(self, src, dst):
        """Mod-2 projection from the stratum of cell ``src`` to that of cell ``dst``."""
        return self._memo(
            ("pz2", self.sed(src), self.sed(dst)),
            lambda: gf2.as_gf2(self.fan.projection(self.sed(src), self.sed(dst)), self.stratum_dim(src)),
        )

    @property
    def sedentarity(self) -> Cone | None:
        """Common sedentarity of the top-dimensional cells (None if mixed)."""
        top = [c for c in self.cell_ids if self.dim(c) == self.d]
        seds = {self.sed(c) for c in top}
        return seds.pop() if len(seds) == 1 else None

    @property
    def facets(self) -> list:
        """Maximal cells of the complex's own sedentarity."""

        def comp():
            s = self.sedentarity
            return [c for c in self.cell_ids if self.sed(c) == s and not any(self.sed(b) == s for b in self.cofaces(c))]

        return self._memo("facets", comp)

    def facets_above(self, cid) -> list:
        return [f for f in self.facets if self.le(cid, f)]

    def is_bounded(self, cid) -> bool:
        return self.cells[cid].polyhedron.is_bounded()

    def vertex_set(self, cid) -> frozenset:
        return frozenset(self.cells[cid].polyhedron.vertices)

    def recession_generators(self, cid) -> list:
        return self.cells[cid].polyhedron.recession_generators()

    def contained_in(self, a, b) -> bool:
        """Point-set containment of the lifts (same-stratum comparison)."""
        return self._memo(("cont", a, b), lambda: self.cells[b].polyhedron.contains(self.cells[a].polyhedron))

    def subcomplex(self, ids: Iterable[str]) -> "TropicalComplex":
        ids = set(ids)
        cells = [
            Cell(c.id, c.sedentarity, c.polyhedron, tuple(f for f in c.faces if f in ids), dict(c.meta))
            for c in self.cells.values()
            if c.id in ids
        ]
        return TropicalComplex(self.ambient_dim, self.fan, cells, dict(self.meta))

    def to_json(self) -> dict:
        cells = []
        for cid in self.cell_ids:
            c = self.cells[cid]
            entry = {"id": cid, "sedentarity": list(c.sedentarity), **c.polyhedron.to_json(), "faces": list(c.faces)}
            if c.meta:
                entry["meta"] = c.meta
            cells.append(entry)
        return {"kind": "complex", "ambient_dim": self.ambient_dim, "fan": self.fan.to_json(), "cells": cells, "meta": self.meta}


def fan_complex(fan: Fan, prefix: str = "c") -> TropicalComplex:
    """The fan as a polyhedral complex with one cell per cone."""
    n = fan.ambient_dim
    cells = []
    for c in fan.cones:
        faces = [f for f in fan.cones if set(f) < set(c) and len(f) == len(c) - 1]
        cells.append(
            Cell(
                _cone_id(prefix, c),
                (),
                RationalPolyhedron.make(n, [[0] * n], [fan.rays[i] for i in c]),
                tuple(_cone_id(prefix, f) for f in faces),
            )
        )
    return TropicalComplex(n, trivial_fan(n), cells)


def _cone_id(prefix: str, c: Cone) -> str:
    return prefix + ("" if not c else "-".join(map(str, c)))


# ---------------------------------------------------------------- checks


def supporting_functional_exists(a: RationalPolyhedron, b: RationalPolyhedron | None, face: RationalPolyhedron | None) -> bool:
    """Is there a hyperplane H with a ∩ H = face = b ∩ H, a and b on opposite sides?

    With ``face`` None the two polyhedra must be strictly separated; with
    ``b`` None only the supporting-hyperplane condition for ``a`` is tested.
    """
    m = a.ambient_dim
    nv = m + 1  # (f, c)
    cons = []

    def side(p: RationalPolyhedron, sign: int):
        for v in p.vertices:
            row = [sign * x for x in v] + [-sign]
            if face is not None and face.contains_point(v):
                cons.append((row, "==", 0))
            else:
                cons.append((row, "<", 0))
        for r in p.rays:
            row = [sign * x for x in r] + [0]
            if face is not None and face.contains_direction(r):
                cons.append((row, "==", 0))
            else:
                cons.append((row, "<" if face is not None else "<=", 0))
        for l in p.lineality:
            cons.append(([x for x in l] + [0], "==", 0))

    side(a, 1)
    if b is not None:
        side(b, -1)
    return feasible(cons, nv)


def validate_complex(c: TropicalComplex) -> ValidationReport:
    """Structural and geometric checks of a tropical complex."""
    rep = ValidationReport()
    fan_cones = set(c.fan.cones)
    for cid in c.cell_ids:
        cell = c.cells[cid]
        p = cell.polyhedron
        if cell.sedentarity not in fan_cones:
            rep.add("UnknownSedentarity", cid)
            continue
        if not p.vertices:
            rep.add("NoVertex", cid)
            continue
        for r in list(p.rays) + list(p.lineality):
            if primitive(r) != tuple(r):
                rep.add("NotPrimitive", cid)
        for i in cell.sedentarity:
            if not p.contains_direction(c.fan.rays[i]):
                rep.add("SedentarityNotInRecession", cid)
    if not rep.ok:
        return rep

    for cid in c.cell_ids:
        for f in c.cells[cid].faces:
            if not set(c.sed(cid)) <= set(c.sed(f)):
                rep.add("FaceSedentarity", [cid, f])
                continue
            if c.dim(f) >= c.dim(cid) and c.sed(f) == c.sed(cid):
                rep.add("FaceDimension", [cid, f])
                continue
            ambient = c.polyhedron_in(cid, c.sed(f))
            fp = c.stratum_polyhedron(f)
            if not ambient.contains(fp) or not supporting_functional_exists(ambient, None, fp):
                rep.add("NotAFace", [cid, f])

    by_sed: dict = {}
    for cid in c.cell_ids:
        by_sed.setdefault(c.sed(cid), []).append(cid)
    for sed, ids in by_sed.items():
        for a, b in itertools.combinations(ids, 2):
            if c.le(a, b) or c.le(b, a):
                continue
            common = [x for x in c._down[a] & c._down[b] if c.sed(x) == sed]
            top = [x for x in common if not any(x != y and c.le(x, y) for y in common)]
            if len(top) > 1:
                rep.add("IntersectionNotAFace", [a, b])
                continue
            face = c.stratum_polyhedron(top[0]) if top else None
            if not supporting_functional_exists(c.stratum_polyhedron(a), c.stratum_polyhedron(b), face):
                rep.add("IntersectionNotAFace", [a, b])

    maximal = [x for x in c.cell_ids if not c.cofaces(x)]
    dims = {c.dim(x) for x in maximal}
    seds = {c.sed(x) for x in maximal}
    if len(dims) > 1:
        rep.add("NotPure", sorted(dims))
    if len(seds) > 1:
        rep.add("MixedSedentarity", [list(s) for s in sorted(seds)])
    for x in c.cell_ids:
        p = c.stratum_polyhedron(x)
        if p.vertices and not p.lineality and not check_unimodular(p, strong=False):
            rep.warnings.append(("RegularityUnverified", x))
    rep.info = {"dim": c.d, "cells": len(c.cell_ids), "sedentarity": list(c.sedentarity) if c.sedentarity is not None else None}
    return rep


def recession_fan(c: TropicalComplex) -> Fan:
    """Fan of recession cones of the cells of a sedentarity-0 complex.

    Raises:
        NotAFan: if two recession cones meet in something other than a common face.
    """
    n = c.ambient_dim
    cones = []
    for cid in c.cell_ids:
        p = c.cells[cid].polyhedron
        gens = _extremal(RationalPolyhedron.make(n, [[0] * n], p.recession_generators()))
        cones.append(tuple(sorted(set(gens))))
    rays = sorted({r for cone in cones for r in cone})
    index = {r: i for i, r in enumerate(rays)}
    cone_ids = sorted({tuple(sorted(index[r] for r in cone)) for cone in cones}, key=lambda x: (len(x), x))
    fan = Fan(n, rays, cone_ids)
    for a, b in itertools.combinations(fan.cones, 2):
        common = tuple(sorted(set(a) & set(b)))
        if set(a) <= set(b) or set(b) <= set(a):
            continue
        if not supporting_functional_exists(fan.cone_polyhedron(a), fan.cone_polyhedron(b), fan.cone_polyhedron(common)):
            raise NotAFan(f"cones {list(a)} and {list(b)} overlap improperly")
    return fan


def _star_data(c: TropicalComplex, cid):
    """Star fan of a cell plus the cone assigned to each same-stratum coface."""
    if cid not in c.cells:
        raise UnknownCell(cid)
    tau = c.stratum_polyhedron(cid)
    m = c.stratum_dim(cid)
    qt = QuotientData(tau.tangent_lattice(), m)
    p0 = tau.vertices[0]
    gens_of = {}
    for s in [cid] + c.cofaces(cid):
        if c.sed(s) != c.sed(cid):
            continue
        sp = c.stratum_polyhedron(s).translate(p0)
        gens = [mat_vec(qt.q, v) for v in sp.vertices] + [mat_vec(qt.q, r) for r in sp.rays]
        gens += [mat_vec(qt.q, l) for l in sp.lineality] + [mat_vec(qt.q, [-x for x in l]) for l in sp.lineality]
        cone = RationalPolyhedron.make(qt.dim, [[0] * qt.dim], [g for g in gens if not _is_zero(g)])
        gens_of[s] = sorted(set(_extremal(cone)))
    rays = sorted({r for g in gens_of.values() for r in g})
    index = {r: i for i, r in enumerate(rays)}
    cone_of = {s: tuple(sorted(index[r] for r in g)) for s, g in gens_of.items()}
    fan = Fan(qt.dim, rays, cone_of.values())
    return fan, cone_of, qt


def star_fan(c: TropicalComplex, cid) -> Fan:
    """The fan (σ + T(τ)) / T(τ) over cells σ ⊇ τ in the stratum of τ."""
    return _star_data(c, cid)[0]


def compactify(c: TropicalComplex, sigma: Fan) -> TropicalComplex:
    """Canonical compactification of a sedentarity-0 complex in the toric variety of ``sigma``.

    Cells are pairs (σ, ρ) with ρ a face of RecCone(σ). The face relation is
    decided geometrically: (σ', ρ') <= (σ, ρ) iff ρ ⊆ ρ' ⊆ RecCone(σ) and the
    image of σ' in the stratum of ρ' lies in the image of σ there.

    Raises:
        RecessionNotInFan: if some recession cone is not a cone of ``sigma``.
    """
    rec = {}
    for cid in c.cell_ids:
        cone = sigma.cone_of(c.cells[cid].polyhedron.recession_generators())
        if cone is None:
            raise RecessionNotInFan(cid)
        rec[cid] = cone
    pairs = []
    for cid in c.cell_ids:
        for rho in sigma.cones:
            if set(rho) <= set(rec[cid]):
                pairs.append((cid, rho))
    ident = {pr: (pr[0] if not pr[1] else f"{pr[0]}@{'-'.join(map(str, pr[1]))}") for pr in pairs}
    tmp = TropicalComplex(
        c.ambient_dim, sigma, [Cell(ident[pr], pr[1], c.cells[pr[0]].polyhedron) for pr in pairs]
    )
    faces = {pr: [] for pr in pairs}
    for big in pairs:
        s, rho = big
        for small in pairs:
            t, rho2 = small
            if small == big or not set(rho) <= set(rho2) or not set(rho2) <= set(rec[s]):
                continue
            host = c.cells[s].polyhedron.project(sigma.quotient(rho2).q)
            guest = tmp.stratum_polyhedron(ident[small])
            if host.contains(guest) and (host.dim > guest.dim or rho2 != rho):
                faces[big].append(ident[small])
    cells = [
        Cell(ident[pr], pr[1], c.cells[pr[0]].polyhedron, tuple(faces[pr]), {"base": pr[0], "rho": list(pr[1])})
        for pr in pairs
    ]
    meta = dict(c.meta)
    meta["compactified"] = True
    return TropicalComplex(c.ambient_dim, sigma, cells, meta)


def check_unimodular(p: RationalPolyhedron, strong: bool = False) -> bool:
    """Unimodularity of the cone C(p) over p x {1}.

    Raises:
        NoVertex: if ``p`` has no vertex.
    """
    if not p.vertices or p.lineality:
        raise NoVertex("polyhedron without a vertex")
    gens = [primitive(list(v) + [1]) for v in p.vertices] + [tuple(r) + (0,) for r in p.rays]
    if maximal_minor_gcd(gens, p.ambient_dim + 1) != 1:
        return False
    if strong:
        return all(g[-1] in (0, 1) for g in gens)
    return True


def cell_is_compact(c: TropicalComplex, cid) -> bool:
    """Is the closure of the cell inside the toric variety of ``c.fan`` compact?"""
    if cid not in c.cells:
        raise UnknownCell(cid)

    def comp():
        p = c.stratum_polyhedron(cid)
        if p.is_bounded():
            return True
        if p.lineality:
            return False
        rho = c.sed(cid)
        q = c.fan.quotient(rho).q
        for eta in c.fan.star(rho):
            gens = [mat_vec(q, c.fan.rays[i]) for i in eta]
            gens = [g for g in gens if not _is_zero(g)]
            if all(in_cone(r, gens) for r in p.rays):
                return True
        return False

    return c._memo(("compact", cid), comp)
