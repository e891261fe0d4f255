"""Oriented matroids as covector sets, topes, flag phases and Las Vergnas lattices."""

from __future__ import annotations

import itertools
from fractions import Fraction
from typing import Iterable, Sequence

from . import gf2
from .errors import FlagNotMaximal, NotATope, TopesNotAffine, ValidationError
from .feasibility import feasible
from .matroid import Matroid, characteristic_polynomial, flats_lattice, poly_eval, projective_chart
from .polyhedral import TropicalComplex, ValidationReport
from .posets import FinitePoset

__all__ = [
    "OrientedMatroid",
    "parse_sign",
    "sign_str",
    "validate_covectors",
    "covectors_from_realization",
    "topes",
    "tope_count",
    "phase_from_flag",
    "phase_from_om",
    "las_vergnas_lattice",
]

SignVector = tuple

_SIGN = {"+": 1, "-": -1, "0": 0}


def parse_sign(v: Sequence) -> SignVector:
    return tuple(_SIGN[x] if isinstance(x, str) else int(x) for x in v)


def sign_str(v: SignVector) -> list[str]:
    return ["+" if x > 0 else "-" if x < 0 else "0" for x in v]


def _compose(x, y):
    return tuple(a if a != 0 else b for a, b in zip(x, y))


class OrientedMatroid:
    """Covector set over {+1, -1, 0} on ground set {0, ..., ground_size - 1}."""

    def __init__(self, ground_size: int, covectors: Iterable[Sequence], check: bool = True):
        self.ground_size = ground_size
        self.covectors = frozenset(parse_sign(c) for c in covectors)
        self._matroid = None
        if check:
            rep = validate_covectors(self)
            if not rep.ok:
                raise ValidationError(f"covector axioms fail: {rep.violations}")

    def zero_set(self, z: SignVector) -> frozenset:
        return frozenset(i for i, x in enumerate(z) if x == 0)

    def underlying_matroid(self) -> Matroid:
        if self._matroid is None:
            self._matroid = _underlying(self)
        return self._matroid

    def to_json(self) -> dict:
        return {
            "kind": "oriented_matroid",
            "ground": self.ground_size,
            "covectors": sorted(sign_str(c) for c in self.covectors),
        }


def _underlying(om: OrientedMatroid) -> Matroid:
    # zero sets of covectors are the flats; rank = height above the loop flat
    n = om.ground_size
    flats = sorted({om.zero_set(z) for z in om.covectors}, key=lambda f: (len(f), sorted(f)))
    rank = {}
    for f in flats:
        below = [g for g in flats if g < f]
        rank[f] = 1 + max(rank[g] for g in below) if below else 0

    def cl(a):
        return min((f for f in flats if a <= f), key=len)

    r = rank.get(frozenset(range(n)), 0)
    bases = [b for b in itertools.combinations(range(n), r) if rank[cl(frozenset(b))] == r]
    return Matroid(n, bases, check=False)


def validate_covectors(om: OrientedMatroid) -> ValidationReport:
    """Covector axioms by exhaustive scan, plus the underlying matroid."""
    rep = ValidationReport()
    cov = om.covectors
    n = om.ground_size
    if any(len(c) != n for c in cov):
        rep.add("WrongLength", None)
        return rep
    if tuple([0] * n) not in cov:
        rep.add("MissingZero", None)
    for x in sorted(cov):
        if tuple(-a for a in x) not in cov:
            rep.add("NotSymmetric", sign_str(x))
            break
    for x, y in itertools.product(sorted(cov), repeat=2):
        if _compose(x, y) not in cov:
            rep.add("NotComposable", [sign_str(x), sign_str(y)])
            break
    if rep.ok:
        for x, y in itertools.combinations(sorted(cov), 2):
            sep = [e for e in range(n) if x[e] == -y[e] != 0]
            for e in sep:
                ok = any(
                    z[e] == 0
                    and all(z[f] == _compose(x, y)[f] for f in range(n) if x[f] != -y[f] or x[f] == 0)
                    for z in cov
                )
                if not ok:
                    rep.add("EliminationFails", [sign_str(x), sign_str(y), e])
                    break
            if not rep.ok:
                break
    if rep.ok:
        m = om.underlying_matroid()
        rep.info = {"rank": m.rank if m.bases else 0, "bases": sorted(sorted(b) for b in m.bases)}
    return rep


def covectors_from_realization(rows: Sequence[Sequence]) -> OrientedMatroid:
    """Sign vectors (sign(a_i . x))_i over x in Q^cols, each decided exactly."""
    a = [[Fraction(x) for x in row] for row in rows]
    n = len(a)
    k = len(a[0]) if a else 0
    found = []
    for signs in itertools.product((0, 1, -1), repeat=n):
        cons = []
        for row, s in zip(a, signs):
            if s == 0:
                cons.append((row, "==", 0))
            elif s > 0:
                cons.append(([-x for x in row], "<", 0))
            else:
                cons.append((row, "<", 0))
        if feasible(cons, k):
            found.append(signs)
    return OrientedMatroid(n, found, check=False)


def topes(om: OrientedMatroid) -> list[SignVector]:
    """Covectors of full support on the non-loop elements."""
    loops = frozenset.intersection(*[om.zero_set(z) for z in om.covectors]) if om.covectors else frozenset()
    return sorted(z for z in om.covectors if om.zero_set(z) == loops)


def tope_count(om: OrientedMatroid) -> dict:
    """Tope count next to the Whitney-sum prediction (-1)^r chi(-1)."""
    t = topes(om)
    m = om.underlying_matroid()
    chi, _ = characteristic_polynomial(m)
    predicted = (-1) ** m.rank * poly_eval(chi, -1)
    return {"topes": len(t), "zaslavsky": predicted, "zaslavsky_match": len(t) == predicted}


def _bits(t: SignVector) -> tuple:
    return tuple(1 if x < 0 else 0 for x in t)


def phase_from_flag(om: OrientedMatroid, flag: Sequence[Iterable[int]]) -> gf2.Z2AffineSubspace:
    """Affine subspace of (Z/2)^E from the topes of the flag minors.

    ``flag`` lists F_1 ⊊ ... ⊊ F_r = E (the empty flat may be included).
    The minor on F_j \\ F_{j-1} has covectors Z|F_j for covectors Z of the
    oriented matroid vanishing on F_{j-1}.

    Raises:
        FlagNotMaximal: if the chain is not a maximal chain of flats.
        TopesNotAffine: if the resulting point set is not affine.
    """
    n = om.ground_size
    chain = [frozenset(f) for f in flag]
    if not chain or chain[0]:
        chain = [frozenset()] + chain
    m = om.underlying_matroid()
    lat = flats_lattice(m)
    if chain[-1] != frozenset(range(n)) or any(f not in lat.ranks for f in chain):
        raise FlagNotMaximal([sorted(f) for f in chain])
    if [lat.ranks[f] for f in chain] != list(range(m.rank + 1)) or chain[0] != lat.flats[0]:
        raise FlagNotMaximal([sorted(f) for f in chain])
    pieces = []
    for lo, hi in zip(chain, chain[1:]):
        part = sorted(hi - lo)
        minor = {tuple(z[i] for i in part) for z in om.covectors if all(z[i] == 0 for i in lo)}
        minor_topes = [t for t in minor if all(x != 0 for x in t)]
        pieces.append((part, minor_topes))
    points = []
    for combo in itertools.product(*[tps for _, tps in pieces]):
        eps = [0] * n
        for (part, _), t in zip(pieces, combo):
            for i, x in zip(part, t):
                eps[i] = 1 if x < 0 else 0
        points.append(tuple(eps))
    try:
        return gf2.affine_canonical(points)
    except Exception as exc:  # PointsNotAffine
        raise TopesNotAffine(str(exc)) from exc


def phase_from_om(om: OrientedMatroid, c: TropicalComplex):
    """Real phase structure on a Bergman fan built by ``matroid.bergman_fan``.

    Each facet must carry its flag in ``meta["flag"]``; projective fans get
    the phase pushed through the projective chart mod 2.
    """
    from .phase import RealPhaseStructure

    info = c.meta.get("bergman", {})
    n = om.ground_size
    chart = gf2.as_gf2(projective_chart(n), n) if info.get("projective") else None
    phases = {}
    for f in c.facets:
        flag = c.cells[f].meta.get("flag")
        if flag is None:
            raise ValueError(f"facet {f} has no flag")
        e = phase_from_flag(om, flag)
        if chart is not None:
            e = e.image(chart)
        phases[f] = e
    return RealPhaseStructure(c, phases)


def las_vergnas_lattice(om: OrientedMatroid, tope: Sequence) -> FinitePoset:
    """Flats φ(Z) = zero set of Z over covectors Z conformal to the tope, by inclusion.

    Raises:
        NotATope: if ``tope`` is not a tope.
    """
    t = parse_sign(tope)
    if t not in topes(om):
        raise NotATope(sign_str(t))
    flats = sorted(
        {om.zero_set(z) for z in om.covectors if all(x == 0 or x == y for x, y in zip(z, t))},
        key=lambda f: (len(f), sorted(f)),
    )
    return FinitePoset.from_function(flats, lambda a, b: a <= b, [len(f) for f in flats])
