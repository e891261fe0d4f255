"""Matroids from bases, lattices of flats, characteristic polynomials and Bergman fans."""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import HasLoops, ValidationError
from .polyhedral import Cell, RationalPolyhedron, TropicalComplex, ValidationReport, trivial_fan
from .posets import FinitePoset

__all__ = [
    "Matroid",
    "FlatsLattice",
    "validate_matroid",
    "uniform_matroid",
    "flats_lattice",
    "characteristic_polynomial",
    "fp_dims_from_charpoly",
    "bergman_fan",
    "coarse_projective_fan",
    "projective_chart",
    "poly_eval",
    "poly_str",
]


class Matroid:
    """A matroid on {0, ..., ground_size - 1} given by its bases."""

    def __init__(self, ground_size: int, bases: Iterable[Iterable[int]], check: bool = True):
        self.ground_size = ground_size
        self.bases = frozenset(frozenset(b) for b in bases)
        if check:
            rep = validate_matroid(self)
            if not rep.ok:
                raise ValidationError(f"not a matroid: {rep.violations}")
        self._rank_cache: dict = {}

    @property
    def ground(self) -> frozenset:
        return frozenset(range(self.ground_size))

    @property
    def rank(self) -> int:
        return len(next(iter(self.bases)))

    def rk(self, a: Iterable[int]) -> int:
        a = frozenset(a)
        if a not in self._rank_cache:
            self._rank_cache[a] = max(len(a & b) for b in self.bases)
        return self._rank_cache[a]

    def closure(self, a: Iterable[int]) -> frozenset:
        a = frozenset(a)
        r = self.rk(a)
        return frozenset(x for x in self.ground if self.rk(a | {x}) == r)

    def loops(self) -> frozenset:
        return self.closure(())

    def is_uniform(self) -> bool:
        return len(self.bases) == len(list(itertools.combinations(range(self.ground_size), self.rank)))

    def to_json(self) -> dict:
        return {"kind": "matroid", "ground": self.ground_size, "bases": sorted(sorted(b) for b in self.bases)}


def validate_matroid(m: Matroid) -> ValidationReport:
    """Nonempty bases of equal size satisfying the exchange axiom."""
    rep = ValidationReport()
    if not m.bases:
        rep.add("NoBases", None)
        return rep
    sizes = {len(b) for b in m.bases}
    if len(sizes) != 1:
        rep.add("UnequalBases", sorted(sizes))
        return rep
    if any(x < 0 or x >= m.ground_size for b in m.bases for x in b):
        rep.add("OutOfGround", None)
        return rep
    for b1 in m.bases:
        for b2 in m.bases:
            for x in b1 - b2:
                if not any((b1 - {x}) | {y} in m.bases for y in b2 - b1):
                    rep.add("ExchangeViolated", [sorted(b1), sorted(b2), x])
                    return rep
    return rep


def uniform_matroid(r: int, n: int) -> Matroid:
    return Matroid(n, itertools.combinations(range(n), r), check=False)


@dataclass
class FlatsLattice:
    """Flats of a matroid graded by rank."""

    flats: list
    ranks: dict

    def by_rank(self, r: int) -> list:
        return [f for f in self.flats if self.ranks[f] == r]

    def covers(self) -> list:
        return [
            (a, b)
            for a in self.flats
            for b in self.flats
            if a < b and self.ranks[b] == self.ranks[a] + 1
        ]

    def poset(self) -> FinitePoset:
        return FinitePoset.from_function(self.flats, lambda a, b: a <= b, [self.ranks[f] for f in self.flats])


def _flat_key(f: frozenset):
    return (len(f), sorted(f))


def flats_lattice(m: Matroid) -> FlatsLattice:
    """All flats as closures of all subsets of the ground set."""
    flats = set()
    for k in range(m.ground_size + 1):
        for a in itertools.combinations(range(m.ground_size), k):
            flats.add(m.closure(a))
    ordered = sorted(flats, key=lambda f: (m.rk(f), sorted(f)))
    return FlatsLattice(ordered, {f: m.rk(f) for f in ordered})


def characteristic_polynomial(m: Matroid) -> tuple[list[int], list[int]]:
    """Whitney-sum characteristic polynomial and its reduced form.

    Polynomials are coefficient lists, index = degree.

    Raises:
        HasLoops: for matroids with loops.
    """
    if m.loops():
        raise HasLoops(sorted(m.loops()))
    r = m.rank
    chi = [0] * (r + 1)
    for k in range(m.ground_size + 1):
        for a in itertools.combinations(range(m.ground_size), k):
            chi[r - m.rk(a)] += (-1) ** k
    # divide by (t - 1) synthetically
    red = [0] * r
    carry = 0
    for deg in range(r, 0, -1):
        carry = chi[deg] + carry
        red[deg - 1] = carry
    if chi[0] + carry != 0:
        raise ArithmeticError("characteristic polynomial not divisible by t - 1")
    return chi, red


def fp_dims_from_charpoly(m: Matroid) -> list[int]:
    """Entry p is |coefficient of t^(d-p)| of the reduced characteristic polynomial."""
    _, red = characteristic_polynomial(m)
    d = len(red) - 1
    return [abs(red[d - p]) for p in range(d + 1)]


def poly_eval(coeffs: Sequence[int], x: int) -> int:
    return sum(c * x**k for k, c in enumerate(coeffs))


def poly_str(coeffs: Sequence[int], var: str = "t") -> str:
    terms = []
    for k in range(len(coeffs) - 1, -1, -1):
        c = coeffs[k]
        if c == 0:
            continue
        mon = "" if k == 0 else (var if k == 1 else f"{var}^{k}")
        mag = abs(c)
        body = str(mag) if (mag != 1 or not mon) else ""
        body = body + ("*" if body and mon else "") + mon
        sign = "-" if c < 0 else "+"
        terms.append((sign, body))
    if not terms:
        return "0"
    out = ("-" if terms[0][0] == "-" else "") + terms[0][1]
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


def projective_chart(n: int) -> list[list[int]]:
    """Matrix of R^n / R(1,...,1) -> R^(n-1), x -> (x_i - x_0)_{i>0}."""
    return [[-1] + [int(i == j) for j in range(n - 1)] for i in range(n - 1)]


def _vF(f: Iterable[int], n: int) -> list[int]:
    return [-1 if i in f else 0 for i in range(n)]


def _chain_id(chain: Sequence[frozenset]) -> str:
    if not chain:
        return "{}"
    return "<".join("{" + ",".join(map(str, sorted(f))) + "}" for f in chain)


def bergman_fan(m: Matroid, projective: bool = False) -> TropicalComplex:
    """Fine Bergman fan: one cone per chain of proper nonempty flats.

    The affine fan lives in R^E with lineality v_E; the projective fan lives
    in R^E / R(1,...,1) written in the chart of ``projective_chart``.
    Each facet carries its maximal flag in ``meta["flag"]``.

    Raises:
        HasLoops: for matroids with loops.
    """
    if m.loops():
        raise HasLoops(sorted(m.loops()))
    n = m.ground_size
    lat = flats_lattice(m)
    proper = [f for f in lat.flats if 0 < len(f) < n]
    chains = [()]
    frontier = [()]
    while frontier:
        nxt = []
        for ch in frontier:
            for f in proper:
                if not ch or (ch[-1] < f):
                    nxt.append(ch + (f,))
        chains += nxt
        frontier = nxt
    chains.sort(key=lambda ch: (len(ch), [sorted(f) for f in ch]))
    top = m.rank - 1
    chart = projective_chart(n)
    amb = n - 1 if projective else n
    cells = []
    for ch in chains:
        rays = [_vF(f, n) for f in ch]
        lin = [] if projective else [_vF(range(n), n)]
        if projective:
            rays = [[sum(a * b for a, b in zip(row, r)) for row in chart] for r in rays]
        poly = RationalPolyhedron.make(amb, [[0] * amb], rays, lin)
        faces = tuple(_chain_id(ch[:i] + ch[i + 1:]) for i in range(len(ch)))
        meta = {}
        if len(ch) == top:
            meta["flag"] = [sorted(f) for f in ch] + [list(range(n))]
        cells.append(Cell(_chain_id(ch), (), poly, faces, meta))
    return TropicalComplex(amb, trivial_fan(amb), cells, {"bergman": {"projective": projective, "ground": n}})


def coarse_projective_fan(m: Matroid) -> TropicalComplex:
    """Coarse projective Bergman fan of a uniform matroid: cones on v_i, i in A, |A| < rank.

    Facets carry the flag given by the prefixes of A.
    """
    if not m.is_uniform():
        raise ValueError("coarse fan construction requires a uniform matroid")
    n, r = m.ground_size, m.rank
    chart = projective_chart(n)
    amb = n - 1
    cells = []
    for k in range(r):
        for a in itertools.combinations(range(n), k):
            rays = [[sum(x * y for x, y in zip(row, _vF([i], n))) for row in chart] for i in a]
            poly = RationalPolyhedron.make(amb, [[0] * amb], rays)
            faces = tuple(_set_id(a[:i] + a[i + 1:]) for i in range(len(a)))
            meta = {}
            if k == r - 1:
                meta["flag"] = [list(a[: i + 1]) for i in range(k)] + [list(range(n))]
            cells.append(Cell(_set_id(a), (), poly, faces, meta))
    return TropicalComplex(amb, trivial_fan(amb), cells, {"bergman": {"projective": True, "ground": n, "coarse": True}})


def _set_id(a: Sequence[int]) -> str:
    return "v" + "-".join(map(str, a)) if a else "o"
