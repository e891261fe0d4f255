"""Exact rational feasibility of linear systems by Fourier–Motzkin elimination.

A system is a list of constraints ``(a, op, b)`` meaning ``a . x op b`` with
``op`` one of ``"<="``, ``"<"``, ``"=="``. Strictness is carried through
the elimination as a flag on each derived inequality.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Sequence

__all__ = ["feasible", "in_polyhedron", "in_cone"]


def _normalize(a: list[Fraction], b: Fraction, strict: bool):
    for x in a:
        if x != 0:
            s = abs(x)
            return tuple(y / s for y in a), b / s, strict
    return tuple(a), b, strict


def feasible(constraints: Sequence[tuple[Sequence, str, object]], nvars: int) -> bool:
    eqs = []
    ineqs = []
    for a, op, b in constraints:
        a = [Fraction(x) for x in a]
        b = Fraction(b)
        if op == "==":
            eqs.append((a, b))
        elif op in ("<=", "<"):
            ineqs.append((a, b, op == "<"))
        elif op in (">=", ">"):
            ineqs.append(([-x for x in a], -b, op == ">"))
        else:
            raise ValueError(op)

    # Gaussian substitution for equalities
    while eqs:
        a, b = eqs.pop()
        j = next((i for i, x in enumerate(a) if x != 0), None)
        if j is None:
            if b != 0:
                return False
            continue
        aj = a[j]

        def sub(c, d):
            f = c[j] / aj
            if f == 0:
                return c, d
            return [ci - f * ai for ci, ai in zip(c, a)], d - f * b

        eqs = [sub(c, d) for c, d in eqs]
        ineqs = [(*sub(c, d), s) for c, d, s in ineqs]

    rows = {_normalize(a, b, s) for a, b, s in ineqs}
    for j in range(nvars):
        pos, neg, keep = [], [], set()
        for a, b, s in rows:
            if a[j] > 0:
                pos.append((a, b, s))
            elif a[j] < 0:
                neg.append((a, b, s))
            else:
                keep.add((a, b, s))
        for ap, bp, sp in pos:
            for an, bn, sn in neg:
                fp, fn = -an[j], ap[j]
                a = [fp * x + fn * y for x, y in zip(ap, an)]
                a[j] = Fraction(0)
                keep.add(_normalize(a, fp * bp + fn * bn, sp or sn))
        rows = _prune(keep)
    for a, b, s in rows:
        if s and not b > 0:
            return False
        if not s and not b >= 0:
            return False
    return True


def _prune(rows: set) -> set:
    # drop constant rows that are trivially satisfied; keep the tightest of parallel rows
    best: dict = {}
    out = set()
    for a, b, s in rows:
        if all(x == 0 for x in a):
            if (s and b > 0) or (not s and b >= 0):
                continue
            out.add((a, b, s))
            continue
        cur = best.get(a)
        if cur is None or b < cur[0] or (b == cur[0] and s and not cur[1]):
            best[a] = (b, s)
    out.update((a, b, s) for a, (b, s) in best.items())
    return out


def in_polyhedron(point: Sequence, vertices: Sequence[Sequence], rays: Sequence[Sequence] = (),
                  lineality: Sequence[Sequence] = ()) -> bool:
    """Is ``point`` in conv(vertices) + cone(rays) + span(lineality)?"""
    gens = [(v, "v") for v in vertices] + [(r, "r") for r in rays] + [(l, "l") for l in lineality]
    k = len(gens)
    n = len(point)
    cons = []
    for i in range(n):
        cons.append(([Fraction(g[i]) for g, _ in gens], "==", Fraction(point[i])))
    if not vertices:
        return False
    cons.append(([1 if t == "v" else 0 for _, t in gens], "==", 1))
    for idx, (_, t) in enumerate(gens):
        if t != "l":
            e = [0] * k
            e[idx] = -1
            cons.append((e, "<=", 0))
    return feasible(cons, k)


def in_cone(direction: Sequence, rays: Sequence[Sequence], lineality: Sequence[Sequence] = ()) -> bool:
    """Is ``direction`` in cone(rays) + span(lineality)?"""
    zero = [0] * len(direction)
    return in_polyhedron(direction, [zero], rays, lineality)
