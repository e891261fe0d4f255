"""Finite posets: interval posets, order complexes, isomorphism certificates,
bounded-cubical and special-fibre posets.
"""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from typing import Any, Callable, Hashable, Iterable, Sequence

import networkx as nx
import numpy as np

from . import gf2

__all__ = [
    "FinitePoset",
    "IsoResult",
    "interval_poset",
    "order_complex",
    "count_chains",
    "simplicial_betti",
    "cellular_betti",
    "poset_isomorphic",
    "compactification_poset",
    "compactification_certificate",
    "bounded_cubical_poset",
    "special_fibre_poset",
]


class FinitePoset:
    """A finite poset with hashable labels.

    The order is stored as a reflexive, transitive boolean matrix ``leq``
    with ``leq[i, j]`` true iff element i <= element j.
    """

    def __init__(self, elements: Sequence[Hashable], leq: np.ndarray, dims: Sequence[int] | None = None):
        self.elements = list(elements)
        self.index = {e: i for i, e in enumerate(self.elements)}
        if len(self.index) != len(self.elements):
            raise ValueError("duplicate poset labels")
        self.leq = np.asarray(leq, dtype=bool)
        self.dims = list(dims) if dims is not None else None

    @classmethod
    def from_relation(cls, elements: Sequence[Hashable], pairs: Iterable[tuple], dims=None) -> "FinitePoset":
        """Poset generated by pairs ``(a, b)`` meaning a <= b (transitive closure taken)."""
        elements = list(elements)
        idx = {e: i for i, e in enumerate(elements)}
        n = len(elements)
        m = np.eye(n, dtype=bool)
        for a, b in pairs:
            m[idx[a], idx[b]] = True
        m = _closure(m)
        if n and np.any(m & m.T & ~np.eye(n, dtype=bool)):
            raise ValueError("relation has a cycle")
        return cls(elements, m, dims)

    @classmethod
    def from_function(cls, elements: Sequence[Hashable], le: Callable[[Any, Any], bool], dims=None) -> "FinitePoset":
        elements = list(elements)
        n = len(elements)
        m = np.zeros((n, n), dtype=bool)
        for i, a in enumerate(elements):
            for j, b in enumerate(elements):
                m[i, j] = i == j or bool(le(a, b))
        p = cls(elements, m, dims)
        if not p.is_partial_order():
            raise ValueError("relation is not a partial order")
        return p

    def __len__(self) -> int:
        return len(self.elements)

    def le(self, a, b) -> bool:
        return bool(self.leq[self.index[a], self.index[b]])

    def is_partial_order(self) -> bool:
        m = self.leq
        n = len(self)
        if n == 0:
            return True
        if not np.all(np.diag(m)):
            return False
        if np.any(m & m.T & ~np.eye(n, dtype=bool)):
            return False
        return bool(np.array_equal(_closure(m), m))

    def cover_pairs(self) -> list[tuple[int, int]]:
        """Index pairs (i, j) with i covered by j."""
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        ltint = lt.astype(np.int64)
        two_step = (ltint @ ltint) > 0
        cov = lt & ~two_step
        return [(int(i), int(j)) for i, j in zip(*np.nonzero(cov))]

    def grades(self) -> list[int]:
        """Length of the longest chain ending at each element."""
        order = sorted(range(len(self)), key=lambda i: int(self.leq[:, i].sum()))
        g = [0] * len(self)
        below = [[] for _ in range(len(self))]
        for i, j in self.cover_pairs():
            below[j].append(i)
        for j in order:
            g[j] = max((g[i] + 1 for i in below[j]), default=0)
        return g

    def opposite(self) -> "FinitePoset":
        return FinitePoset(self.elements, self.leq.T.copy())

    def subposet(self, labels: Iterable[Hashable]) -> "FinitePoset":
        idx = sorted(self.index[x] for x in labels)
        dims = [self.dims[i] for i in idx] if self.dims is not None else None
        return FinitePoset([self.elements[i] for i in idx], self.leq[np.ix_(idx, idx)], dims)

    def minimal(self) -> list:
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        return [self.elements[j] for j in range(len(self)) if not lt[:, j].any()]

    def maximal(self) -> list:
        lt = self.leq & ~np.eye(len(self), dtype=bool)
        return [self.elements[i] for i in range(len(self)) if not lt[i, :].any()]

    def to_json(self, marked: Iterable[Hashable] = ()) -> dict:
        marked = set(marked)
        return {
            "elements": [_jsonable(e) for e in self.elements],
            "covers": [[i, j] for i, j in sorted(self.cover_pairs())],
            "marked": sorted(self.index[m] for m in marked),
        }


def _jsonable(x):
    if isinstance(x, tuple):
        return [_jsonable(y) for y in x]
    if isinstance(x, frozenset):
        return sorted(_jsonable(y) for y in x)
    return x


def _closure(m: np.ndarray) -> np.ndarray:
    m = m.copy()
    while True:
        mi = m.astype(np.int64)
        nxt = m | ((mi @ mi) > 0)
        if np.array_equal(nxt, m):
            return m
        m = nxt


def interval_poset(p: FinitePoset) -> FinitePoset:
    """Poset of closed intervals [a, b] ordered by inclusion."""
    elems = []
    for i, a in enumerate(p.elements):
        for j, b in enumerate(p.elements):
            if p.leq[i, j]:
                elems.append((a, b))
    n = len(elems)
    ia = np.array([p.index[a] for a, _ in elems], dtype=np.int64)
    ib = np.array([p.index[b] for _, b in elems], dtype=np.int64)
    # [a,b] <= [c,d]  iff  c <= a and b <= d
    m = p.leq[np.ix_(ia, ia)].T & p.leq[np.ix_(ib, ib)]
    dims = None
    if p.dims is not None:
        dims = [p.dims[p.index[b]] - p.dims[p.index[a]] for a, b in elems]
    return FinitePoset(elems, m.reshape(n, n), dims)


def order_complex(p: FinitePoset) -> list[tuple]:
    """All nonempty chains of ``p`` as sorted index tuples (the simplices)."""
    lt = p.leq & ~np.eye(len(p), dtype=bool)
    up = [list(np.nonzero(lt[i])[0]) for i in range(len(p))]
    out = []

    def grow(chain):
        out.append(tuple(chain))
        for j in up[chain[-1]]:
            grow(chain + [int(j)])

    for i in range(len(p)):
        grow([i])
    return sorted(out, key=lambda s: (len(s), s))


def count_chains(p: FinitePoset) -> int:
    """Number of nonempty chains, by dynamic programming over the order."""
    lt = p.leq & ~np.eye(len(p), dtype=bool)
    # ending[i] = number of chains whose largest element is i
    order = sorted(range(len(p)), key=lambda i: int(lt[:, i].sum()))
    ending = [0] * len(p)
    for j in order:
        ending[j] = 1 + sum(ending[i] for i in np.nonzero(lt[:, j])[0])
    return sum(ending)


def simplicial_betti(simplices: Iterable[tuple]) -> list[int]:
    """GF(2) Betti numbers of a simplicial complex given by all its simplices."""
    by_dim: dict[int, list[tuple]] = {}
    for s in simplices:
        by_dim.setdefault(len(s) - 1, []).append(tuple(s))
    if not by_dim:
        return []
    top = max(by_dim)
    index = {q: {s: i for i, s in enumerate(sorted(by_dim.get(q, [])))} for q in range(top + 1)}
    ranks = {}
    for q in range(1, top + 1):
        rows, cols = index[q - 1], index[q]
        m = np.zeros((len(rows), len(cols)), dtype=np.uint8)
        for s, j in cols.items():
            for k in range(len(s)):
                m[rows[s[:k] + s[k + 1:]], j] = 1
        ranks[q] = gf2.rank(m) if m.size else 0
    out = []
    for q in range(top + 1):
        out.append(len(index[q]) - ranks.get(q, 0) - ranks.get(q + 1, 0))
    return out


def cellular_betti(p: FinitePoset, cells: Iterable | None = None) -> list[int]:
    """GF(2) Betti numbers of a regular CW complex given by its face poset.

    ``p.dims`` are the cell dimensions; all incidence numbers are 1 mod 2.
    ``cells`` restricts the chain groups to a subset (e.g. compact cells).
    """
    keep = set(p.elements if cells is None else cells)
    if not keep:
        return []
    dims = {e: p.dims[p.index[e]] for e in keep}
    top = max(dims.values())
    index = {q: {} for q in range(top + 1)}
    for e in sorted(keep, key=lambda x: p.index[x]):
        index[dims[e]][e] = len(index[dims[e]])
    ranks = {}
    for q in range(1, top + 1):
        m = np.zeros((len(index[q - 1]), len(index[q])), dtype=np.uint8)
        for s, j in index[q].items():
            for t, i in index[q - 1].items():
                if p.le(t, s):
                    m[i, j] = 1
        ranks[q] = gf2.rank(m) if m.size else 0
    return [len(index[q]) - ranks.get(q, 0) - ranks.get(q + 1, 0) for q in range(top + 1)]


@dataclass
class IsoResult:
    """Outcome of an isomorphism search.

    ``mapping`` sends labels of the first poset to labels of the second
    when ``ok``; otherwise ``reason`` names a distinguishing invariant.
    """

    ok: bool
    mapping: dict = field(default_factory=dict)
    reason: str = ""

    def __bool__(self) -> bool:
        return self.ok

    def to_json(self) -> dict:
        return {
            "certified": self.ok,
            "bijection": [[_jsonable(a), _jsonable(b)] for a, b in sorted(self.mapping.items(), key=lambda kv: str(kv[0]))],
            "reason": self.reason,
        }


def _signature(p: FinitePoset, marked: set) -> list[tuple]:
    g = p.grades()
    cov = p.cover_pairs()
    up = Counter(i for i, _ in cov)
    down = Counter(j for _, j in cov)
    below = p.leq.sum(axis=0)
    above = p.leq.sum(axis=1)
    return [
        (g[i], int(up[i]), int(down[i]), int(below[i]), int(above[i]), p.elements[i] in marked)
        for i in range(len(p))
    ]


def poset_isomorphic(p: FinitePoset, q: FinitePoset, marked_p: Iterable = (), marked_q: Iterable = ()) -> IsoResult:
    """Search for an order isomorphism p -> q preserving the marking.

    Candidates are pruned by (grade, cover degrees, principal ideal and
    filter sizes, marking); the search runs on Hasse diagrams. Any bijection
    found is re-verified against the full order relations.
    """
    mp, mq = set(marked_p), set(marked_q)
    if len(p) != len(q):
        return IsoResult(False, reason=f"size mismatch {len(p)} != {len(q)}")
    if len(mp) != len(mq):
        return IsoResult(False, reason=f"marked size mismatch {len(mp)} != {len(mq)}")
    sp, sq = _signature(p, mp), _signature(q, mq)
    gp, gq = Counter(s[0] for s in sp), Counter(s[0] for s in sq)
    if gp != gq:
        return IsoResult(False, reason=f"grade profile mismatch {sorted(gp.items())} != {sorted(gq.items())}")
    if Counter(sp) != Counter(sq):
        return IsoResult(False, reason="up/down-degree multiset mismatch")
    g1, g2 = nx.DiGraph(), nx.DiGraph()
    for i in range(len(p)):
        g1.add_node(i, sig=sp[i])
    for i in range(len(q)):
        g2.add_node(i, sig=sq[i])
    g1.add_edges_from(p.cover_pairs())
    g2.add_edges_from(q.cover_pairs())
    matcher = nx.algorithms.isomorphism.DiGraphMatcher(g1, g2, node_match=lambda a, b: a["sig"] == b["sig"])
    for iso in matcher.isomorphisms_iter():
        perm = np.array([iso[i] for i in range(len(p))], dtype=np.int64)
        if np.array_equal(p.leq, q.leq[np.ix_(perm, perm)]):
            mapping = {p.elements[i]: q.elements[perm[i]] for i in range(len(p))}
            if {mapping[x] for x in mp} == mq:
                return IsoResult(True, mapping)
    return IsoResult(False, reason="no order isomorphism found by exhaustive search")


def verify_isomorphism(p: FinitePoset, q: FinitePoset, mapping: dict, marked_p=(), marked_q=()) -> bool:
    """Independent re-check of a certificate bijection."""
    if sorted(map(str, mapping.values())) != sorted(map(str, q.elements)) or len(mapping) != len(p):
        return False
    for a in p.elements:
        for b in p.elements:
            if p.le(a, b) != q.le(mapping[a], mapping[b]):
                return False
    return {mapping[x] for x in marked_p} == set(marked_q)


def compactification_poset(x: FinitePoset, fan_poset: FinitePoset, reccone: dict) -> FinitePoset:
    """Abstract poset of pairs (σ, ρ) with ρ ≤ RecCone(σ).

    Order: (σ', ρ') <= (σ, ρ) iff σ' <= σ in ``x`` and ρ <= ρ' in the fan.
    ``reccone`` maps labels of ``x`` to labels of ``fan_poset``.
    """
    elems = [(s, r) for s in x.elements for r in fan_poset.elements if fan_poset.le(r, reccone[s])]
    return FinitePoset.from_function(elems, lambda a, b: x.le(a[0], b[0]) and fan_poset.le(b[1], a[1]))


def _check_strongly_unimodular(P) -> None:
    from .errors import NotStronglyUnimodular
    from .polyhedral import check_unimodular

    for cid in P.cell_ids:
        if not check_unimodular(P.stratum_polyhedron(cid), strong=True):
            raise NotStronglyUnimodular(cid)


def _check_subcomplex(P, X: Sequence[str]) -> list[str]:
    from .errors import NotSubcomplex

    xs = set(X)
    for c in xs:
        if c not in P.cells:
            raise NotSubcomplex(f"unknown cell {c}")
        missing = P.faces(c) - xs
        if missing:
            raise NotSubcomplex(f"faces {sorted(missing)} of {c} missing")
    return [c for c in P.cell_ids if c in xs]


def bounded_cubical_poset(P, X: Sequence[str], closure: bool = False) -> FinitePoset:
    """Poset of the bounded-cubical subdivision of the subcomplex X of P.

    Elements are ``((λ, κ), ρ)`` with λ ≤ κ bounded cells of X and ρ a cone
    of the recession fan of P with κ + ρ a cell of X; ordered as a product.
    With ``closure`` the canonical compactification of that poset is
    returned, with elements ``(((λ, κ), ρ), η)`` for η a face of ρ.
    """
    from .polyhedral import recession_fan

    _check_strongly_unimodular(P)
    xs = _check_subcomplex(P, X)
    fan = recession_fan(P)
    bounded = [c for c in xs if P.is_bounded(c)]
    fan_p = fan.poset()
    # locate κ + ρ among cells of X: the cell whose vertices are κ's and whose recession cone is ρ
    sum_cell = {}
    for c in xs:
        verts = P.vertex_set(c)
        kappa = next((b for b in bounded if P.vertex_set(b) == verts), None)
        if kappa is None:
            continue
        sum_cell[(kappa, fan.cone_of(P.recession_generators(c)))] = c
    intervals = [(a, b) for a in bounded for b in bounded if P.le(a, b)]
    elems = [((a, b), r) for (a, b) in intervals for r in fan.cones if (b, r) in sum_cell]

    def le(u, v):
        (a, b), r = u
        (c, d), s = v
        return P.le(c, a) and P.le(b, d) and fan_p.le(r, s)

    base = FinitePoset.from_function(elems, le)
    if not closure:
        return base
    return compactification_poset(base, fan_p, {e: e[1] for e in elems})


def special_fibre_poset(P, X: Sequence[str]) -> tuple[FinitePoset, dict]:
    """Face poset of the tropical special fibre of X in P, with certificates.

    Cells are pairs (σ, τ) with σ in X, τ in P and τ ⊆ σ as point sets
    (decided by exact membership, not by face labels). Returns the poset and
    a dict with isomorphism certificates against ``interval_poset`` of X and
    the closure of ``bounded_cubical_poset``.
    """
    _check_strongly_unimodular(P)
    xs = _check_subcomplex(P, X)
    pairs = [(s, t) for s in xs for t in P.cell_ids if P.contained_in(t, s)]

    def le(u, v):
        (s1, t1), (s2, t2) = u, v
        return P.contained_in(s1, s2) and P.contained_in(t2, t1)

    sf = FinitePoset.from_function(pairs, le)
    ints = interval_poset(P.poset().subposet(xs))
    bc = bounded_cubical_poset(P, xs, closure=True)
    certs = {
        "interval": poset_isomorphic(sf, ints),
        "bounded_cubical": poset_isomorphic(sf, bc),
    }
    return sf, certs


def compactification_certificate(c, sigma) -> tuple:
    """Compactify ``c`` in ``sigma`` and certify its face poset against the abstract pair poset.

    Returns ``(compactified complex, IsoResult)``.
    """
    from .polyhedral import compactify

    cc = compactify(c, sigma)
    rec = {cid: sigma.cone_of(c.recession_generators(cid)) for cid in c.cell_ids}
    abstract = compactification_poset(c.poset(), sigma.poset(), rec)
    return cc, poset_isomorphic(cc.poset(), abstract)
