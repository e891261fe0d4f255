import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from troppatch.errors import NotStronglyUnimodular, NotSubcomplex
from troppatch.io import parse_input
from troppatch.polyhedral import Cell, RationalPolyhedron, TropicalComplex, recession_fan, trivial_fan
from troppatch.posets import (
    FinitePoset,
    bounded_cubical_poset,
    cellular_betti,
    compactification_certificate,
    count_chains,
    interval_poset,
    order_complex,
    poset_isomorphic,
    simplicial_betti,
    special_fibre_poset,
    verify_isomorphism,
)


def boolean_lattice(n):
    elems = [frozenset(s) for k in range(n + 1) for s in itertools.combinations(range(n), k)]
    return FinitePoset.from_function(elems, lambda a, b: a <= b)


def chain(n):
    return FinitePoset.from_function(list(range(n)), lambda a, b: a <= b)


def test_from_relation_closes_and_rejects_cycles():
    p = FinitePoset.from_relation("abc", [("a", "b"), ("b", "c")])
    assert p.le("a", "c") and p.is_partial_order()
    with pytest.raises(ValueError):
        FinitePoset.from_relation("ab", [("a", "b"), ("b", "a")])


def test_interval_poset_of_chain():
    # intervals of a 3-chain: 3 points and 3 nontrivial intervals
    assert len(interval_poset(chain(3))) == 6


def test_chain_counts_agree_with_order_complex():
    for p in (chain(4), boolean_lattice(3)):
        assert count_chains(p) == len(order_complex(p))
    assert count_chains(chain(4)) == 2**4 - 1


def test_simplicial_betti():
    assert simplicial_betti([(0,), (1,), (2,), (0, 1), (1, 2), (0, 2)]) == [1, 1]
    assert simplicial_betti([(0,), (1,)]) == [2]
    # proper part of the boolean lattice B_3 is a circle
    b = boolean_lattice(3)
    proper = b.subposet([x for x in b.elements if 0 < len(x) < 3])
    assert simplicial_betti(order_complex(proper)) == [1, 1]


def test_cellular_betti_of_circle():
    p = FinitePoset.from_relation(["v", "w", "e1", "e2"], [("v", "e1"), ("w", "e1"), ("v", "e2"), ("w", "e2")], dims=[0, 0, 1, 1])
    assert cellular_betti(p) == [1, 1]


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 10_000), st.sampled_from([2, 3]))
def test_relabelled_poset_is_isomorphic(seed, n):
    p = boolean_lattice(n)
    rng = random.Random(seed)
    perm = list(range(len(p)))
    rng.shuffle(perm)
    labels = [f"x{perm[i]}" for i in range(len(p))]
    q = FinitePoset.from_function(
        labels, lambda a, b: p.leq[labels.index(a), labels.index(b)]
    )
    res = poset_isomorphic(p, q)
    assert res.ok and verify_isomorphism(p, q, res.mapping)


def test_non_isomorphic():
    vee = boolean_lattice(2).subposet([frozenset(), frozenset({0}), frozenset({1})])
    res = poset_isomorphic(chain(3), vee)
    assert not res.ok and res.reason


def test_verify_rejects_bad_map():
    p = chain(2)
    assert not verify_isomorphism(p, p, {0: 1, 1: 0})


@pytest.mark.parametrize("name,fan", [("u23_line", "tp2_fan"), ("u34_coarse", "tp3_fan"), ("fig3_P", None)])
def test_compactification_certificates(name, fan):
    c = parse_input(name)
    sigma = parse_input(fan) if fan else recession_fan(c)
    cc, cert = compactification_certificate(c, sigma)
    assert cert.ok


def test_special_fibre_fig2():
    P = parse_input("fig2_P")
    sf, certs = special_fibre_poset(P, parse_input("fig2_X").cell_ids)
    assert len(sf) == 3 and all(c.ok for c in certs.values())
    sf, certs = special_fibre_poset(P, P.cell_ids)
    assert len(sf) == 13 and all(c.ok for c in certs.values())


def test_bounded_cubical_requires_subcomplex():
    P = parse_input("fig2_P")
    edge = next(c for c in P.cell_ids if P.dim(c) == 1 and P.is_bounded(c))
    with pytest.raises(NotSubcomplex):
        bounded_cubical_poset(P, [edge])


def test_not_strongly_unimodular():
    pt = lambda x: RationalPolyhedron.make(1, vertices=[(x,)])
    cells = [Cell("a", (), pt(0)), Cell("b", (), pt(2)), Cell("ab", (), RationalPolyhedron.make(1, vertices=[(0,), (2,)]), ("a", "b"))]
    P = TropicalComplex(1, trivial_fan(1), cells)
    with pytest.raises(NotStronglyUnimodular):
        special_fibre_poset(P, P.cell_ids)
