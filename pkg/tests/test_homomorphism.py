"""Homomorphism search and the compressibility invariant."""

import itertools

import pytest

from orituran.canon import enumerate_tournaments
from orituran.extremal import PatternSpec
from orituran.graphs import OrientedGraph, TooLargeError
from orituran.homomorphism import (
    EmptyPatternError,
    VertexMap,
    compressibility,
    has_directed_cycle,
    hom_exists,
    is_antidirected,
    is_homomorphism,
)


def _tt(k):
    return OrientedGraph.from_arcs(k, [(i, j) for i in range(k) for j in range(i + 1, k)])


def _c3():
    return OrientedGraph.from_arcs(3, [(0, 1), (1, 2), (2, 0)])


def _naive_hom_exists(f, d):
    for img in itertools.product(range(d.n), repeat=f.n):
        if all(d.has_arc(img[u], img[v]) for u, v in f.arcs()):
            return True
    return False


def test_vertex_map_shape():
    vm = VertexMap.of(2, 3, {1: 0, 0: 2})
    assert vm.mapping == ((0, 2), (1, 0))
    assert vm.is_total
    assert vm.as_dict() == {0: 2, 1: 0}


def test_is_homomorphism_checks_arcs_and_totality():
    p3 = OrientedGraph.from_arcs(3, [(0, 1), (1, 2)])
    t = _tt(3)
    assert is_homomorphism(p3, t, VertexMap.of(3, 3, {0: 0, 1: 1, 2: 2}))
    assert not is_homomorphism(p3, t, VertexMap.of(3, 3, {0: 2, 1: 1, 2: 0}))
    assert not is_homomorphism(p3, t, VertexMap.of(3, 3, {0: 0, 1: 1}))


def test_homomorphisms_may_collapse_vertices():
    # both endpoints of a 2-matching can share an image arc
    m2 = OrientedGraph.from_arcs(4, [(0, 1), (2, 3)])
    arc = OrientedGraph.from_arcs(2, [(0, 1)])
    vm = hom_exists(m2, arc)
    assert vm is not None
    assert is_homomorphism(m2, arc, vm)


def test_has_directed_cycle():
    assert has_directed_cycle(_c3())
    assert not has_directed_cycle(_tt(4))
    assert not has_directed_cycle(OrientedGraph.from_arcs(4, [(0, 1), (1, 2), (2, 3)]))
    c5 = OrientedGraph.from_arcs(5, [(i, (i + 1) % 5) for i in range(5)])
    assert has_directed_cycle(c5)


def test_is_antidirected():
    adp4 = OrientedGraph.from_arcs(4, [(0, 1), (2, 1), (2, 3)])
    assert is_antidirected(adp4)
    assert is_antidirected(OrientedGraph.from_arcs(2, [(0, 1)]))
    assert not is_antidirected(OrientedGraph.from_arcs(3, [(0, 1), (1, 2)]))


@pytest.mark.parametrize("dn", [2, 3])
def test_hom_exists_matches_naive(dn):
    # every pattern on <= 3 vertices against every target on dn vertices
    pats = []
    for bits in itertools.product((0, 1, 2), repeat=3):
        arcs = []
        for (i, j), d in zip([(0, 1), (0, 2), (1, 2)], bits):
            if d == 1:
                arcs.append((i, j))
            elif d == 2:
                arcs.append((j, i))
        pats.append(OrientedGraph.from_arcs(3, arcs))
    targets = [t for t in enumerate_tournaments(dn)]
    targets.append(OrientedGraph.empty(dn))
    for f in pats[:20]:
        for d in targets:
            got = hom_exists(f, d)
            assert (got is not None) == _naive_hom_exists(f, d)
            if got is not None:
                assert is_homomorphism(f, d, got)


def test_compressibility_table():
    table = [
        ("dpath2", 2),
        ("dpath3", 3),
        ("dpath4", 4),
        ("dpath5", 5),
        ("ttour3", 4),
        ("adpath4", 2),
    ]
    for token, want in table:
        res = compressibility(PatternSpec.parse(token).graph)
        assert res.value == want, token
        # the witness certifies the lower bound: one tournament short by one
        assert res.witness.n == want - 1
        assert hom_exists(PatternSpec.parse(token).graph, res.witness) is None


def test_compressibility_infinite_on_directed_cycles():
    res = compressibility(_c3())
    assert res.is_infinite and res.value is None and res.witness is None


def test_compressibility_upper_level_is_tight():
    # at z itself, every tournament admits the pattern
    p3 = PatternSpec.parse("dpath3").graph
    for t in enumerate_tournaments(3):
        assert hom_exists(p3, t) is not None


def test_compressibility_monotone_under_subpatterns():
    z3 = compressibility(PatternSpec.parse("dpath3").graph).value
    z4 = compressibility(PatternSpec.parse("dpath4").graph).value
    assert z3 <= z4


def test_compressibility_empty_pattern_rejected():
    with pytest.raises(EmptyPatternError):
        compressibility(OrientedGraph.empty(3))


def test_compressibility_cap():
    with pytest.raises(TooLargeError):
        compressibility(PatternSpec.parse("dpath8").graph)
