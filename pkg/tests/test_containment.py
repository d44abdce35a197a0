"""Subgraph containment: witness checks, naive cross-validation, universal sweeps."""

import itertools

import pytest

from orituran.containment import (
    all_orientations_contain,
    all_tournaments_contain,
    contains_copy,
    contains_copy_through,
    is_copy_witness,
    is_free,
    orientation_graph,
)
from orituran.extremal import PatternSpec
from orituran.graphs import OrientedGraph, TooLargeError
from orituran.homomorphism import VertexMap


def _naive_contains(host, pattern):
    for sub in itertools.permutations(range(host.n), pattern.n):
        if all(host.has_arc(sub[u], sub[v]) for u, v in pattern.arcs()):
            return True
    return False


def _random_graph(rng, n, density):
    arcs = []
    for i in range(n):
        for j in range(i + 1, n):
            roll = rng.random()
            if roll < density / 2:
                arcs.append((i, j))
            elif roll < density:
                arcs.append((j, i))
    return OrientedGraph.from_arcs(n, arcs)


def test_witness_checker_rejects_bad_maps():
    host = OrientedGraph.from_arcs(3, [(0, 1), (1, 2)])
    pat = OrientedGraph.from_arcs(2, [(0, 1)])
    assert is_copy_witness(host, pat, VertexMap.of(2, 3, {0: 0, 1: 1}))
    assert not is_copy_witness(host, pat, VertexMap.of(2, 3, {0: 1, 1: 0}))
    assert not is_copy_witness(host, pat, VertexMap.of(2, 3, {0: 0, 1: 0}))
    assert not is_copy_witness(host, pat, VertexMap.of(2, 3, {0: 0}))


def test_contains_copy_matches_naive():
    import random

    rng = random.Random(31)
    pats = [
        PatternSpec.parse("dpath3").graph,
        PatternSpec.parse("dcycle3").graph,
        PatternSpec.parse("adpath4").graph,
        PatternSpec.parse("matching2").graph,
        PatternSpec.parse("prop23").graph,
    ]
    for _ in range(40):
        host = _random_graph(rng, rng.randint(1, 6), rng.random())
        for pat in pats:
            got = contains_copy(host, pat)
            assert (got is not None) == _naive_contains(host, pat)
            if got is not None:
                assert is_copy_witness(host, pat, got)


def test_contains_copy_reversal_symmetry():
    import random

    rng = random.Random(7)
    pat = PatternSpec.parse("dpath4").graph
    for _ in range(25):
        host = _random_graph(rng, 6, 0.7)
        assert (contains_copy(host, pat) is None) == (
            contains_copy(host.reverse(), pat.reverse()) is None
        )


def test_freeness_is_hereditary():
    import random

    rng = random.Random(11)
    pat = PatternSpec.parse("dpath3").graph
    for _ in range(25):
        host = _random_graph(rng, 6, 0.5)
        if is_free(host, pat):
            sub = host.induced([0, 2, 3, 5])
            assert is_free(sub, pat)


def test_contains_copy_through_pins_the_vertex():
    # 0->1->2 plus isolated 3: copies of the single arc avoid vertex 3
    host = OrientedGraph.from_arcs(4, [(0, 1), (1, 2)])
    arc = OrientedGraph.from_arcs(2, [(0, 1)])
    assert contains_copy_through(host, arc, 0) is not None
    assert contains_copy_through(host, arc, 3) is None
    vm = contains_copy_through(host, arc, 2)
    assert vm is not None
    assert 2 in dict(vm.mapping).values()
    with pytest.raises(ValueError):
        contains_copy_through(host, arc, 4)


def test_contains_copy_through_agrees_with_full_search():
    import random

    rng = random.Random(13)
    pat = PatternSpec.parse("dpath3").graph
    for _ in range(20):
        host = _random_graph(rng, 5, 0.6)
        full = contains_copy(host, pat) is not None
        through_any = any(
            contains_copy_through(host, pat, v) is not None for v in range(host.n)
        )
        assert full == through_any


def test_all_tournaments_contain_path():
    holds, cx = all_tournaments_contain(4, PatternSpec.parse("dpath4").graph)
    assert holds and cx is None


def test_all_tournaments_counterexample_is_first_miss():
    holds, cx = all_tournaments_contain(3, PatternSpec.parse("dcycle3").graph)
    assert not holds
    assert cx is not None and cx.n == 3
    assert contains_copy(cx, PatternSpec.parse("dcycle3").graph) is None


def test_all_tournaments_jobs_invariant():
    pat = PatternSpec.parse("oc4").graph
    assert all_tournaments_contain(5, pat, jobs=1)[0] == all_tournaments_contain(
        5, pat, jobs=2
    )[0]


def test_orientation_graph_bit_semantics():
    edges = [(0, 1), (1, 2)]
    g0 = orientation_graph(3, edges, 0b00)
    assert sorted(g0.arcs()) == [(0, 1), (1, 2)]
    g1 = orientation_graph(3, edges, 0b01)
    assert sorted(g1.arcs()) == [(1, 0), (1, 2)]


def test_all_orientations_contain_small():
    # any orientation of a triangle contains a directed path on 3 vertices
    tri = [(0, 1), (1, 2), (0, 2)]
    holds, cx = all_orientations_contain(3, tri, PatternSpec.parse("dpath3").graph)
    assert holds and cx is None
    # but not a directed triangle: the transitive orientation misses it
    holds, cx = all_orientations_contain(3, tri, PatternSpec.parse("dcycle3").graph)
    assert not holds
    assert is_free(cx, PatternSpec.parse("dcycle3").graph)


def test_all_orientations_rejects_bad_edges():
    with pytest.raises(ValueError):
        all_orientations_contain(3, [(0, 1), (1, 0)], OrientedGraph.from_arcs(2, [(0, 1)]))
    with pytest.raises(ValueError):
        all_orientations_contain(3, [(1, 1)], OrientedGraph.from_arcs(2, [(0, 1)]))


def test_all_orientations_edge_cap():
    edges = [(i, j) for i in range(8) for j in range(i + 1, 8)][:25]
    with pytest.raises(TooLargeError):
        all_orientations_contain(8, edges, OrientedGraph.from_arcs(2, [(0, 1)]))
