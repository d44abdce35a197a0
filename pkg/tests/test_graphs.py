"""Core graph values: construction invariants, codec, degree bookkeeping."""

import pytest

from orituran.graphs import (
    AntiparallelArcError,
    BipartiteDigraph,
    InvariantError,
    LoopArcError,
    OrientedGraph,
    ParseError,
    TooLargeError,
    decode,
    decode_undirected,
    degree_profile,
    encode,
    encode_undirected,
)


def test_from_arcs_roundtrip():
    g = OrientedGraph.from_arcs(4, [(0, 1), (2, 3), (1, 3)])
    assert g.n == 4
    assert g.arc_count == 3
    assert list(g.arcs()) == [(0, 1), (1, 3), (2, 3)]
    assert g.has_arc(0, 1) and not g.has_arc(1, 0)


def test_loop_rejected():
    with pytest.raises(LoopArcError):
        OrientedGraph.from_arcs(2, [(1, 1)])


def test_antiparallel_rejected():
    with pytest.raises(AntiparallelArcError):
        OrientedGraph.from_arcs(2, [(0, 1), (1, 0)])


def test_vertex_cap():
    OrientedGraph.empty(64)
    with pytest.raises(InvariantError):
        OrientedGraph.empty(65)


def test_out_mask_bounds():
    with pytest.raises(InvariantError):
        OrientedGraph(2, (4, 0))
    with pytest.raises(InvariantError):
        OrientedGraph(2, (0,))


def test_arc_range_checked():
    with pytest.raises(InvariantError):
        OrientedGraph.from_arcs(2, [(0, 2)])


def test_add_arc_keeps_validation():
    g = OrientedGraph.from_arcs(3, [(0, 1)])
    g2 = g.add_arc(1, 2)
    assert g2.arc_count == 2 and g.arc_count == 1
    with pytest.raises(AntiparallelArcError):
        g.add_arc(1, 0)


def test_degrees_and_reverse():
    g = OrientedGraph.from_arcs(3, [(0, 1), (0, 2), (1, 2)])
    assert g.out_degree(0) == 2 and g.in_degree(0) == 0
    assert g.in_degree(2) == 2
    r = g.reverse()
    assert sorted(r.arcs()) == [(1, 0), (2, 0), (2, 1)]
    assert r.reverse() == g


def test_induced_relabels_in_given_order():
    g = OrientedGraph.from_arcs(4, [(0, 1), (1, 2), (2, 3)])
    h = g.induced([2, 1, 3])
    # 2->3 becomes 0->2, 1->2 becomes 1->0
    assert sorted(h.arcs()) == [(0, 2), (1, 0)]
    with pytest.raises(InvariantError):
        g.induced([0, 0])


def test_degree_profile_aggregates():
    g = OrientedGraph.from_arcs(3, [(0, 1), (0, 2)])
    prof = degree_profile(g)
    assert prof.totals == (2, 1, 1)
    assert prof.max_degree == 2
    assert prof.min_degree == 1
    assert prof.arc_count == 2
    assert prof.average_degree == pytest.approx(4 / 3)


def test_encode_is_sorted_and_stable():
    a = OrientedGraph.from_arcs(3, [(2, 0), (0, 1)])
    b = OrientedGraph.from_arcs(3, [(0, 1), (2, 0)])
    assert encode(a) == encode(b) == "3\n0 1\n2 0\n"


def test_decode_roundtrip_with_comments():
    text = "# pattern\n\n3\n0 1\n# middle\n1 2\n"
    g = decode(text)
    assert list(g.arcs()) == [(0, 1), (1, 2)]
    assert decode(encode(g)) == g


def test_decode_error_positions():
    with pytest.raises(ParseError) as exc:
        decode("3\n0 x\n")
    assert exc.value.line == 2
    with pytest.raises(ParseError):
        decode("")
    with pytest.raises(ParseError):
        decode("3\n0 1 2\n")
    with pytest.raises(ParseError):
        decode("3\n0 5\n")
    with pytest.raises(LoopArcError):
        decode("3\n1 1\n")
    with pytest.raises(AntiparallelArcError):
        decode("3\n0 1\n1 0\n")


def test_undirected_codec():
    text = encode_undirected(4, [(3, 1), (0, 1)])
    assert text == "undirected\n4\n0 1\n1 3\n"
    n, edges = decode_undirected(text)
    assert n == 4 and edges == ((0, 1), (1, 3))
    # decoding deduplicates repeated edges regardless of direction
    n, edges = decode_undirected("undirected\n4\n1 3\n3 1\n")
    assert edges == ((1, 3),)
    with pytest.raises(ParseError):
        decode_undirected("4\n0 1\n")
    with pytest.raises(LoopArcError):
        decode_undirected("undirected\n3\n2 2\n")


def test_bipartite_basicstructure():
    b = BipartiteDigraph.from_arcs([10, 11], [20, 21, 22], [(10, 20), (10, 22), (11, 21)])
    assert b.n == 5
    assert b.arc_count == 3
    assert list(b.arcs()) == [(10, 20), (10, 22), (11, 21)]
    assert b.out_neighbors(0) == [20, 22]
    assert b.in_masks == (1, 2, 1)
    assert b.degree_of("u", 0) == 2
    assert b.degree_of("w", 1) == 1
    assert b.min_out_degree() == 1


def test_bipartite_part_overlap_rejected():
    with pytest.raises(InvariantError):
        BipartiteDigraph((0, 1), (1, 2), (0, 0))
    with pytest.raises(InvariantError):
        BipartiteDigraph.from_arcs([0], [1], [(1, 0)])


def test_bipartite_to_oriented():
    b = BipartiteDigraph.from_arcs([5, 7], [9], [(5, 9), (7, 9)])
    g, label = b.to_oriented()
    assert g.n == 3
    assert label == {5: 0, 7: 1, 9: 2}
    assert sorted(g.arcs()) == [(0, 2), (1, 2)]


def test_bipartite_to_oriented_cap():
    big = BipartiteDigraph(tuple(range(40)), tuple(range(40, 80)), (0,) * 40)
    with pytest.raises(TooLargeError):
        big.to_oriented()


def test_bipartite_restrict_preserves_ids():
    b = BipartiteDigraph.from_arcs(
        [0, 1, 2], [3, 4, 5], [(0, 3), (0, 4), (1, 4), (2, 5)]
    )
    s = b.restrict([2, 0], [5, 4])
    assert s.part_u == (2, 0) and s.part_w == (5, 4)
    assert sorted(s.arcs()) == [(0, 4), (2, 5)]
    # a restriction of a restriction still refers to original ids
    s2 = s.restrict([0], [4])
    assert list(s2.arcs()) == [(0, 4)]


def test_bipartite_no_vertex_cap():
    wide = BipartiteDigraph(tuple(range(300)), tuple(range(300, 400)), (1,) * 300)
    assert wide.n == 400
    assert wide.arc_count == 300
