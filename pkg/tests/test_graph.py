import itertools

import networkx as nx
import pytest

from homlab import GraphInputError, build_graph
from homlab.catalog import complete, cycle, grotzsch, path
from homlab.graph import (
    Graph,
    HPartiteGraph,
    OrderedPattern,
    apex_extend,
    disjoint_sum,
    disjoint_triangle_pad,
    empty_graph,
    h_join,
    mapping_from,
    pendant_triangles,
    prefix_copy,
    product_projections,
    tensor_product,
    triangle_strip_pad,
)
from homlab.invariants import chromatic_number, clique_number, edges_in_triangles, is_connected, odd_girth
from homlab.solver import verify_hom


def to_nx(g):
    x = nx.Graph()
    x.add_nodes_from(range(g.n))
    x.add_edges_from(g.edges)
    return x


def test_build_graph_normalizes():
    g = build_graph(3, [(1, 0), (2, 1), (0, 2), (0, 1)])
    assert g.edges == ((0, 1), (0, 2), (1, 2))
    assert g.m == 3
    assert build_graph(1, []).n == 1


def test_build_graph_c5_odd_girth():
    assert odd_girth(build_graph(5, [(i, (i + 1) % 5) for i in range(5)])) == 5


@pytest.mark.parametrize("edges", [[(0, 0)], [(0, 3)], [(-1, 0)], [(0, 1, 2)]])
def test_build_graph_rejects(edges):
    with pytest.raises(GraphInputError):
        build_graph(3, edges)


def test_labels_ignored_by_equality():
    a = Graph(2, ((0, 1),), ("a", "b"))
    assert a == Graph(2, ((0, 1),))
    assert a.label(1) == "b"
    assert Graph(2, ((0, 1),)).label(1) == "1"


def test_induced_and_adjacency():
    g = cycle(5)
    sub = g.induced([0, 1, 2])
    assert sub.edges == ((0, 1), (1, 2))
    assert g.degree(3) == 2
    assert g.nbrs[0] == (1, 4)


def test_disjoint_sum_counts_and_chi():
    s = disjoint_sum(cycle(3), cycle(5))
    assert (s.n, s.m) == (8, 8)
    assert disjoint_sum(cycle(5), empty_graph(0)) == cycle(5)
    assert chromatic_number(disjoint_sum(complete(4), complete(3))) == 4


def test_tensor_product_examples():
    k2 = complete(2)
    p = tensor_product(k2, k2)
    assert (p.n, p.m) == (4, 2)
    assert nx.is_isomorphic(to_nx(tensor_product(cycle(5), k2)), to_nx(cycle(10)))
    k3k3 = tensor_product(complete(3), complete(3))
    # pairs of vertices whose coordinates both differ
    expected = sum(1 for a, b in itertools.combinations(itertools.product(range(3), repeat=2), 2) if a[0] != b[0] and a[1] != b[1])
    assert (k3k3.n, k3k3.m) == (9, expected) == (9, 18)


def test_product_projections_are_homs():
    g, h = cycle(5), complete(3)
    p = tensor_product(g, h)
    pg, ph = product_projections(g, h)
    assert verify_hom(p, g, pg) and verify_hom(p, h, ph)


def test_apex_extend():
    assert apex_extend(complete(4)) == complete(5)
    w5 = apex_extend(cycle(5))
    assert w5.degree(5) == 5 and chromatic_number(w5) == 4
    assert apex_extend(empty_graph(1)) == complete(2)


def test_pendant_triangles():
    c = pendant_triangles(cycle(5))
    assert (c.n, c.m) == (10, 15)
    assert all(edges_in_triangles(c))
    k = pendant_triangles(complete(3))
    # each original edge now lies in its own triangle and in the K3
    for u, v in complete(3).edges:
        assert bin(k.adj[u] & k.adj[v]).count("1") >= 2
    assert clique_number(k) == 3
    g = pendant_triangles(grotzsch())
    assert chromatic_number(g, 64) == 4 and clique_number(g) == 3


def test_h_join_examples():
    k2 = OrderedPattern(complete(2))
    a = HPartiteGraph(empty_graph(1), k2, (0,))
    b = HPartiteGraph(empty_graph(1), k2, (1,))
    assert h_join(a, b).graph.m == 1
    empty = HPartiteGraph(empty_graph(0), k2, ())
    assert h_join(a, empty).graph == a.graph
    k3 = OrderedPattern(complete(3))
    j = h_join(prefix_copy(k3, 2), prefix_copy(k3, 3))
    cross = [(u, v) for u, v in j.graph.edges if u < 2 <= v]
    assert sorted(cross) == sorted((x, 2 + y) for x in range(2) for y in range(3) if x != y)


def test_h_join_pattern_mismatch():
    a = prefix_copy(OrderedPattern(complete(2)), 1)
    b = prefix_copy(OrderedPattern(complete(3)), 1)
    with pytest.raises(GraphInputError):
        h_join(a, b)


def test_hpartite_rejects_bad_coloring():
    with pytest.raises(GraphInputError):
        HPartiteGraph(complete(2), OrderedPattern(complete(2)), (0, 0))
    with pytest.raises(GraphInputError):
        HPartiteGraph(complete(2), OrderedPattern(complete(2)), (0,))


def test_prefix_bounds():
    p = OrderedPattern(cycle(5))
    assert p.prefix(4) == path(4)
    with pytest.raises(GraphInputError):
        p.prefix(6)


def test_triangle_strip_pad_keeps_structure():
    g = triangle_strip_pad(complete(4), 20)
    assert g.n == 24 and is_connected(g)
    assert all(edges_in_triangles(g))
    assert clique_number(g) == 4 and chromatic_number(g, 64) == 4
    with pytest.raises(GraphInputError):
        triangle_strip_pad(empty_graph(3), 2)


def test_disjoint_triangle_pad_is_disconnected():
    g = disjoint_triangle_pad(complete(4), 7)
    assert g.n == 11 and not is_connected(g)
    assert all(edges_in_triangles(g))


def test_mapping_from():
    assert mapping_from({0: 1, 1: 0}, 2) == [1, 0]
    with pytest.raises(GraphInputError):
        mapping_from({0: 1}, 2)
    with pytest.raises(GraphInputError):
        mapping_from([0], 2)
