import random

import networkx as nx
import pytest

import oracles
from homlab.catalog import complete, cycle, grotzsch, path, petersen
from homlab.errors import ExactChromaticUnavailable, SizeCutoffError
from homlab.graph import Graph, disjoint_sum, tensor_product
from homlab.invariants import (
    chromatic_number,
    clique_number,
    components,
    dsatur_coloring,
    find_isomorphism,
    graph_invariants,
    has_nontrivial_automorphism,
    is_isomorphic,
    k_coloring,
    local_clique_numbers,
    odd_girth,
    odd_walk_lengths,
    triangle_blocks,
)


def test_report_examples():
    r = graph_invariants(cycle(6))
    assert r.bipartite and r.odd_girth is None and r.chromatic == 2
    assert r.to_dict()["odd_girth"] == "none"
    g = graph_invariants(grotzsch())
    assert (g.chromatic, g.odd_girth, g.clique_number) == (4, 5, 2)
    p = graph_invariants(petersen())
    assert (p.chromatic, p.odd_girth) == (3, 5)


def test_grotzsch_not_3_colorable_but_4():
    assert k_coloring(grotzsch(), 3) is None
    col = k_coloring(grotzsch(), 4)
    assert all(col[u] != col[v] for u, v in grotzsch().edges)


def test_chromatic_cutoff_is_explicit():
    big = cycle(21)
    with pytest.raises(ExactChromaticUnavailable):
        chromatic_number(big)
    assert chromatic_number(big, cutoff=32) == 3


@pytest.mark.parametrize("seed", range(60))
def test_against_oracles(seed):
    rng = random.Random(seed)
    g = oracles.random_graph(rng, rng.randint(1, 7), rng.choice((0.2, 0.4, 0.6, 0.8)))
    assert chromatic_number(g) == oracles.chromatic(g)
    assert clique_number(g) == oracles.clique(g)
    assert odd_girth(g) == oracles.odd_girth(g)
    col = dsatur_coloring(g)
    assert all(col[u] != col[v] for u, v in g.edges)


@pytest.mark.parametrize("seed", range(30))
def test_local_numbers_bound_global(seed):
    rng = random.Random(1000 + seed)
    g = oracles.random_graph(rng, 8, 0.5)
    lc = local_clique_numbers(g)
    ow = odd_walk_lengths(g)
    assert max(lc, default=0) == clique_number(g)
    finite = [x for x in ow if x is not None]
    assert (min(finite) if finite else None) == odd_girth(g)


def test_components():
    g = disjoint_sum(cycle(3), path(2), Graph(1, ()))
    assert sorted(len(c) for c in components(g)) == [1, 2, 3]


@pytest.mark.parametrize("seed", range(40))
def test_isomorphism_against_networkx(seed):
    rng = random.Random(seed)
    g = oracles.random_graph(rng, 7, 0.45)
    perm = list(range(7))
    rng.shuffle(perm)
    h = g.relabeled(perm) if seed % 2 else oracles.random_graph(rng, 7, 0.45)
    a = nx.Graph(g.edges)
    a.add_nodes_from(range(7))
    b = nx.Graph(h.edges)
    b.add_nodes_from(range(7))
    assert is_isomorphic(g, h) == nx.is_isomorphic(a, b)
    f = find_isomorphism(g, h)
    if f is not None:
        assert sorted(f) == list(range(7))
        assert sorted(tuple(sorted((f[u], f[v]))) for u, v in g.edges) == list(h.edges)


def test_isomorphism_examples_and_cutoff():
    assert is_isomorphic(cycle(5), cycle(5).relabeled([2, 4, 1, 3, 0]))
    assert not is_isomorphic(cycle(5), path(5))
    assert is_isomorphic(tensor_product(cycle(5), complete(2)), cycle(10))
    with pytest.raises(SizeCutoffError):
        is_isomorphic(cycle(13), cycle(13))


def test_automorphisms():
    assert has_nontrivial_automorphism(cycle(5))
    assert not has_nontrivial_automorphism(Graph(1, ()))
    # the smallest asymmetric trees have 7 vertices
    tree = Graph(7, ((0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 6)))
    assert not has_nontrivial_automorphism(tree)


def test_triangle_blocks():
    g = disjoint_sum(complete(3), cycle(5), complete(4))
    blocks = triangle_blocks(g)
    assert blocks == [[0, 1, 2], [8, 9, 10, 11]]
    assert triangle_blocks(cycle(7)) == []
