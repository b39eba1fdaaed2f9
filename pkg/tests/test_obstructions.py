import random

import pytest

import oracles
from homlab.catalog import complete, cycle, grotzsch, path
from homlab.constructions import tree_of_cliques
from homlab.errors import GraphInputError
from homlab.graph import OrderedPattern
from homlab.invariants import clique_number
from homlab.obstructions import (
    NoHomCertificate,
    certify,
    clique_rank,
    h_rank,
    hom_tree_level,
    no_hom_certificate,
    push_forward,
)
from homlab.solver import find_hom


def test_clique_rank_examples():
    for n in range(1, 6):
        assert clique_rank(complete(n)).value == n
    assert clique_rank(cycle(5)).value == 2
    assert clique_rank(tree_of_cliques(4).graph).value == 4 == oracles.clique(tree_of_cliques(4).graph)


def test_h_rank_examples():
    assert h_rank(cycle(5), OrderedPattern(complete(5))).value == 2
    r = h_rank(complete(3), OrderedPattern(cycle(5)), cutoff=10)
    assert r.unbounded
    from homlab.solver import verify_hom

    assert verify_hom(cycle(5), complete(3), r.witness)
    assert h_rank(cycle(7), OrderedPattern(cycle(5))).value == 4


def test_h_rank_memo_agrees():
    for g in (cycle(7), grotzsch(), tree_of_cliques(3).graph):
        for p in (cycle(5), complete(4), path(6)):
            a = h_rank(g, OrderedPattern(p))
            b = h_rank(g, OrderedPattern(p), memo=True)
            assert (a.value, a.unbounded) == (b.value, b.unbounded)


def test_h_rank_cutoff_marks_truncation():
    r = h_rank(complete(4), OrderedPattern(complete(5)), cutoff=2)
    assert r.value == 2 and r.truncated


def test_certificate_examples():
    assert no_hom_certificate(complete(3), cycle(5)).kind == "oddGirth"
    assert no_hom_certificate(grotzsch(), complete(3)).kind == "chromatic"
    c = no_hom_certificate(complete(5), complete(4))
    assert c.kind == "clique" and c.data == {"source": 5, "target": 4}


def test_certificate_json_roundtrip_and_recheck():
    c = no_hom_certificate(grotzsch(), complete(3))
    back = NoHomCertificate.from_dict(__import__("json").loads(c.to_json()))
    assert back == c
    assert back.recheck(grotzsch(), complete(3))
    assert not back.recheck(complete(3), grotzsch())
    with pytest.raises(GraphInputError):
        NoHomCertificate("bogus")


def test_rank_certificate():
    # C5 and C7 against the pattern C5: C5 maps into itself, so use K4 as the pattern
    pat = OrderedPattern(complete(4))
    cert = certify(complete(3), cycle(5), pat, checks=("rank",)).certificate
    assert cert.kind == "rank" and cert.data["source"] == 3 and cert.data["target"] == 2
    assert cert.recheck(complete(3), cycle(5), pat)
    # when the pattern maps into a graph the rank check stays silent
    assert certify(complete(3), cycle(5), OrderedPattern(complete(2)), checks=("rank",)).certificate is None


def test_chromatic_unavailable_is_reported():
    big = cycle(31)
    res = certify(big, complete(2), checks=("chromatic",), chromatic_cutoff=16)
    assert res.certificate is None and res.unavailable == ["chromatic"]


def test_certificate_soundness():
    rng = random.Random(11)
    certified = 0
    while certified < 100:
        g, h = oracles.random_pair(rng)
        c = no_hom_certificate(g, h, OrderedPattern(complete(4)))
        if c is None:
            continue
        certified += 1
        assert not oracles.hom_exists(g, h), (g, h, c)


@pytest.mark.parametrize("seed", range(15))
def test_push_forward_preserves_depth(seed):
    rng = random.Random(seed)
    g = oracles.random_graph(rng, 5, 0.5)
    h = oracles.random_graph(rng, 5, 0.7)
    f = find_hom(g, h)
    if f is None:
        return
    pat = OrderedPattern(path(4))
    target_level = {d: set(hom_tree_level(h, pat, d)) for d in range(5)}
    for d in range(5):
        for node in hom_tree_level(g, pat, d):
            assert push_forward(f.mapping, node) in target_level[d]


def test_clique_rank_equals_omega_small():
    rng = random.Random(2)
    for _ in range(40):
        g = oracles.random_graph(rng, rng.randint(1, 12), 0.5)
        assert clique_rank(g).value == clique_number(g)


def test_monotonicity_along_witnesses():
    rng = random.Random(77)
    patterns = [OrderedPattern(p) for p in (complete(3), cycle(5), path(3), complete(4))]
    seen = 0
    while seen < 100:
        g, h = oracles.random_pair(rng)
        if find_hom(g, h) is None:
            continue
        seen += 1
        og_g, og_h = oracles.odd_girth(g), oracles.odd_girth(h)
        if og_g is not None:
            assert og_h is not None and og_h <= og_g
        assert oracles.chromatic(g) <= oracles.chromatic(h)
        assert oracles.clique(g) <= oracles.clique(h)
        assert clique_rank(g).value <= clique_rank(h).value
        for p in patterns:
            if oracles.hom_exists(p.graph, g) or oracles.hom_exists(p.graph, h):
                continue
            assert h_rank(g, p).value <= h_rank(h, p).value
