import itertools
import random

import pytest

import oracles
from homlab import kernel
from homlab.catalog import catalog_get, chvatal, complete, cycle, grotzsch, petersen
from homlab.errors import GraphInputError, Undecided
from homlab.graph import Graph, disjoint_sum
from homlab.invariants import is_isomorphic
from homlab.solver import (
    EQUIVALENT,
    INDEPENDENT,
    STRICTLY_GREATER,
    STRICTLY_LESS,
    classify,
    compare,
    core,
    decide_hom,
    enumerate_homs,
    find_core,
    find_hom,
    initial_domains,
    is_independent_set,
    is_rigid,
    run_search,
    verify_hom,
)

BACKENDS = ["python"] + (["compiled"] if kernel.compiled_search is not None else [])


def test_spec_examples():
    assert find_hom(cycle(7), cycle(5)) is not None
    d = decide_hom(cycle(5), cycle(7))
    assert not d.exists and d.certificate.kind == "oddGirth"
    assert find_hom(complete(3), grotzsch()) is None


def test_oracle_agreement_small():
    rng = random.Random(7)
    for _ in range(120):
        g, h = oracles.random_pair(rng)
        w = find_hom(g, h)
        assert (w is not None) == oracles.hom_exists(g, h)
        if w is not None:
            assert verify_hom(g, h, w)


def test_verify_hom_cases():
    assert verify_hom(cycle(5), cycle(5), range(5))
    assert not verify_hom(complete(2), complete(2), [0, 0])
    assert verify_hom(cycle(6), complete(2), [i % 2 for i in range(6)])
    with pytest.raises(GraphInputError):
        verify_hom(complete(2), complete(2), {0: 1})
    with pytest.raises(GraphInputError):
        verify_hom(complete(2), complete(2), [0, 5])


def test_enumeration_examples():
    assert len(enumerate_homs(cycle(5), complete(3)).homs) == 2**5 - 2
    assert len(enumerate_homs(Graph(1, ()), petersen()).homs) == 10
    assert enumerate_homs(complete(3), cycle(5)).homs == []


@pytest.mark.parametrize("seed", range(25))
def test_enumeration_matches_oracle_order(seed):
    rng = random.Random(seed)
    g = oracles.random_graph(rng, rng.randint(1, 5), 0.5)
    h = oracles.random_graph(rng, rng.randint(1, 4), 0.7)
    got = [w.mapping for w in enumerate_homs(g, h).homs]
    assert got == oracles.all_homs(g, h)


def test_enumeration_truncation():
    e = enumerate_homs(cycle(5), complete(3), limit=4)
    assert len(e.homs) == 4 and e.truncated
    assert [w.mapping for w in e.homs] == oracles.all_homs(cycle(5), complete(3))[:4]


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
@pytest.mark.parametrize("seed", range(40))
def test_kernel_parity(seed):
    rng = random.Random(seed)
    g = oracles.random_graph(rng, rng.randint(2, 9), 0.45)
    h = oracles.random_graph(rng, rng.randint(2, 7), 0.6)
    for mrv, ac, limit in itertools.product((True, False), (True, False), (0, 1, 3)):
        a = run_search(g, h, limit=limit, mrv=mrv, ac=ac, backend="python")
        b = run_search(g, h, limit=limit, mrv=mrv, ac=ac, backend="compiled")
        assert (a.solutions, a.nodes, a.status) == (b.solutions, b.nodes, b.status)


@pytest.mark.skipif(len(BACKENDS) < 2, reason="compiled kernel not built")
def test_kernel_parity_wide_target():
    # more than 64 target vertices exercises multi-word bitsets
    h = catalog_get("kneser", 9, 4)
    for g in (cycle(11), h):
        a = run_search(g, h, limit=5, ac=True, backend="python")
        b = run_search(g, h, limit=5, ac=True, backend="compiled")
        assert len(a.solutions) == 5
        assert all(verify_hom(g, h, s) for s in a.solutions)
        assert (a.solutions, a.nodes) == (b.solutions, b.nodes)


@pytest.mark.parametrize("backend", BACKENDS)
def test_budget_is_undecided_not_no(backend):
    hard = catalog_get("mycielski", grotzsch())
    with pytest.raises(Undecided):
        decide_hom(hard, complete(4), precheck=(), node_limit=50, backend=backend)
    out = run_search(hard, complete(4), node_limit=50, backend=backend)
    assert out.budget_exhausted and not out.solutions


@pytest.mark.parametrize("seed", range(30))
def test_domain_filters_are_sound(seed):
    rng = random.Random(500 + seed)
    g = oracles.random_graph(rng, rng.randint(2, 6), 0.55)
    h = oracles.random_graph(rng, rng.randint(2, 5), 0.6)
    truth = oracles.all_homs(g, h)
    doms = initial_domains(g, h, local_filters=True, block_filter=True, chromatic_cutoff=16)
    allowed = [f for f in truth if all(doms[v] >> f[v] & 1 for v in range(g.n))]
    assert allowed == truth
    out = run_search(g, h, limit=0, ac=True, local_filters=True, block_filter=True)
    assert sorted(out.solutions) == truth


def test_block_filter_on_glued_triangle_pieces():
    # a K4 and a triangle-rich 4-chromatic piece: both blocks keep only themselves
    g = disjoint_sum(complete(4), catalog_get("wheel", 5))
    doms = initial_domains(g, g, block_filter=True)
    k4 = sum(1 << i for i in range(4))
    assert all(doms[v] & ~k4 == 0 for v in range(4))


def test_rigidity_examples():
    assert is_rigid(Graph(1, ())).rigid
    r = is_rigid(cycle(5))
    assert not r.rigid and verify_hom(cycle(5), cycle(5), r.witness)


@pytest.mark.parametrize("seed", range(25))
def test_rigidity_against_oracle(seed):
    rng = random.Random(900 + seed)
    g = oracles.random_graph(rng, rng.randint(1, 6), 0.5)
    ident = tuple(range(g.n))
    expected = oracles.all_homs(g, g) == [ident]
    res = is_rigid(g)
    assert res.rigid == expected
    if res.rigid:
        assert core(g) == g


def test_core_examples():
    assert core(cycle(6)) == complete(2)
    assert core(disjoint_sum(complete(4), complete(3))) == complete(4)
    res = find_core(petersen())
    assert res.core.n == 10


def _core_size_oracle(g):
    for k in range(1, g.n + 1):
        for sub in itertools.combinations(range(g.n), k):
            if oracles.hom_exists(g, g.induced(list(sub))):
                return k
    return g.n


@pytest.mark.parametrize("seed", range(20))
def test_core_against_oracle(seed):
    rng = random.Random(40 + seed)
    g = oracles.random_graph(rng, rng.randint(1, 6), 0.45)
    res = find_core(g)
    assert res.core.n == _core_size_oracle(g)
    assert verify_hom(g, res.core, res.retraction)
    assert res.minimality_checked


@pytest.mark.parametrize("name", ["K3", "C5", "C6", "W5", "Petersen", "Grotzsch", "Chvatal"])
def test_core_idempotent_and_equivalent(name):
    from homlab.catalog import parse_graph_name

    g = parse_graph_name(name)
    c = find_core(g)
    assert verify_hom(g, c.core, c.retraction)
    assert find_hom(c.core, g) is not None
    assert is_isomorphic(core(c.core), c.core, cutoff=12)


def test_compare_examples():
    assert compare(complete(3), grotzsch()).relation == INDEPENDENT
    assert compare(cycle(5), complete(3)).relation == STRICTLY_LESS
    assert compare(cycle(5), disjoint_sum(cycle(5), cycle(5))).relation == EQUIVALENT
    assert compare(complete(3), cycle(5)).relation == STRICTLY_GREATER
    assert classify(False, False) == INDEPENDENT


def test_compare_undecided_carries_forward():
    hard = catalog_get("mycielski", grotzsch())
    with pytest.raises(Undecided) as info:
        compare(complete(4), hard, precheck=("clique",), node_limit=50)
    assert info.value.decided["forward"].certificate.kind == "clique"


def test_independent_set_examples():
    assert is_independent_set([complete(3), grotzsch()]).independent
    res = is_independent_set([cycle(5), complete(3)])
    assert not res.independent and res.pair == (0, 1)
    assert is_independent_set([chvatal()]).independent


@pytest.mark.parametrize("seed", range(20))
def test_transitivity(seed):
    rng = random.Random(3000 + seed)
    g, h, k = (oracles.random_graph(rng, rng.randint(2, 6), 0.6) for _ in range(3))
    f1, f2 = find_hom(g, h), find_hom(h, k)
    if f1 is not None and f2 is not None:
        assert verify_hom(g, k, [f2[f1[v]] for v in range(g.n)])


def test_pure_python_fallback_selected_by_env():
    import os
    import subprocess
    import sys

    code = "from homlab import BACKEND, find_hom; from homlab.catalog import cycle; print(BACKEND, find_hom(cycle(7), cycle(5)) is not None)"
    env = dict(os.environ, HOMLAB_PURE_PYTHON="1")
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["python", "True"]
