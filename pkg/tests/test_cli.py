"""CLI contract: golden JSON per subcommand, exit codes, file formats.

Set HOMLAB_REGEN_GOLDEN=1 to rewrite tests/golden after an intended change.
"""
import json
import os
from pathlib import Path

import pytest

from homlab import cli, io
from homlab.catalog import complete, cycle, grotzsch, parse_graph_name
from homlab.errors import GraphInputError
from homlab.graph import HPartiteGraph, OrderedPattern

HERE = Path(__file__).parent
DATA = HERE / "data"
GOLDEN = HERE / "golden"
REGEN = os.environ.get("HOMLAB_REGEN_GOLDEN") == "1"

C7, C5, K3 = (str(DATA / f) for f in ("c7.graph", "c5.graph", "k3.graph"))

CASES = {
    "gen_tower": ["gen", "tower", "--base", "K3", "--height", "3"],
    "gen_tree_of_cliques": ["gen", "tree-of-cliques", "--k", "3"],
    "gen_half_graph": ["gen", "half-graph", "--N", "4"],
    "gen_half_graph_pattern": ["gen", "half-graph", "--N", "2", "--pattern", "K3"],
    "gen_g2": ["gen", "g2", "--width", "2", "--fanout", "2"],
    "gen_g_eta": ["gen", "g-eta", "--root", "K1", "--level1", "C5", "--level2", "K2"],
    "gen_binary_tree": ["gen", "binary-tree", "--depth", "2", "--pattern", "K3"],
    "gen_sum": ["gen", "sum", "K3", "C5"],
    "gen_product": ["gen", "product", "K2", "C5"],
    "gen_apex": ["gen", "apex", "C5"],
    "gen_pendant": ["gen", "pendant", "K3"],
    "gen_complete": ["gen", "complete", "--n", "4"],
    "gen_catalog": ["gen", "catalog", "Petersen"],
    "gen_rigid_seed": ["gen", "rigid-seed", "--n", "5"],
    "hom_yes": ["hom", C7, C5],
    "hom_no": ["hom", "K3", "Grotzsch"],
    "compare": ["compare", C5, K3],
    "indep": ["indep", "K3", "Grotzsch"],
    "indep_no": ["indep", "C5", "K3"],
    "rigid": ["rigid", "C5"],
    "core": ["core", "C6"],
    "rank": ["rank", "Sum(K4,C5)"],
    "rank_pattern": ["rank", "C7", "--pattern", "C5"],
    "certify": ["certify", "Grotzsch", "K3"],
    "certify_none": ["certify", "C7", "C5"],
    "info": ["info", "Petersen"],
    "catalog_list": ["catalog", "list"],
    "catalog_get": ["catalog", "get", "Kneser(5,2)"],
    "catalog_verify": ["catalog", "verify"],
    "lab_partner": ["lab", "partner", "Grotzsch"],
    "lab_extend": ["lab", "extend", "K3", "Grotzsch"],
    "lab_gap": ["lab", "gap", "C5", "K4"],
    "lab_low": ["lab", "low", "C5", "--alpha", "5"],
    "lab_partner_bipartite": ["lab", "partner", "C4"],
    "bench_tower": ["bench", "--suite", "tower", "--strategies", "plain,clique"],
    "undecided": ["hom", "Mycielski(Grotzsch)", "K4", "--budget-ms", "1"],
}


def run(argv, capsys):
    code = cli.run_command(argv)
    cap = capsys.readouterr()
    return code, cap.out, cap.err


def _stable(text: str) -> str:
    # input paths differ between checkouts
    return text.replace(str(DATA), "<data>")


@pytest.mark.parametrize("name", sorted(CASES))
def test_golden(name, capsys):
    code, out, _ = run(CASES[name] + ["--json"], capsys)
    got = {"exit": code, "stdout": json.loads(out) if out.strip() else None}
    path = GOLDEN / f"{name}.json"
    text = _stable(json.dumps(got, sort_keys=True, indent=1)) + "\n"
    if REGEN:
        path.write_text(text)
    assert text == path.read_text()


@pytest.mark.parametrize("name", ["gen_tower", "hom_yes", "lab_partner", "catalog_verify", "bench_tower"])
def test_json_is_deterministic(name, capsys):
    first = run(CASES[name] + ["--json"], capsys)[1]
    second = run(CASES[name] + ["--json", "--threads", "3"], capsys)[1]
    assert first == second


def test_exit_codes(capsys):
    assert run(["hom", C7, C5], capsys)[0] == 0
    code, out, _ = run(["hom", "K3", "Grotzsch"], capsys)
    assert code == 1 and "oddGirth" in out
    assert run(["hom", "Mycielski(Grotzsch)", "K4", "--budget-ms", "1"], capsys)[0] == 2
    assert run(["hom", "K3"], capsys)[0] == 3
    assert run([], capsys)[0] == 3
    assert run(["hom", "NoSuchGraph", "K3"], capsys)[0] == 3
    assert run(["lab", "partner", "C4"], capsys)[0] == 3


def test_gen_tower_text(capsys):
    code, out, _ = run(["gen", "tower", "--base", "K3", "--height", "3"], capsys)
    assert code == 0
    assert io.parse_graph_text(out).n == 7


def test_loop_rejected_with_line_number(capsys):
    code, _, err = run(["info", str(DATA / "loop.graph")], capsys)
    assert code == 3 and "loop.graph:2" in err


def test_duplicate_edge_warns(capsys):
    code, _, err = run(["info", str(DATA / "dup.graph")], capsys)
    assert code == 0 and err.startswith("warning:")


def test_parse_examples():
    assert io.parse_graph_text("p graph 3 3\ne 0 1\ne 1 2\ne 0 2\n") == complete(3)
    with pytest.warns(io.DuplicateEdgeWarning):
        g = io.parse_graph_text("p graph 2 2\ne 0 1\ne 1 0\n")
    assert g.m == 1
    for bad in ("p graph 2 1\ne 0 0\n", "p graph 2 1\ne 0 5\n", "x\n", "p graph 3 2\ne 0 1\n", "e 0 1\n"):
        with pytest.raises(GraphInputError):
            io.parse_graph_text(bad)


@pytest.mark.parametrize("name", ["K4", "C7", "Petersen", "Grotzsch", "Sum(C5,K3)"])
def test_write_read_roundtrip(name, tmp_path):
    g = parse_graph_name(name)
    path = tmp_path / "g.graph"
    io.write_graph(g, path)
    text = path.read_text()
    assert io.read_graph(path) == g
    assert io.format_graph(io.read_graph(path)) == text
    assert io.load_graph(str(path)) == g


def test_labels_sidecar(tmp_path):
    from homlab.constructions import tree_of_cliques

    g = tree_of_cliques(3).graph
    path = tmp_path / "t.graph"
    io.write_graph(g, path)
    assert io.read_graph(path).labels == g.labels


def test_hpartite_json_roundtrip():
    hp = HPartiteGraph(cycle(6), OrderedPattern(complete(2)), tuple(i % 2 for i in range(6)))
    back = io.hpartite_from_json(io.hpartite_to_json(hp))
    assert back == hp
    with pytest.raises(GraphInputError):
        io.hpartite_from_json('{"graph": {"n": 2, "edges": [[0, 1]]}, "pattern": {"n": 1, "edges": []}, "coloring": [0, 0]}')


def test_dot_output(capsys):
    code, out, _ = run(["gen", "complete", "--n", "3", "--dot"], capsys)
    assert code == 0 and out.startswith("graph") and out.count("--") == 3
    assert io.to_dot(grotzsch()).count("--") == 20


def test_out_file_and_catalog_save(tmp_path, capsys):
    target = tmp_path / "tower.graph"
    assert run(["gen", "tower", "--base", "C5", "--height", "4", "-o", str(target)], capsys)[0] == 0
    assert io.read_graph(target).n == 15
    assert run(["catalog", "save", str(tmp_path / "cat")], capsys)[0] == 0
    sidecar = json.loads((tmp_path / "cat" / "Grotzsch.json").read_text())
    assert sidecar["properties"]["chromatic"] == 4
    assert io.read_graph(tmp_path / "cat" / "Grotzsch.graph") == grotzsch()


def test_bench_csv(capsys):
    code, out, _ = run(["bench", "--suite", "tower", "--strategies", "plain,clique"], capsys)
    assert code == 0
    lines = out.strip().splitlines()
    assert lines[0] == "instance,strategy,verdict,nodes,millis"
    rows = [line.split(",") for line in lines[1:]]
    by_inst: dict = {}
    for inst, strat, verdict, nodes, _ in rows:
        by_inst.setdefault(inst, {})[strat] = (verdict, int(nodes))
    for inst, d in by_inst.items():
        assert d["plain"][0] == d["clique"][0], inst
    assert any(d["clique"] == ("no", 0) for d in by_inst.values())


def test_rigid_demo_command(capsys):
    code, out, _ = run(["lab", "rigid-demo", "--json"], capsys)
    doc = json.loads(out)
    assert code == 0 and doc["rigid"] and all(doc["structural"].values())
