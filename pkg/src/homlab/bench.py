"""Pruning benchmark: the same decision under different obstruction checks.

A strategy is plain search, optionally preceded by one obstruction check.
Every strategy must reach the same verdict on every instance.  A mismatch
means one of the checks is unsound, and it is raised as a hard error.
"""
from __future__ import annotations

import csv
import io
import itertools
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

from . import catalog
from .constructions import complete_graph, tree_of_cliques
from .errors import HomlabError
from .graph import Graph, OrderedPattern
from .invariants import clique_number
from .obstructions import certify
from .solver import run_search

STRATEGIES = ("plain", "oddgirth", "chromatic", "clique", "rank")
CSV_FIELDS = ("instance", "strategy", "verdict", "nodes", "millis")


class BenchDivergence(HomlabError):
    """Two strategies disagreed on an instance: some check is unsound."""


@dataclass(frozen=True)
class Instance:
    name: str
    source: Graph
    target: Graph

    def pattern(self) -> OrderedPattern:
        # a clique one larger than both clique numbers maps into neither
        # graph, which is what makes a rank gap a valid certificate
        p = max(clique_number(self.source), clique_number(self.target)) + 1
        return OrderedPattern(complete_graph(p))


@dataclass
class Row:
    instance: str
    strategy: str
    verdict: str
    nodes: int
    millis: float

    def as_csv(self) -> dict:
        return {
            "instance": self.instance,
            "strategy": self.strategy,
            "verdict": self.verdict,
            "nodes": self.nodes,
            "millis": f"{self.millis:.3f}",
        }


def _tower_suite() -> list[Instance]:
    out = []
    towers = {k: tree_of_cliques(k).graph for k in range(1, 5)}
    for a, b in itertools.product(towers, repeat=2):
        if a != b:
            out.append(Instance(f"T{a}->T{b}", towers[a], towers[b]))
    for k, t in towers.items():
        for j in range(2, 5):
            out.append(Instance(f"T{k}->K{j}", t, complete_graph(j)))
            out.append(Instance(f"K{j}->T{k}", complete_graph(j), t))
    return out


_CATALOG_NAMES = ("K2", "K3", "K4", "C5", "C7", "W5", "Petersen", "Grotzsch", "Chvatal")


def _catalog_suite() -> list[Instance]:
    graphs = {nm: catalog.parse_graph_name(nm) for nm in _CATALOG_NAMES}
    return [
        Instance(f"{a}->{b}", graphs[a], graphs[b])
        for a, b in itertools.permutations(_CATALOG_NAMES, 2)
    ]


def _mycielski_suite() -> list[Instance]:
    names = ("C5", "Grotzsch", "Mycielski(C7)", "GenMycielski(C7,3)", "Mycielski(Grotzsch)")
    graphs = {nm: catalog.parse_graph_name(nm) for nm in names}
    out = []
    for nm, g in graphs.items():
        for j in (2, 3, 4, 5):
            out.append(Instance(f"{nm}->K{j}", g, complete_graph(j)))
        for other, h in graphs.items():
            if other != nm:
                out.append(Instance(f"{nm}->{other}", g, h))
    return out


SUITES = {
    "tower": _tower_suite,
    "catalog": _catalog_suite,
    "mycielski": _mycielski_suite,
}


def suite(name: str) -> list[Instance]:
    if name == "all":
        return [i for key in SUITES for i in SUITES[key]()]
    if name not in SUITES:
        raise HomlabError(f"unknown bench suite {name!r}; choose from {sorted(SUITES)} or all")
    return SUITES[name]()


def run_strategy(inst: Instance, strategy: str, budget_ms: float | None = 60_000) -> Row:
    t0 = time.perf_counter()
    if strategy != "plain":
        pattern = inst.pattern() if strategy == "rank" else None
        cert = certify(inst.source, inst.target, pattern, (strategy,), chromatic_cutoff=64).certificate
        if cert is not None:
            return Row(inst.name, strategy, "no", 0, (time.perf_counter() - t0) * 1000)
    out = run_search(inst.source, inst.target, limit=1, ac=True, budget_ms=budget_ms)
    if out.solutions:
        verdict = "yes"
    elif out.budget_exhausted:
        verdict = "undecided"
    else:
        verdict = "no"
    return Row(inst.name, strategy, verdict, out.nodes, (time.perf_counter() - t0) * 1000)


def run_bench(
    suite_name: str,
    strategies=STRATEGIES,
    *,
    budget_ms: float | None = 60_000,
    threads: int = 1,
) -> list[Row]:
    """Rows in (instance, strategy) order; raises :class:`BenchDivergence`
    when two decided verdicts for one instance differ."""
    for s in strategies:
        if s not in STRATEGIES:
            raise HomlabError(f"unknown strategy {s!r}; choose from {STRATEGIES}")
    instances = suite(suite_name)

    def one(inst: Instance) -> list[Row]:
        return [run_strategy(inst, s, budget_ms) for s in strategies]

    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            groups = list(pool.map(one, instances))
    else:
        groups = [one(i) for i in instances]
    rows = []
    for group in groups:
        decided = {r.verdict for r in group if r.verdict != "undecided"}
        if len(decided) > 1:
            detail = ", ".join(f"{r.strategy}={r.verdict}" for r in group)
            raise BenchDivergence(f"verdicts diverge on {group[0].instance}: {detail}")
        rows.extend(group)
    return rows


def rows_to_csv(rows: list[Row], with_timing: bool = True) -> str:
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=CSV_FIELDS, lineterminator="\n")
    w.writeheader()
    for r in rows:
        d = r.as_csv()
        if not with_timing:
            d["millis"] = ""
        w.writerow(d)
    return buf.getvalue()
