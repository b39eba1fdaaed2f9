"""Compiled vs pure-Python search kernel.

Both kernels run the same instances with identical domains; the script
fails if solutions or node counts ever differ, then prints wall times and
the speedup.  Usage::

    python benchmarks/bench_kernels.py [--repeat 3] [--quick]
"""
from __future__ import annotations

import argparse
import sys
import time

from homlab import kernel
from homlab.catalog import parse_graph_name
from homlab.constructions import tree_of_cliques
from homlab.solver import initial_domains

# (label, source, target, solution limit, arc consistency, node limit)
# tree_of_cliques(5) -> K4 is a pigeonhole instance that plain search never
# finishes, so it runs against a fixed node budget.
INSTANCES = [
    ("C11 -> Petersen, 20000 sols", "C11", "Petersen", 20000, True, 0),
    ("Grotzsch -> K4, all", "Grotzsch", "K4", 0, True, 0),
    ("Petersen -> K3, all", "Petersen", "K3", 0, False, 0),
    ("Chvatal -> K3", "Chvatal", "K3", 1, True, 0),
    ("Mycielski(Grotzsch) -> K4", "Mycielski(Grotzsch)", "K4", 1, True, 0),
    ("Kneser(7,3) -> C7 + K3", "Kneser(7,3)", "Sum(C7,K3)", 1, False, 0),
    ("tree_of_cliques(5) -> K4", None, "K4", 1, False, 200_000),
]
QUICK = {"Petersen -> K3, all", "Chvatal -> K3", "Kneser(7,3) -> C7 + K3"}


def _graph(name):
    return tree_of_cliques(5).graph if name is None else parse_graph_name(name)


def run(repeat: int, quick: bool) -> list[tuple]:
    if kernel.compiled_search is None:
        raise SystemExit("compiled kernel not built; run `pip install --no-build-isolation -e .`")
    rows = []
    for label, src, tgt, limit, ac, node_limit in INSTANCES:
        if quick and label not in QUICK:
            continue
        g, h = _graph(src), _graph(tgt)
        doms = initial_domains(g, h)
        times = {}
        results = {}
        for name, fn in (("python", kernel.python_search), ("compiled", kernel.compiled_search)):
            best = float("inf")
            for _ in range(repeat):
                t0 = time.perf_counter()
                out = fn(g.nbrs, h.adj, list(doms), True, ac, limit, node_limit, 0.0)
                best = min(best, time.perf_counter() - t0)
            times[name] = best
            results[name] = out
        py, cc = results["python"], results["compiled"]
        if py != cc:
            raise SystemExit(f"kernel divergence on {label}: python {py[1:]} vs compiled {cc[1:]}")
        rows.append((label, len(py[0]), py[1], times["python"], times["compiled"]))
    return rows


def main(argv=None) -> int:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=3)
    ap.add_argument("--quick", action="store_true", help="small subset for smoke runs")
    args = ap.parse_args(argv)
    rows = run(args.repeat, args.quick)
    print(f"{'instance':32} {'sols':>6} {'nodes':>9} {'python ms':>10} {'compiled ms':>12} {'speedup':>8}")
    for label, sols, nodes, tp, tc in rows:
        print(f"{label:32} {sols:6d} {nodes:9d} {tp * 1e3:10.2f} {tc * 1e3:12.2f} {tp / max(tc, 1e-9):7.1f}x")
    return 0


if __name__ == "__main__":
    sys.exit(main())
