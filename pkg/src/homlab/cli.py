"""``homlab`` command line.

Exit codes: 0 affirmative or success, 1 negative answer, 2 undecided within
the budget, 3 bad input.  With ``--json`` stdout carries one JSON document
whose content depends only on argv, input files and ``--seed``.
"""
from __future__ import annotations

import argparse
import json
import sys
import warnings

from . import bench, catalog, io, lab
from .constructions import (
    BinaryTreeSpec,
    binary_tree_graph,
    complete_graph,
    g2_graph,
    g_eta,
    half_graph_blowup,
    rigid_relation_seed,
    sandwich_rigid,
    tower,
    tree_of_cliques,
)
from .errors import HomlabError, SizeCutoffError, Undecided
from .graph import (
    Graph,
    HPartiteGraph,
    OrderedPattern,
    apex_extend,
    disjoint_sum,
    pendant_triangles,
    tensor_product,
)
from .invariants import graph_invariants
from .obstructions import clique_rank, h_rank, no_hom_certificate
from .solver import (
    compare,
    decide_hom,
    find_core,
    is_independent_set,
    is_rigid,
)

EXIT_OK, EXIT_NO, EXIT_UNDECIDED, EXIT_INPUT = 0, 1, 2, 3


class _Out:
    def __init__(self, args):
        self.json = args.json
        self.dot = getattr(args, "dot", False)

    def emit(self, doc: dict, text: str) -> None:
        if self.json:
            sys.stdout.write(json.dumps(doc, sort_keys=True) + "\n")
        else:
            sys.stdout.write(text if text.endswith("\n") else text + "\n")

    def graph(self, g: Graph, out_path: str | None = None, extra: dict | None = None) -> None:
        if out_path:
            io.write_graph(g, out_path)
        doc = {"graph": io.graph_to_dict(g), "labels": list(g.labels) if g.labels else None}
        doc.update(extra or {})
        if self.dot and not self.json:
            sys.stdout.write(io.to_dot(g))
        elif not out_path or self.json:
            self.emit(doc, io.format_graph(g))


def _budget(args):
    return args.budget_ms if args.budget_ms > 0 else None


# --- gen -------------------------------------------------------------------------


def _gen(args, out: _Out) -> int:
    kind = args.kind
    p = args.param
    load = io.load_graph
    extra = {}
    if kind == "tower":
        t = tower(OrderedPattern(load(args.base)), args.height)
        g = t.graph
    elif kind == "tree-of-cliques":
        g = tree_of_cliques(args.k).graph
    elif kind == "half-graph":
        if args.pattern:
            hp = half_graph_blowup(args.N, OrderedPattern(load(args.pattern)))
            return _emit_hpartite(hp, args, out)
        g = half_graph_blowup(args.N)
    elif kind == "g2":
        g = g2_graph(args.width, args.fanout)
    elif kind == "g-eta":
        blocks = {"r": load(args.root)}
        level1, level2 = load(args.level1), load(args.level2)
        g = g_eta(args.width, args.fanout, lambda nm: blocks["r"] if nm == "r" else (level1 if isinstance(nm, int) else level2))
    elif kind == "binary-tree":
        bt = binary_tree_graph(BinaryTreeSpec(args.depth, OrderedPattern(load(args.pattern))))
        g = bt.graph
        extra = {"index": {"".join(map(str, s)) or "e": bt.index[s] for s in bt.nodes}}
    elif kind == "sum":
        g = disjoint_sum(*[load(x) for x in p])
    elif kind == "product":
        g = tensor_product(load(p[0]), load(p[1]))
    elif kind == "apex":
        g = apex_extend(load(p[0]))
    elif kind == "pendant":
        g = pendant_triangles(load(p[0]))
    elif kind == "complete":
        g = complete_graph(args.k)
    elif kind == "catalog":
        g = catalog.parse_graph_name(p[0])
    elif kind == "rigid-trianglefree":
        g = catalog.find_rigid_trianglefree(args.max_n, seed=args.seed, budget_ms=_budget(args) or 60_000)
    elif kind == "rigid-seed":
        rel = rigid_relation_seed(args.n)
        out.emit({"n": rel.n, "arcs": [list(a) for a in rel.arcs]}, "\n".join(f"a {u} {v}" for u, v in rel.arcs))
        return EXIT_OK
    elif kind == "sandwich":
        g0, g1 = load(p[1]), load(p[2])
        gg = load(p[0])
        ident = list(range(gg.n))
        g = sandwich_rigid(gg, g0, g1, ident, ident, budget_ms=_budget(args))
    else:  # pragma: no cover - argparse restricts choices
        raise HomlabError(f"unknown generator {kind}")
    out.graph(g, args.out, extra)
    return EXIT_OK


def _emit_hpartite(hp: HPartiteGraph, args, out: _Out) -> int:
    text = io.hpartite_to_json(hp)
    if args.out:
        with open(args.out, "w") as fh:
            fh.write(text + "\n")
    sys.stdout.write(text + "\n")
    return EXIT_OK


# --- decision commands ----------------------------------------------------------------


def _hom(args, out: _Out) -> int:
    g, h = io.load_graph(args.source), io.load_graph(args.target)
    dec = decide_hom(g, h, budget_ms=_budget(args))
    if dec.exists:
        out.emit(dec.to_dict(), "homomorphism: " + " ".join(map(str, dec.witness.mapping)))
        return EXIT_OK
    c = dec.certificate
    out.emit(dec.to_dict(), f"no homomorphism: {c.kind} {json.dumps(c.data, sort_keys=True)}")
    return EXIT_NO


def _compare(args, out: _Out) -> int:
    g, h = io.load_graph(args.g), io.load_graph(args.h)
    res = compare(g, h, budget_ms=_budget(args))
    out.emit(res.to_dict(), res.relation)
    return EXIT_OK


def _indep(args, out: _Out) -> int:
    graphs = [io.load_graph(x) for x in args.graphs]
    res = is_independent_set(graphs, budget_ms=_budget(args))
    doc = {"independent": res.independent, "pair": list(res.pair) if res.pair else None}
    if res.independent:
        out.emit(doc, "independent")
        return EXIT_OK
    i, j = res.pair
    doc["relation"] = res.results[(i, j)].relation
    out.emit(doc, f"not independent: {args.graphs[i]} and {args.graphs[j]} are {doc['relation']}")
    return EXIT_NO


def _rigid(args, out: _Out) -> int:
    g = io.load_graph(args.graph)
    res = is_rigid(g, budget_ms=_budget(args))
    doc = {"rigid": res.rigid, "nodes": res.nodes}
    if res.rigid:
        out.emit(doc, "rigid")
        return EXIT_OK
    doc["witness"] = list(res.witness.mapping)
    out.emit(doc, "not rigid: " + " ".join(map(str, res.witness.mapping)))
    return EXIT_NO


def _core(args, out: _Out) -> int:
    g = io.load_graph(args.graph)
    res = find_core(g, budget_ms=_budget(args))
    out.graph(res.core, args.out, {"vertices": res.vertices, "retraction": list(res.retraction.mapping)})
    return EXIT_OK


def _rank(args, out: _Out) -> int:
    g = io.load_graph(args.graph)
    if args.pattern:
        rv = h_rank(g, OrderedPattern(io.load_graph(args.pattern)), memo=True)
    else:
        rv = clique_rank(g)
    doc = rv.to_dict()
    out.emit(doc, "unbounded" if rv.unbounded else str(rv.value))
    return EXIT_OK


def _certify(args, out: _Out) -> int:
    g, h = io.load_graph(args.g), io.load_graph(args.h)
    pattern = OrderedPattern(io.load_graph(args.pattern)) if args.pattern else None
    cert = no_hom_certificate(g, h, pattern)
    if cert is None:
        out.emit({"certificate": None}, "no certificate applies")
        return EXIT_NO
    out.emit({"certificate": cert.to_dict()}, f"{cert.kind} {json.dumps(cert.data, sort_keys=True)}")
    return EXIT_OK


# --- catalog ----------------------------------------------------------------------------


def _catalog(args, out: _Out) -> int:
    if args.action == "list":
        entries = catalog.default_entries()
        doc = [{"name": e.name, "n": e.graph.n, "m": e.graph.m, "properties": e.properties} for e in entries]
        text = "\n".join(
            f"{e.name}\tn={e.graph.n}\tchi={e.chromatic}\todd_girth={e.odd_girth}\tomega={e.properties['clique']}"
            for e in entries
        )
        out.emit({"entries": doc}, text)
        return EXIT_OK
    if args.action == "get":
        if not args.name:
            raise HomlabError("catalog get needs a name")
        out.graph(catalog.parse_graph_name(args.name), args.out)
        return EXIT_OK
    if args.action == "save":
        target = args.out or args.name
        if not target:
            raise HomlabError("catalog save needs a directory (positional or --out)")
        paths = io.write_catalog(target)
        out.emit({"written": [str(p) for p in paths]}, f"wrote {len(paths)} graphs to {target}")
        return EXIT_OK
    # verify
    entries = catalog.default_entries()
    if args.name:
        entries = [e for e in entries if e.name == args.name]
        if not entries:
            raise HomlabError(f"no catalog entry named {args.name!r}")
    report = {}
    ok = True
    for e in entries:
        checks = catalog.verify_entry(e)
        good = all(a == b for a, b in checks.values())
        ok &= good
        report[e.name] = {"ok": good, "checks": {k: list(v) for k, v in checks.items()}}
    text = "\n".join(f"{name}\t{'ok' if r['ok'] else 'MISMATCH'}" for name, r in report.items())
    out.emit({"ok": ok, "entries": report}, text)
    return EXIT_OK if ok else EXIT_NO


# --- lab --------------------------------------------------------------------------------


def _lab(args, out: _Out) -> int:
    budget = _budget(args)
    if args.experiment == "partner":
        g = io.load_graph(args.graphs[0])
        rep = lab.partner_search(g, budget_ms=budget, threads=args.threads)
        name = rep.provenance.name if rep.found else None
        out.emit(rep.to_dict(), f"partner: {name} ({rep.partner.n} vertices)" if rep.found else "none-found")
        return EXIT_OK if rep.found else EXIT_NO
    if args.experiment == "extend":
        family = [io.load_graph(x) for x in args.graphs]
        rep = lab.extend_independent(family, args.alpha, budget_ms=budget)
        out.emit(rep.to_dict(), f"extended by {rep.provenance}" if rep.found else "none-found")
        return EXIT_OK if rep.found else EXIT_NO
    if args.experiment == "gap":
        g, h = io.load_graph(args.graphs[0]), io.load_graph(args.graphs[1])
        rep = lab.gap_probe(g, h, budget_ms=budget)
        out.emit(rep.to_dict(), f"witness: G + {rep.candidate}" if rep.found else "none-found")
        return EXIT_OK if rep.found else EXIT_NO
    if args.experiment == "low":
        g = io.load_graph(args.graphs[0])
        res = lab.low_check(g, args.alpha, budget_ms=budget)
        out.emit(res.to_dict(), "low" if res.low else "not low")
        return EXIT_OK if res.low else EXIT_NO
    # rigid-demo
    rep = lab.sandwich_demo(seed=args.seed, budget_ms=budget or 600_000)
    doc = rep.to_dict()
    doc.pop("timings_ms")
    if args.dot and not args.json:
        sys.stdout.write(io.to_dot(rep.graph))
    else:
        text = f"sandwich: {rep.graph.n} vertices, {rep.graph.m} edges, rigid={rep.rigid}"
        out.emit(doc, text)
    if args.out:
        io.write_graph(rep.graph, args.out)
    return EXIT_OK if rep.rigid and all(rep.structural.values()) else EXIT_NO


# --- bench / info ---------------------------------------------------------------------


def _bench(args, out: _Out) -> int:
    strategies = tuple(args.strategies.split(",")) if args.strategies else bench.STRATEGIES
    rows = bench.run_bench(args.suite, strategies, budget_ms=_budget(args), threads=args.threads)
    if args.json:
        doc = {"rows": [{k: v for k, v in r.as_csv().items() if k != "millis"} for r in rows]}
        out.emit(doc, "")
    else:
        sys.stdout.write(bench.rows_to_csv(rows))
    return EXIT_OK


def _info(args, out: _Out) -> int:
    g = io.load_graph(args.graph)
    rep = graph_invariants(g)
    doc = {"n": g.n, "m": g.m, **rep.to_dict()}
    out.emit(doc, "\n".join(f"{k}: {v}" for k, v in doc.items()))
    return EXIT_OK


# --- parser -----------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--budget-ms", type=float, default=60_000, help="per query; 0 means unlimited")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--json", action="store_true", help="machine-readable output")
    common.add_argument("--dot", action="store_true", help="graph output as Graphviz DOT")
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--out", "-o", help="write the resulting graph here")

    parser = argparse.ArgumentParser(prog="homlab", description="Finite experiments on the homomorphism order.")
    sub = parser.add_subparsers(dest="command", required=True)

    gen = sub.add_parser("gen", parents=[common], help="generate a construction")
    gen.add_argument(
        "kind",
        choices=[
            "tower", "tree-of-cliques", "half-graph", "g2", "g-eta", "binary-tree", "sum",
            "product", "apex", "pendant", "complete", "catalog", "rigid-trianglefree",
            "rigid-seed", "sandwich",
        ],
    )
    gen.add_argument("param", nargs="*", help="input graphs (path or catalog name)")
    gen.add_argument("--base", default="K3")
    gen.add_argument("--height", type=int, default=1)
    gen.add_argument("--k", type=int, default=3)
    gen.add_argument("--N", type=int, default=4)
    gen.add_argument("--pattern")
    gen.add_argument("--width", type=int, default=2)
    gen.add_argument("--fanout", type=int, default=2)
    gen.add_argument("--root", default="K1")
    gen.add_argument("--level1", default="K2")
    gen.add_argument("--level2", default="K2")
    gen.add_argument("--depth", type=int, default=2)
    gen.add_argument("--max-n", type=int, default=12)
    gen.add_argument("--n", type=int, default=6)
    gen.set_defaults(func=_gen)

    p = sub.add_parser("hom", parents=[common], help="decide G -> H")
    p.add_argument("source")
    p.add_argument("target")
    p.set_defaults(func=_hom)

    p = sub.add_parser("compare", parents=[common], help="place G relative to H")
    p.add_argument("g")
    p.add_argument("h")
    p.set_defaults(func=_compare)

    p = sub.add_parser("indep", parents=[common], help="antichain test")
    p.add_argument("graphs", nargs="+")
    p.set_defaults(func=_indep)

    p = sub.add_parser("rigid", parents=[common], help="is the identity the only endomorphism")
    p.add_argument("graph")
    p.set_defaults(func=_rigid)

    p = sub.add_parser("core", parents=[common], help="compute the core")
    p.add_argument("graph")
    p.set_defaults(func=_core)

    p = sub.add_parser("rank", parents=[common], help="clique rank, or H-rank with --pattern")
    p.add_argument("graph")
    p.add_argument("--pattern")
    p.set_defaults(func=_rank)

    p = sub.add_parser("certify", parents=[common], help="obstruction certificate for G -/-> H")
    p.add_argument("g")
    p.add_argument("h")
    p.add_argument("--pattern")
    p.set_defaults(func=_certify)

    p = sub.add_parser("info", parents=[common], help="exact invariants")
    p.add_argument("graph")
    p.set_defaults(func=_info)

    p = sub.add_parser("catalog", parents=[common], help="named graphs")
    p.add_argument("action", choices=["list", "get", "verify", "save"])
    p.add_argument("name", nargs="?")
    p.set_defaults(func=_catalog)

    p = sub.add_parser("lab", parents=[common], help="composite experiments")
    p.add_argument("experiment", choices=["partner", "extend", "gap", "low", "rigid-demo"])
    p.add_argument("graphs", nargs="*")
    p.add_argument("--alpha", type=int, default=3)
    p.set_defaults(func=_lab)

    p = sub.add_parser("bench", parents=[common], help="pruning benchmark as CSV")
    p.add_argument("--suite", default="all")
    p.add_argument("--strategies", help="comma separated subset of " + ",".join(bench.STRATEGIES))
    p.set_defaults(func=_bench)
    return parser


def _check_arity(args) -> None:
    need = {
        ("lab", "partner"): 1, ("lab", "gap"): 2, ("lab", "low"): 1, ("lab", "extend"): 1,
    }
    if args.command == "lab":
        k = need.get(("lab", args.experiment), 0)
        if len(args.graphs) < k or (args.experiment in ("partner", "gap", "low") and len(args.graphs) != k):
            raise HomlabError(f"lab {args.experiment} takes {k} graph argument(s)")
    if args.command == "gen":
        arity = {"sum": (1, None), "product": (2, 2), "apex": (1, 1), "pendant": (1, 1), "catalog": (1, 1), "sandwich": (3, 3)}
        lo, hi = arity.get(args.kind, (0, 0))
        n = len(args.param)
        if n < lo or (hi is not None and n > hi):
            raise HomlabError(f"gen {args.kind} takes {lo}{'' if hi == lo else '+' if hi is None else f'-{hi}'} graph argument(s), got {n}")


def _show_warning(message, category, filename, lineno, file=None, line=None):
    print(f"warning: {message}", file=sys.stderr)


def run_command(argv: list[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        # argparse exits with 2 on usage errors; our contract reserves 2 for undecided
        return EXIT_OK if exc.code == 0 else EXIT_INPUT
    warnings.simplefilter("always", io.DuplicateEdgeWarning)
    warnings.showwarning = _show_warning
    out = _Out(args)
    try:
        _check_arity(args)
        return args.func(args, out)
    except Undecided as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED
    except bench.BenchDivergence as exc:
        print(f"soundness failure: {exc}", file=sys.stderr)
        return EXIT_NO
    except (HomlabError, SizeCutoffError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT


def main() -> None:
    sys.exit(run_command())


if __name__ == "__main__":
    main()
