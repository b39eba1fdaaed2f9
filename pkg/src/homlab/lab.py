"""Composite experiments: partners, antichain extension, gaps, lowness, and a
desk-scale rigid supergraph.

Every report keeps enough data to be re-verified from scratch: certificates
are re-checked and witnesses re-run by :func:`reverify_compare`.  A
"none-found" outcome only says that the finite candidate list ran out.
"""
from __future__ import annotations

import json
import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from typing import Callable, Iterable, Sequence

from . import catalog
from .constructions import (
    complete_graph,
    g2_graph,
    half_graph_blowup,
    sandwich_rigid,
    tower,
    tree_of_cliques,
)
from .errors import GraphInputError, PreconditionError, Undecided
from .graph import Graph, OrderedPattern, disjoint_sum, pendant_triangles, triangle_strip_pad
from .invariants import clique_number, edges_in_triangles, odd_girth
from .solver import (
    DEFAULT_BUDGET_MS,
    INDEPENDENT,
    STRICTLY_GREATER,
    STRICTLY_LESS,
    CompareResult,
    HomDecision,
    compare,
    decide_hom,
    find_core,
    is_independent_set,
    is_rigid,
    verify_hom,
)

LAB_CHROMATIC_CUTOFF = 64
# candidates up to this size are reduced to their core before being reported
CORE_LIMIT = 12

BIPARTITE_REJECTION = (
    "a bipartite graph with an edge is equivalent to K2, and K2 maps into every "
    "graph with an edge, while an edgeless graph maps into it; so no graph is "
    "independent of it"
)


@dataclass(frozen=True)
class ConstructionSpec:
    """One candidate generator: a family name plus its parameters."""

    kind: str
    params: tuple = ()

    @property
    def name(self) -> str:
        if self.kind == "catalog":
            return self.params[0]
        inner = ",".join(str(p) for p in self.params)
        return f"{self.kind}({inner})"

    def build(self) -> Graph:
        if self.kind == "tree_of_cliques":
            return tree_of_cliques(*self.params).graph
        if self.kind == "tower":
            base, alpha = self.params
            return tower(OrderedPattern(catalog.parse_graph_name(base)), alpha).graph
        if self.kind == "half_graph":
            return half_graph_blowup(*self.params)
        if self.kind == "g2":
            return g2_graph(*self.params)
        if self.kind == "catalog":
            return catalog.parse_graph_name(self.params[0])
        raise GraphInputError(f"unknown construction kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "params": list(self.params), "name": self.name}


def default_generators(g: Graph) -> list[ConstructionSpec]:
    """Towers over a clique one larger than omega, then half graphs, tree
    blowups and finally the catalog (Mycielski iterates precede Kneser graphs
    there)."""
    w = clique_number(g)
    gens = [ConstructionSpec("tree_of_cliques", (w + 1,))]
    gens += [ConstructionSpec("half_graph", (n,)) for n in (4, 9)]
    gens += [ConstructionSpec("g2", (2, 2)), ConstructionSpec("g2", (3, 3))]
    gens += [ConstructionSpec("catalog", (e.name,)) for e in catalog.default_entries()]
    return gens


@dataclass
class CandidateTrace:
    spec: ConstructionSpec
    n: int
    relation: str | None
    result: CompareResult | None
    error: str | None = None

    def to_dict(self) -> dict:
        d = {"candidate": self.spec.to_dict(), "n": self.n, "relation": self.relation}
        if self.result is not None:
            d["compare"] = self.result.to_dict()
        if self.error:
            d["error"] = self.error
        return d


@dataclass
class PartnerReport:
    graph: Graph
    partner: Graph | None
    provenance: ConstructionSpec | None
    trace: list[CandidateTrace] = field(default_factory=list)
    verification: CompareResult | None = None

    @property
    def found(self) -> bool:
        return self.partner is not None

    def to_dict(self) -> dict:
        out = {
            "input": {"n": self.graph.n, "edges": [list(e) for e in self.graph.edges]},
            "found": self.found,
            "trace": [t.to_dict() for t in self.trace],
        }
        if self.found:
            out["partner"] = {"n": self.partner.n, "edges": [list(e) for e in self.partner.edges]}
            out["provenance"] = self.provenance.to_dict()
            out["verification"] = self.verification.to_dict()
        else:
            out["note"] = "candidate list exhausted; this is not a proof that no partner exists"
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _compare_kw(budget_ms, chromatic_cutoff) -> dict:
    return {"budget_ms": budget_ms, "chromatic_cutoff": chromatic_cutoff}


def _evaluate(g: Graph, spec: ConstructionSpec, kw: dict) -> CandidateTrace:
    cand = spec.build()
    try:
        res = compare(g, cand, **kw)
    except Undecided as exc:
        return CandidateTrace(spec, cand.n, None, None, f"undecided: {exc}")
    return CandidateTrace(spec, cand.n, res.relation, res)


def _ordered_map(fn: Callable, items: Sequence, threads: int) -> Iterable:
    """Results in submission order; with ``threads > 1`` a window of that many
    candidates is evaluated at once."""
    if threads <= 1:
        for it in items:
            yield fn(it)
        return
    with ThreadPoolExecutor(max_workers=threads) as pool:
        for start in range(0, len(items), threads):
            yield from pool.map(fn, items[start : start + threads])


def reverify_compare(g: Graph, h: Graph, res: CompareResult) -> bool:
    """Cold re-check of a comparison: witnesses re-run, certificates recomputed."""

    def ok(src: Graph, tgt: Graph, dec: HomDecision) -> bool:
        if dec.witness is not None:
            return verify_hom(src, tgt, dec.witness)
        return dec.certificate.recheck(src, tgt)

    return ok(g, h, res.forward) and ok(h, g, res.backward)


def _reduce(cand: Graph, budget_ms) -> Graph:
    if cand.n > CORE_LIMIT:
        return cand
    return find_core(cand, budget_ms=budget_ms).core


def partner_search(
    g: Graph,
    generators: Sequence[ConstructionSpec] | None = None,
    *,
    budget_ms: float | None = DEFAULT_BUDGET_MS,
    chromatic_cutoff: int = LAB_CHROMATIC_CUTOFF,
    threads: int = 1,
) -> PartnerReport:
    """First generator output independent of ``g``.

    Small partners are replaced by their core, which is hom-equivalent and so
    equally independent; the core is then compared with ``g`` again.
    """
    if odd_girth(g) is None:
        raise PreconditionError("non-bipartite input", BIPARTITE_REJECTION)
    gens = list(generators) if generators is not None else default_generators(g)
    kw = _compare_kw(budget_ms, chromatic_cutoff)
    report = PartnerReport(g, None, None)
    for tr in _ordered_map(lambda s: _evaluate(g, s, kw), gens, threads):
        report.trace.append(tr)
        if tr.relation == INDEPENDENT:
            partner = _reduce(tr.spec.build(), budget_ms)
            report.partner = partner
            report.provenance = tr.spec
            report.verification = compare(g, partner, **kw)
            break
    return report


@dataclass
class ExtensionReport:
    family: list[Graph]
    added: Graph | None
    provenance: str | None
    trace: list[dict] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.added is not None

    def to_dict(self) -> dict:
        out = {"found": self.found, "family_size": len(self.family), "trace": self.trace}
        if self.found:
            out["added"] = {"n": self.added.n, "edges": [list(e) for e in self.added.edges]}
            out["provenance"] = self.provenance
        else:
            out["note"] = "candidate list exhausted; this is not a proof that no extension exists"
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def sum_of_towers(family: Sequence[Graph], alpha: int) -> Graph:
    """Disjoint sum of ``tower(G_i, a_i)`` with ``a_i = min(alpha, |V(G_i)|)``."""
    parts = [tower(OrderedPattern(h), min(alpha, h.n)).graph for h in family]
    return disjoint_sum(*parts)


def extend_independent(
    family: Sequence[Graph],
    alpha: int = 3,
    generators: Sequence[ConstructionSpec] | None = None,
    *,
    budget_ms: float | None = DEFAULT_BUDGET_MS,
    chromatic_cutoff: int = LAB_CHROMATIC_CUTOFF,
) -> ExtensionReport:
    """Add one graph to an antichain, keeping it an antichain.

    The sum of towers is tried first.  At finite height it usually fails,
    since each member maps into its own tower, and the trace records that.
    Generator outputs come next.
    """
    family = list(family)
    if not family:
        raise GraphInputError("family must be nonempty")
    kw = _compare_kw(budget_ms, chromatic_cutoff)
    anti = is_independent_set(family, **kw)
    if not anti.independent:
        i, j = anti.pair
        rel = anti.results[(i, j)].relation
        raise PreconditionError("family is an antichain", f"members {i} and {j} are {rel}")
    if len(family) == 1:
        rep = partner_search(family[0], generators, budget_ms=budget_ms, chromatic_cutoff=chromatic_cutoff)
        trace = [t.to_dict() for t in rep.trace]
        return ExtensionReport(family, rep.partner, rep.provenance.name if rep.found else None, trace)

    candidates: list[tuple[str, Callable[[], Graph]]] = [
        (f"sum_of_towers(alpha={alpha})", lambda: sum_of_towers(family, alpha))
    ]
    gens = generators if generators is not None else default_generators(family[0])
    candidates += [(s.name, s.build) for s in gens]
    report = ExtensionReport(family, None, None)
    for name, build in candidates:
        cand = build()
        rels = []
        ok = True
        for h in family:
            try:
                rel = compare(cand, h, **kw).relation
            except Undecided:
                rel = "undecided"
            rels.append(rel)
            if rel != INDEPENDENT:
                ok = False
                break
        report.trace.append({"candidate": name, "n": cand.n, "relations": rels})
        if ok:
            report.added = cand
            report.provenance = name
            break
    return report


@dataclass
class LowResult:
    low: bool
    alpha: int
    decision: HomDecision

    def to_dict(self) -> dict:
        return {"low": self.low, "alpha": self.alpha, "decision": self.decision.to_dict()}


def low_check(g: Graph, alpha: int, *, budget_ms: float | None = DEFAULT_BUDGET_MS) -> LowResult:
    """Does ``g`` map into its own tower of height ``alpha``?"""
    if not 1 <= alpha <= g.n:
        raise GraphInputError(f"height must lie in 1..{g.n}, got {alpha}")
    t = tower(OrderedPattern(g), alpha).graph
    dec = decide_hom(g, t, budget_ms=budget_ms)
    return LowResult(dec.exists, alpha, dec)


@dataclass
class GapResult:
    lower: Graph
    upper: Graph
    witness: Graph | None
    candidate: str | None
    checks: dict = field(default_factory=dict)
    tried: list[str] = field(default_factory=list)

    @property
    def found(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        out = {"found": self.found, "tried": self.tried}
        if self.found:
            out["candidate"] = self.candidate
            out["witness"] = {"n": self.witness.n, "edges": [list(e) for e in self.witness.edges]}
            out["checks"] = {k: v.to_dict() for k, v in self.checks.items()}
        else:
            out["note"] = "no candidate lies strictly between; this is not a proof of a gap"
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def gap_candidates() -> list[str]:
    """Catalog names, sparsest first: by clique number, then size."""
    entries = catalog.default_entries()
    entries.sort(key=lambda e: (e.properties["clique"], e.graph.n))
    return [e.name for e in entries]


def gap_probe(
    g: Graph,
    h: Graph,
    candidates: Sequence[str] | None = None,
    *,
    budget_ms: float | None = DEFAULT_BUDGET_MS,
    chromatic_cutoff: int = LAB_CHROMATIC_CUTOFF,
) -> GapResult:
    """Look for ``W = g + C`` with ``g < W < h``.

    Requires ``g < h``.  Since ``g`` maps into ``W`` by inclusion, the probe
    needs ``C -/-> g``, ``C -> h`` and ``h -/-> W``.  All four directed
    queries are recorded for the witness.
    """
    kw = _compare_kw(budget_ms, chromatic_cutoff)
    base = compare(g, h, **kw)
    if base.relation != STRICTLY_LESS:
        raise GraphInputError(f"gap probe needs G < H, but the relation is {base.relation}")
    names = list(candidates) if candidates is not None else gap_candidates()
    result = GapResult(g, h, None, None)
    for name in names:
        c = catalog.parse_graph_name(name)
        result.tried.append(name)
        w = disjoint_sum(g, c)
        try:
            low = compare(g, w, **kw)
            if low.relation != STRICTLY_LESS:
                continue
            high = compare(w, h, **kw)
        except Undecided:
            continue
        if high.relation == STRICTLY_LESS:
            result.witness = w
            result.candidate = name
            result.checks = {"lower": low, "upper": high}
            break
    return result


def maximal_family_member(h: Graph, g: Graph, **kw) -> bool:
    """Membership of ``g`` in ``{h} + {finite G > h}``, tested for ``g != h``:
    true iff ``g`` is strictly above ``h``."""
    return compare(g, h, **kw).relation == STRICTLY_GREATER


@dataclass
class SandwichReport:
    graph: Graph
    parts: dict
    rigid: bool
    nodes: int
    structural: dict
    timings: dict

    def to_dict(self) -> dict:
        return {
            "n": self.graph.n,
            "m": self.graph.m,
            "parts": self.parts,
            "rigid": self.rigid,
            "nodes": self.nodes,
            "structural": self.structural,
            "timings_ms": {k: round(v, 1) for k, v in self.timings.items()},
        }


def _stage(name: str, fn: Callable, timings: dict):
    t0 = time.perf_counter()
    try:
        out = fn()
    except PreconditionError as exc:
        raise PreconditionError(f"stage {name}: {exc.hypothesis}", exc.detail) from exc
    timings[name] = (time.perf_counter() - t0) * 1000
    return out


def sandwich_demo(
    *,
    seed: int = 0,
    budget_ms: float | None = 600_000,
    chromatic_cutoff: int = 256,
) -> SandwichReport:
    """K4 inside a certified rigid graph.

    Blocks: G is K4 with a strip of triangles; G1 is Mycielski(Grotzsch) with
    pendant triangles and the same kind of strip.  Both are padded to the size
    of a rigid triangle-free G0.  A raised chromatic cutoff lets the rigidity
    search separate the two triangle blocks by their chromatic numbers (4 and
    5).
    """
    timings: dict = {}
    g_core = complete_graph(4)
    g1_core = pendant_triangles(catalog.parse_graph_name("Mycielski(Grotzsch)"))
    need = max(g_core.n, g1_core.n)
    g0 = _stage(
        "G0", lambda: catalog.rigid_trianglefree_of_size(need, seed=seed, budget_ms=budget_ms), timings
    )
    n = g0.n
    g = triangle_strip_pad(g_core, n - g_core.n)
    g1 = triangle_strip_pad(g1_core, n - g1_core.n)
    ident = list(range(n))
    out = _stage(
        "sandwich",
        lambda: sandwich_rigid(
            g, g0, g1, ident, ident, chromatic_cutoff=chromatic_cutoff, budget_ms=budget_ms
        ),
        timings,
    )
    rig = _stage(
        "rigidity",
        lambda: is_rigid(out, budget_ms=budget_ms, chromatic_cutoff=chromatic_cutoff),
        timings,
    )
    flags = dict(zip(out.edges, edges_in_triangles(out)))
    bridge = [(x, n + x) for x in range(n)] + [(n + y, 2 * n + y) for y in range(n)]
    middle = [(u + n, v + n) for u, v in g0.edges]
    structural = {
        "K4 induced": out.induced(range(4)) == complete_graph(4),
        "G induced": out.induced(range(n)) == g,
        "matching and G0 edges in no triangle": not any(flags[e] for e in bridge + middle),
        "G0 triangle-free": not any(edges_in_triangles(g0)),
        "G and G1 edges in triangles": all(edges_in_triangles(g)) and all(edges_in_triangles(g1)),
    }
    parts = {"G": [0, n], "G0": [n, 2 * n], "G1": [2 * n, 3 * n]}
    return SandwichReport(out, parts, rig.rigid, rig.nodes, structural, timings)
