"""Homomorphism existence, enumeration, rigidity, cores and comparison."""
from __future__ import annotations

import itertools
import time
from dataclasses import dataclass, field
from typing import Mapping, Sequence

from . import kernel
from .errors import GraphInputError, Undecided
from .graph import Graph, mapping_from
from .invariants import CHROMATIC_CUTOFF, local_clique_numbers, odd_walk_lengths, triangle_blocks
from .obstructions import NoHomCertificate, certify

DEFAULT_BUDGET_MS = 60_000
DEFAULT_PRECHECK = ("oddgirth", "clique", "chromatic")


@dataclass(frozen=True)
class HomWitness:
    mapping: tuple[int, ...]

    def __getitem__(self, v: int) -> int:
        return self.mapping[v]

    def __len__(self):
        return len(self.mapping)

    def to_dict(self) -> dict:
        return {"mapping": list(self.mapping)}


@dataclass
class HomDecision:
    """Outcome of one directional query: a witness or a certificate."""

    witness: HomWitness | None
    certificate: NoHomCertificate | None
    nodes: int = 0

    @property
    def exists(self) -> bool:
        return self.witness is not None

    def to_dict(self) -> dict:
        if self.witness is not None:
            return {"exists": True, "witness": list(self.witness.mapping), "nodes": self.nodes}
        return {"exists": False, "certificate": self.certificate.to_dict(), "nodes": self.nodes}


def verify_hom(g: Graph, h: Graph, f: Mapping[int, int] | Sequence[int]) -> bool:
    """True iff ``f`` sends every edge of ``g`` to an edge of ``h``."""
    if isinstance(f, HomWitness):
        f = f.mapping
    images = mapping_from(f, g.n)
    for t in images:
        if not 0 <= t < h.n:
            raise GraphInputError(f"image {t} is not a vertex of the target")
    return all(h.has_edge(images[u], images[v]) for u, v in g.edges)


def _arc_consistent(g: Graph, h: Graph, doms: list[int]) -> bool:
    queue = [v for v in range(g.n) if g.nbrs[v]]
    inq = set(queue)
    while queue:
        w = queue.pop()
        inq.discard(w)
        sup = 0
        d = doms[w]
        while d:
            low = d & -d
            sup |= h.adj[low.bit_length() - 1]
            d ^= low
        for v in g.nbrs[w]:
            nd = doms[v] & sup
            if nd != doms[v]:
                doms[v] = nd
                if not nd:
                    return False
                if v not in inq:
                    queue.append(v)
                    inq.add(v)
    return True


def initial_domains(
    g: Graph,
    h: Graph,
    local_filters: bool = False,
    block_filter: bool = False,
    chromatic_cutoff: int = CHROMATIC_CUTOFF,
) -> list[int]:
    """Candidate images for each source vertex, made arc consistent.

    ``local_filters`` adds two sound per-vertex tests: the largest clique
    through ``v`` cannot exceed that through its image, and the shortest odd
    closed walk through the image is no longer than the one through ``v``.

    ``block_filter`` compares triangle blocks (see
    :func:`~homlab.invariants.triangle_blocks`).  A source block may only use
    target blocks that no certificate separates it from.  Only certificates
    are consulted here, never search, so the filter stays cheap.
    """
    full = (1 << h.n) - 1
    nonisolated = 0
    for t in range(h.n):
        if h.adj[t]:
            nonisolated |= 1 << t
    doms = [nonisolated if g.nbrs[v] else full for v in range(g.n)]
    if local_filters and g.m:
        lg, lh = local_clique_numbers(g), local_clique_numbers(h)
        og, oh = odd_walk_lengths(g), odd_walk_lengths(h)
        for v in range(g.n):
            allowed = 0
            for t in range(h.n):
                if lh[t] < lg[v]:
                    continue
                if og[v] is not None and (oh[t] is None or oh[t] > og[v]):
                    continue
                allowed |= 1 << t
            doms[v] &= allowed
    if block_filter:
        _filter_blocks(g, h, doms, chromatic_cutoff)
    if any(d == 0 for d in doms):
        return [0] * g.n
    if not _arc_consistent(g, h, doms):
        return [0] * g.n
    return doms


def _filter_blocks(g: Graph, h: Graph, doms: list[int], chromatic_cutoff: int) -> None:
    src, tgt = triangle_blocks(g), triangle_blocks(h)
    if not src:
        return
    tgt_graphs = [(h.induced(b), sum(1 << t for t in b)) for b in tgt]
    for block in src:
        sub = g.induced(block)
        allowed = 0
        for hb, mask in tgt_graphs:
            cert = certify(sub, hb, None, DEFAULT_PRECHECK, chromatic_cutoff).certificate
            if cert is None:
                allowed |= mask
        for v in block:
            doms[v] &= allowed


@dataclass
class SearchOutcome:
    solutions: list[tuple[int, ...]]
    nodes: int
    status: int

    @property
    def budget_exhausted(self) -> bool:
        return self.status == kernel.BUDGET


def run_search(
    g: Graph,
    h: Graph,
    *,
    limit: int = 1,
    mrv: bool = True,
    ac: bool = False,
    local_filters: bool = False,
    block_filter: bool = False,
    chromatic_cutoff: int = CHROMATIC_CUTOFF,
    domains: list[int] | None = None,
    budget_ms: float | None = DEFAULT_BUDGET_MS,
    node_limit: int = 0,
    backend: str | None = None,
) -> SearchOutcome:
    """Thin wrapper around the kernel; ``limit=0`` enumerates everything."""
    if domains is None:
        domains = initial_domains(g, h, local_filters, block_filter, chromatic_cutoff)
    deadline = time.monotonic() + budget_ms / 1000.0 if budget_ms else 0.0
    search = kernel.get_search(backend)
    sols, nodes, status = search(g.nbrs, h.adj, domains, mrv, ac, limit, node_limit, deadline)
    return SearchOutcome(sols, nodes, status)


def decide_hom(
    g: Graph,
    h: Graph,
    *,
    precheck: Sequence[str] = DEFAULT_PRECHECK,
    chromatic_cutoff: int = CHROMATIC_CUTOFF,
    budget_ms: float | None = DEFAULT_BUDGET_MS,
    node_limit: int = 0,
    ac: bool = True,
    local_filters: bool = False,
    backend: str | None = None,
) -> HomDecision:
    """Decide ``g -> h``: certificates first, then backtracking search.

    Raises :class:`Undecided` when the budget runs out; a timeout is never
    reported as "no homomorphism".
    """
    if precheck:
        cert = certify(g, h, None, precheck, chromatic_cutoff).certificate
        if cert is not None:
            return HomDecision(None, cert, 0)
    out = run_search(
        g,
        h,
        limit=1,
        ac=ac,
        local_filters=local_filters,
        budget_ms=budget_ms,
        node_limit=node_limit,
        backend=backend,
    )
    if out.solutions:
        return HomDecision(HomWitness(out.solutions[0]), None, out.nodes)
    if out.budget_exhausted:
        raise Undecided(f"undecided within budget after {out.nodes} search nodes")
    return HomDecision(None, NoHomCertificate("exhaustiveSearch", {"nodes": out.nodes}), out.nodes)


def find_hom(g: Graph, h: Graph, **kw) -> HomWitness | None:
    return decide_hom(g, h, **kw).witness


def exhaustive_hom_exists(g: Graph, h: Graph) -> bool:
    """Oracle: try every one of ``|V(h)|^|V(g)|`` maps."""
    for images in itertools.product(range(h.n), repeat=g.n):
        if all(h.has_edge(images[u], images[v]) for u, v in g.edges):
            return True
    return False


@dataclass
class Enumeration:
    homs: list[HomWitness]
    truncated: bool


def enumerate_homs(
    g: Graph,
    h: Graph,
    limit: int = 0,
    *,
    budget_ms: float | None = DEFAULT_BUDGET_MS,
    backend: str | None = None,
) -> Enumeration:
    """All homomorphisms in lexicographic order of their image vectors.

    Vertices are assigned in index order with values ascending, which makes
    the search order lexicographic.  ``limit=0`` means no truncation.
    """
    out = run_search(g, h, limit=limit, mrv=False, ac=True, budget_ms=budget_ms, backend=backend)
    if out.budget_exhausted:
        raise Undecided(f"enumeration undecided after {out.nodes} nodes")
    return Enumeration([HomWitness(s) for s in out.solutions], out.status == kernel.LIMIT)


@dataclass
class RigidityResult:
    rigid: bool
    witness: HomWitness | None = None
    nodes: int = 0


def is_rigid(
    g: Graph,
    *,
    budget_ms: float | None = DEFAULT_BUDGET_MS,
    local_filters: bool = True,
    block_filter: bool = True,
    chromatic_cutoff: int = CHROMATIC_CUTOFF,
    backend: str | None = None,
) -> RigidityResult:
    """Exhaustive endomorphism search; rigid iff the identity is the only one.

    The block filter matters on graphs glued from triangle-rich pieces: it
    keeps each piece from being tried inside a piece it provably cannot map
    into.  Raise ``chromatic_cutoff`` to let it use chromatic certificates on
    larger pieces.
    """
    out = run_search(
        g,
        g,
        limit=2,
        mrv=True,
        ac=True,
        local_filters=local_filters,
        block_filter=block_filter,
        chromatic_cutoff=chromatic_cutoff,
        budget_ms=budget_ms,
        backend=backend,
    )
    if out.budget_exhausted:
        raise Undecided(f"rigidity undecided after {out.nodes} nodes")
    identity = tuple(range(g.n))
    others = [s for s in out.solutions if s != identity]
    if others:
        return RigidityResult(False, HomWitness(others[0]), out.nodes)
    return RigidityResult(True, None, out.nodes)


@dataclass
class CoreResult:
    core: Graph
    vertices: list[int]
    retraction: HomWitness
    minimality_checked: bool = False


def find_core(g: Graph, *, budget_ms: float | None = DEFAULT_BUDGET_MS, certify_upto: int = 9) -> CoreResult:
    """Shrink to a core by repeatedly mapping into ``current - v``.

    Vertices are tried in decreasing index order.  Whenever a map into
    ``current - v`` exists we jump straight to the induced subgraph on its
    image.  At the fixpoint no proper induced subgraph receives a map, which
    is exactly the core condition; for small cores every smaller induced
    subgraph is additionally tested.
    """
    verts = list(range(g.n))
    current = g
    to_current = list(range(g.n))  # map g -> current (indices into verts)
    changed = True
    while changed:
        changed = False
        for i in reversed(range(current.n)):
            keep = [j for j in range(current.n) if j != i]
            sub = current.induced(keep)
            w = find_hom(current, sub, budget_ms=budget_ms)
            if w is None:
                continue
            image = sorted({keep[t] for t in w.mapping})
            step = {j: image.index(keep[w.mapping[j]]) for j in range(current.n)}
            to_current = [step[x] for x in to_current]
            verts = [verts[j] for j in image]
            current = g.induced(verts)
            changed = True
            break
    checked = False
    if current.n <= certify_upto:
        for k in range(current.n):
            for subset in itertools.combinations(range(current.n), k):
                if find_hom(current, current.induced(list(subset)), budget_ms=budget_ms):
                    raise AssertionError("core minimality violated")  # pragma: no cover
        checked = True
    return CoreResult(current, verts, HomWitness(tuple(to_current)), checked)


def core(g: Graph, **kw) -> Graph:
    return find_core(g, **kw).core


EQUIVALENT = "equivalent"
STRICTLY_LESS = "strictlyLess"
STRICTLY_GREATER = "strictlyGreater"
INDEPENDENT = "independent"


@dataclass
class CompareResult:
    relation: str
    forward: HomDecision
    backward: HomDecision

    def to_dict(self) -> dict:
        return {
            "relation": self.relation,
            "forward": self.forward.to_dict(),
            "backward": self.backward.to_dict(),
        }


def classify(forward: bool, backward: bool) -> str:
    if forward and backward:
        return EQUIVALENT
    if forward:
        return STRICTLY_LESS
    if backward:
        return STRICTLY_GREATER
    return INDEPENDENT


def compare(g: Graph, h: Graph, **kw) -> CompareResult:
    """Place ``g`` relative to ``h`` in the homomorphism quasiorder."""
    try:
        fwd = decide_hom(g, h, **kw)
    except Undecided as exc:
        raise Undecided(f"forward direction {exc}") from exc
    try:
        bwd = decide_hom(h, g, **kw)
    except Undecided as exc:
        raise Undecided(f"backward direction {exc}", decided={"forward": fwd}) from exc
    return CompareResult(classify(fwd.exists, bwd.exists), fwd, bwd)


@dataclass
class IndependenceResult:
    independent: bool
    pair: tuple[int, int] | None = None
    results: dict = field(default_factory=dict)


def is_independent_set(graphs: Sequence[Graph], **kw) -> IndependenceResult:
    """Antichain test; reports the first comparable pair by index."""
    results = {}
    for i, j in itertools.combinations(range(len(graphs)), 2):
        res = compare(graphs[i], graphs[j], **kw)
        results[(i, j)] = res
        if res.relation != INDEPENDENT:
            return IndependenceResult(False, (i, j), results)
    return IndependenceResult(True, None, results)
