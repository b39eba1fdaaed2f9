"""Generators for the explicit constructions, truncated to finite parameters.

Where a homomorphism is asserted to exist the generator also returns the
canonical map, so callers can verify it rather than search for it.
"""
from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from typing import Callable, Mapping, Sequence

from .errors import GraphInputError, PreconditionError, Undecided
from .graph import (
    Graph,
    HPartiteGraph,
    OrderedPattern,
    apex_extend,
    prefix_copy,
)
from .invariants import (
    CHROMATIC_CUTOFF,
    components,
    edges_in_triangles,
    triangle_free,
)
from .obstructions import NoHomCertificate, certify
from .solver import (
    INDEPENDENT,
    HomWitness,
    compare,
    decide_hom,
    find_hom,
    is_rigid,
    verify_hom,
)


def complete_graph(n: int) -> Graph:
    return Graph(n, tuple(itertools.combinations(range(n), 2)))


# --- towers -------------------------------------------------------------------


@dataclass(frozen=True)
class TowerGraph:
    graph: Graph
    base: OrderedPattern
    height: int
    sequences: tuple[tuple[int, ...], ...]

    def level(self, v: int) -> int:
        return len(self.sequences[v]) - 1

    def index(self, seq: Sequence[int]) -> int:
        return self.sequences.index(tuple(seq))


def decreasing_sequences(alpha: int) -> list[tuple[int, ...]]:
    """Nonempty strictly decreasing sequences over ``0..alpha-1``, sorted."""
    out = []
    for r in range(1, alpha + 1):
        for combo in itertools.combinations(range(alpha), r):
            out.append(tuple(sorted(combo, reverse=True)))
    return sorted(out)


def tower(base: OrderedPattern, alpha: int) -> TowerGraph:
    """Tree of copies of the base prefixes with height ``alpha``.

    Vertices are decreasing sequences; ``nu`` and ``mu`` are adjacent when one
    is a proper prefix of the other and their levels (length - 1) are
    adjacent in the base.
    """
    if not 1 <= alpha <= base.n:
        raise GraphInputError(
            f"tower height {alpha} must lie in 1..{base.n} (levels index base vertices)"
        )
    seqs = decreasing_sequences(alpha)
    index = {s: i for i, s in enumerate(seqs)}
    b = base.graph
    edges = []
    for s in seqs:
        for k in range(1, len(s)):
            if b.has_edge(k - 1, len(s) - 1):
                edges.append((index[s[:k]], index[s]))
    labels = ["(" + ",".join(map(str, s)) + ")" for s in seqs]
    return TowerGraph(Graph(len(seqs), tuple(edges), tuple(labels)), base, alpha, tuple(seqs))


def tree_of_cliques(k: int) -> TowerGraph:
    return tower(OrderedPattern(complete_graph(k)), k)


@dataclass
class TowerWitnesses:
    level_hom: HomWitness
    inclusion: HomWitness
    level_ok: bool
    inclusion_ok: bool


def tower_witnesses(base: OrderedPattern, alpha: int, beta: int) -> TowerWitnesses:
    """The level map ``tower(alpha) -> base`` and the inclusion of the
    ``alpha``-tower into the ``beta``-tower, both verified."""
    if not 1 <= alpha <= beta <= base.n:
        raise GraphInputError(f"need 1 <= alpha <= beta <= {base.n}")
    small, big = tower(base, alpha), tower(base, beta)
    level = HomWitness(tuple(small.level(v) for v in range(small.graph.n)))
    big_index = {s: i for i, s in enumerate(big.sequences)}
    incl = HomWitness(tuple(big_index[s] for s in small.sequences))
    return TowerWitnesses(
        level,
        incl,
        verify_hom(small.graph, base.graph, level),
        verify_hom(small.graph, big.graph, incl),
    )


# --- half graphs --------------------------------------------------------------


def half_graph_index(n: int, side: int, N: int) -> int:
    return side * N + n


def half_graph_blowup(N: int, pattern: OrderedPattern | None = None):
    """Blown-up half graph on ``{0..N-1} x {0, 1}``.

    Plain mode: ``(n, i) ~ (m, i)`` when ``isqrt(n) == isqrt(m)`` (so each side
    is a chain of cliques of sizes 1, 3, 5, ...) and ``(n, 0) ~ (m, 1)`` when
    ``n < m``.

    Pattern mode: each side is the disjoint union of prefix copies
    ``H_1 .. H_N`` and block ``m`` of side 0 is H-joined to block ``n`` of
    side 1 whenever ``m <= n``.  Returns an :class:`HPartiteGraph`.
    """
    if N < 1:
        raise GraphInputError("half graph truncation must be >= 1")
    if pattern is not None:
        return _pattern_half_graph(N, pattern)
    edges = []
    for i in (0, 1):
        for n, m in itertools.combinations(range(N), 2):
            if math.isqrt(n) == math.isqrt(m):
                edges.append((half_graph_index(n, i, N), half_graph_index(m, i, N)))
    for n, m in itertools.combinations(range(N), 2):
        edges.append((half_graph_index(n, 0, N), half_graph_index(m, 1, N)))
    labels = [f"({n},{i})" for i in (0, 1) for n in range(N)]
    return Graph(2 * N, tuple(edges), tuple(labels))


def _pattern_half_graph(N: int, pattern: OrderedPattern) -> HPartiteGraph:
    if N > pattern.n:
        raise GraphInputError(f"pattern mode needs N <= |V(pattern)| = {pattern.n}")
    p = pattern.graph
    blocks = []  # (side, k, offset)
    edges = []
    coloring: list[int] = []
    labels: list[str] = []
    for side in (0, 1):
        for k in range(1, N + 1):
            off = len(coloring)
            blocks.append((side, k, off))
            h = prefix_copy(pattern, k)
            edges.extend((u + off, v + off) for u, v in h.graph.edges)
            coloring.extend(h.coloring)
            labels.extend(f"({side},{k},{j})" for j in range(k))
    for s0, m, o0 in blocks:
        for s1, n, o1 in blocks:
            if s0 == 0 and s1 == 1 and m <= n:
                for a in range(m):
                    for b in range(n):
                        if p.has_edge(a, b):
                            edges.append((o0 + a, o1 + b))
    g = Graph(len(coloring), tuple(edges), tuple(labels))
    return HPartiteGraph(g, pattern, tuple(coloring))


# --- tree blowups ---------------------------------------------------------------


def tree_blowup(parents: Sequence[int], blocks: Sequence, pattern: OrderedPattern | None = None):
    """Replace every node of a rooted tree by a block graph.

    ``parents[x]`` is the parent of node ``x`` (``-1`` for the root, and
    parents precede children).  Blocks of adjacent nodes are fully joined,
    or in pattern mode joined only where colours are pattern-adjacent, in
    which case ``blocks`` are :class:`HPartiteGraph` and so is the result.
    """
    if len(parents) != len(blocks):
        raise GraphInputError(
            f"tree has {len(parents)} nodes but {len(blocks)} blocks were given"
        )
    for x, p in enumerate(parents):
        if (x == 0) != (p == -1) or p >= x:
            raise GraphInputError("parents must describe a tree rooted at node 0")
    if pattern is not None:
        for b in blocks:
            if not isinstance(b, HPartiteGraph) or b.pattern != pattern:
                raise GraphInputError("pattern mode needs H-partite blocks over the pattern")
    graphs = [b.graph if pattern is not None else b for b in blocks]
    offsets = list(itertools.accumulate([0] + [g.n for g in graphs]))
    edges = []
    labels = []
    for x, g in enumerate(graphs):
        edges.extend((u + offsets[x], v + offsets[x]) for u, v in g.edges)
        labels.extend(f"{x}:{g.label(v)}" for v in range(g.n))
    pg = pattern.graph if pattern is not None else None
    for x, p in enumerate(parents):
        if p < 0:
            continue
        for a in range(graphs[p].n):
            for b in range(graphs[x].n):
                if pg is None or pg.has_edge(blocks[p].coloring[a], blocks[x].coloring[b]):
                    edges.append((offsets[p] + a, offsets[x] + b))
    g = Graph(offsets[-1], tuple(edges), tuple(labels))
    if pattern is None:
        return g
    coloring = tuple(c for b in blocks for c in b.coloring)
    return HPartiteGraph(g, pattern, coloring)


def depth_two_tree(width: int, fanout: int) -> tuple[list[int], list]:
    """Root, ``width`` children, each with ``fanout`` children.

    Returns ``(parents, names)`` with names ``"r"``, ``i`` and ``(i, j)``.
    """
    parents = [-1]
    names: list = ["r"]
    for i in range(width):
        parents.append(0)
        names.append(i)
    for i in range(width):
        for j in range(fanout):
            parents.append(1 + i)
            names.append((i, j))
    return parents, names


def g2_graph(width: int, fanout: int) -> Graph:
    """Depth-two tree blown up by cliques: ``K_{i+1}`` at level one, ``K_{j+1}``
    below."""
    parents, names = depth_two_tree(width, fanout)
    blocks = []
    for nm in names:
        if nm == "r":
            blocks.append(complete_graph(1))
        elif isinstance(nm, int):
            blocks.append(complete_graph(nm + 1))
        else:
            blocks.append(complete_graph(nm[1] + 1))
    return tree_blowup(parents, blocks)


def g_eta(width: int, fanout: int, eta: Callable[[object], Graph] | Mapping) -> Graph:
    """Depth-two tree blown up by the block ``eta(node)`` at each node."""
    parents, names = depth_two_tree(width, fanout)
    pick = eta.__getitem__ if isinstance(eta, Mapping) else eta
    return tree_blowup(parents, [pick(nm) for nm in names])


# --- binary tree construction ---------------------------------------------------------


def tree_index(sigma: Sequence[int]) -> int:
    return sum(2 ** s for s in sigma)


def tree_level(sigma: Sequence[int]) -> int:
    """Largest position holding a nonzero entry; 0 when there is none."""
    nz = [i for i, s in enumerate(sigma) if s != 0]
    return max(nz) if nz else 0


def binary_sequences(depth: int) -> list[tuple[int, ...]]:
    out = []
    for r in range(depth + 1):
        out.extend(itertools.product((0, 1), repeat=r))
    return out


@dataclass
class Block:
    """A block graph with its pattern colouring and two designated vertices."""

    graph: HPartiteGraph
    x: int
    y: int


@dataclass
class BinaryTreeSpec:
    depth: int
    pattern: OrderedPattern
    blocks: Mapping[tuple[int, ...], Block] | Callable[[tuple[int, ...]], Block] | None = None

    def block(self, sigma: tuple[int, ...]) -> Block:
        if self.blocks is None:
            return default_edge_block(self.pattern)
        if callable(self.blocks):
            return self.blocks(sigma)
        if sigma not in self.blocks:
            raise GraphInputError(f"no block supplied for node {sigma}")
        return self.blocks[sigma]


def default_edge_block(pattern: OrderedPattern) -> Block:
    p = pattern.graph
    if not p.edges:
        raise GraphInputError("pattern has no edge to colour a K2 block")
    a, b = p.edges[0]
    k2 = Graph(2, ((0, 1),))
    return Block(HPartiteGraph(k2, pattern, (a, b)), 0, 1)


@dataclass
class BinaryTreeGraph:
    graph: Graph
    nodes: list[tuple[int, ...]]
    offsets: list[int]
    index: dict
    level: dict
    metadata: dict = field(default_factory=dict)


def binary_tree_graph(spec: BinaryTreeSpec) -> BinaryTreeGraph:
    """Disjoint blocks ``F_sigma`` over the binary tree of the given depth, plus
    one edge from ``x`` of each node's block to ``y`` of each child's block."""
    nodes = binary_sequences(spec.depth)
    p = spec.pattern.graph
    blocks = {}
    for s in nodes:
        b = spec.block(s)
        if b.x == b.y or not (0 <= b.x < b.graph.graph.n and 0 <= b.y < b.graph.graph.n):
            raise GraphInputError(f"block at {s} lacks two distinct designated vertices")
        if not p.has_edge(b.graph.coloring[b.x], b.graph.coloring[b.y]):
            raise GraphInputError(f"designated vertices of block {s} have non-adjacent colours")
        blocks[s] = b
    offsets = list(itertools.accumulate([0] + [blocks[s].graph.graph.n for s in nodes]))
    pos = {s: i for i, s in enumerate(nodes)}
    edges = []
    labels = []
    for s in nodes:
        g = blocks[s].graph.graph
        off = offsets[pos[s]]
        edges.extend((u + off, v + off) for u, v in g.edges)
        name = "".join(map(str, s)) or "e"
        labels.extend(f"{name}:{v}" for v in range(g.n))
    for s in nodes:
        if s:
            parent = s[:-1]
            edges.append(
                (offsets[pos[parent]] + blocks[parent].x, offsets[pos[s]] + blocks[s].y)
            )
    g = Graph(offsets[-1], tuple(edges), tuple(labels))
    index = {s: tree_index(s) for s in nodes}
    level = {s: tree_level(s) for s in nodes}
    return BinaryTreeGraph(g, nodes, offsets[:-1], index, level, {"blocks": {}})


def check_block_conditions(spec: BinaryTreeSpec, budget_ms: float = 10_000) -> dict:
    """Empirically test ``F_sigma <= H_i`` and ``F_sigma > H_{i-1}`` with
    ``i = index(sigma)``; anything out of range is marked unverified.  The
    factorisation clause is never certified here."""
    out = {}
    for s in binary_sequences(spec.depth):
        b = spec.block(s).graph.graph
        i = tree_index(s)
        entry = {"index": i, "level": tree_level(s), "factorization": "unverified"}
        if 1 <= i <= spec.pattern.n:
            entry["below_prefix"] = find_hom(b, spec.pattern.prefix(i), budget_ms=budget_ms) is not None
        else:
            entry["below_prefix"] = "unverified"
        if 1 <= i - 1 <= spec.pattern.n:
            lower = spec.pattern.prefix(i - 1)
            up = find_hom(lower, b, budget_ms=budget_ms) is not None
            down = find_hom(b, lower, budget_ms=budget_ms) is not None
            entry["above_previous"] = up and not down
        else:
            entry["above_previous"] = "unverified"
        out["".join(map(str, s)) or "e"] = entry
    return out


# --- rigid constructions -------------------------------------------------------------


@dataclass(frozen=True)
class DirectedRelation:
    n: int
    arcs: tuple[tuple[int, int], ...]


def rigid_relation_seed(n: int) -> DirectedRelation:
    """Directed path ``0 -> 1 -> ... -> n-1`` plus the arc ``(0, 3)``."""
    if n < 4:
        raise GraphInputError("the seed relation needs n >= 4")
    arcs = [(i, i + 1) for i in range(n - 1)] + [(0, 3)]
    return DirectedRelation(n, tuple(sorted(arcs)))


def relation_endomorphisms(rel: DirectedRelation) -> list[tuple[int, ...]]:
    """Every arc-preserving self-map, by brute force over ``n^n`` maps."""
    arcs = set(rel.arcs)
    return [
        f
        for f in itertools.product(range(rel.n), repeat=rel.n)
        if all((f[a], f[b]) in arcs for a, b in arcs)
    ]


def _triangle_in(g: Graph, u: int, v: int) -> bool:
    return bool(g.adj[u] & g.adj[v])


def sandwich_rigid(
    g: Graph,
    g0: Graph,
    g1: Graph,
    mu: Sequence[int],
    nu: Sequence[int],
    *,
    chromatic_cutoff: int = CHROMATIC_CUTOFF,
    budget_ms: float | None = 60_000,
    require_connected: bool = True,
) -> Graph:
    """Disjoint ``g``, ``g0``, ``g1`` plus the matchings ``x ~ mu[x]`` (g to g0)
    and ``y ~ nu[y]`` (g0 to g1).

    Vertex blocks: ``g`` first, then ``g0``, then ``g1``.  Each hypothesis is
    checked up front and reported by name when it fails.
    """
    if not triangle_free(g0):
        raise PreconditionError("G0 triangle-free", "the middle graph contains a triangle")
    try:
        rigid = is_rigid(g0, budget_ms=budget_ms)
    except Undecided as exc:
        raise PreconditionError("G0 rigid", f"undecided: {exc}") from exc
    if not rigid.rigid:
        raise PreconditionError(
            "G0 rigid", f"non-identity endomorphism {list(rigid.witness.mapping)}"
        )
    for name, h in (("G", g), ("G1", g1)):
        if not all(edges_in_triangles(h)):
            raise PreconditionError(f"every edge of {name} lies in a triangle")
        if require_connected and len(components(h)) > 1:
            raise PreconditionError(f"{name} connected")
    n = g.n
    if not (g0.n == n == g1.n):
        raise PreconditionError(
            "equal vertex counts", f"|G|={g.n}, |G0|={g0.n}, |G1|={g1.n}"
        )
    if sorted(mu) != list(range(n)) or sorted(nu) != list(range(n)):
        raise PreconditionError("mu and nu are bijections")
    try:
        rel = compare(g, g1, chromatic_cutoff=chromatic_cutoff, budget_ms=budget_ms).relation
    except Undecided as exc:
        raise PreconditionError("G and G1 independent", f"undecided: {exc}") from exc
    if rel != INDEPENDENT:
        raise PreconditionError("G and G1 independent", f"relation is {rel}")

    edges = list(g.edges)
    edges += [(u + n, v + n) for u, v in g0.edges]
    edges += [(u + 2 * n, v + 2 * n) for u, v in g1.edges]
    matching = [(x, n + mu[x]) for x in range(n)] + [(n + y, 2 * n + nu[y]) for y in range(n)]
    edges += matching
    labels = (
        [f"G:{g.label(v)}" for v in range(n)]
        + [f"G0:{g0.label(v)}" for v in range(n)]
        + [f"G1:{g1.label(v)}" for v in range(n)]
    )
    out = Graph(3 * n, tuple(edges), tuple(labels))
    for u, v in matching + [(u + n, v + n) for u, v in g0.edges]:
        assert not _triangle_in(out, u, v), f"edge ({u}, {v}) lies in a triangle"
    return out


# --- apex absorption ------------------------------------------------------------------


@dataclass
class ApexResult:
    homomorphism: bool
    clique_sequence: list[int] | None = None
    certificate: NoHomCertificate | None = None


def apex_absorption_test(u: Graph, steps: int = 5, chromatic_cutoff: int = CHROMATIC_CUTOFF) -> ApexResult:
    """Look for ``f: U + apex -> U`` and, if found, iterate ``f`` from the apex.

    The orbit ``x0 = apex, x_{i+1} = f(x_i)`` must be a clique.  For finite
    ``U`` no such map exists and the chromatic certificate is returned.
    """
    ux = apex_extend(u)
    cert = None
    if ux.n <= chromatic_cutoff:
        cert = certify(ux, u, checks=("chromatic",), chromatic_cutoff=chromatic_cutoff).certificate
    if cert is not None:
        return ApexResult(False, None, cert)
    dec = decide_hom(ux, u, chromatic_cutoff=chromatic_cutoff)
    if not dec.exists:
        return ApexResult(False, None, dec.certificate)
    f = dec.witness.mapping  # pragma: no cover - impossible for finite U
    seq = [u.n]
    for _ in range(steps):
        seq.append(f[seq[-1]])
    for a, b in itertools.combinations(seq[1:], 2):
        assert u.has_edge(a, b)
    return ApexResult(True, seq, None)
