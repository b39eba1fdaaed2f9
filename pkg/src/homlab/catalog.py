"""Named small graphs and the searches that supply construction blocks."""
from __future__ import annotations

import itertools
import random
import re
from dataclasses import dataclass, field
from typing import Callable

from .constructions import DirectedRelation, complete_graph, rigid_relation_seed
from .errors import GraphInputError, RigidSearchFailed, SizeCutoffError
from .graph import Graph, disjoint_sum
from .invariants import (
    chromatic_number,
    clique_number,
    components,
    has_nontrivial_automorphism,
    odd_girth,
    triangle_free,
)
from .solver import is_rigid

KNESER_MAX_N = 9


def cycle(n: int) -> Graph:
    if n < 3:
        raise GraphInputError("cycles need at least 3 vertices")
    return Graph(n, tuple((i, (i + 1) % n) for i in range(n)))


def path(n: int) -> Graph:
    if n < 1:
        raise GraphInputError("paths need at least 1 vertex")
    return Graph(n, tuple((i, i + 1) for i in range(n - 1)))


def complete(n: int) -> Graph:
    if n < 1:
        raise GraphInputError("complete graphs need at least 1 vertex")
    return complete_graph(n)


def wheel(n: int) -> Graph:
    """Cycle ``C_n`` plus a hub."""
    c = cycle(n)
    return Graph(n + 1, c.edges + tuple((i, n) for i in range(n)))


def mycielski(g: Graph) -> Graph:
    """Mycielskian: copies ``u_i`` of each vertex joined to ``N(v_i)``, plus a
    vertex ``w`` joined to every ``u_i``.  Vertex order: v's, u's, w."""
    n = g.n
    edges = list(g.edges)
    for a, b in g.edges:
        edges += [(a, n + b), (b, n + a)]
    edges += [(n + i, 2 * n) for i in range(n)]
    labels = [f"v{i}" for i in range(n)] + [f"u{i}" for i in range(n)] + ["w"]
    return Graph(2 * n + 1, tuple(edges), tuple(labels))


def generalized_mycielski(g: Graph, r: int) -> Graph:
    """Cone over ``g`` with ``r`` levels: level 0 is ``g``, level ``i+1`` copies
    the neighbourhoods of level ``i``, and an apex sees the top level."""
    if r < 1:
        raise GraphInputError("need at least one level")
    n = g.n
    edges = list(g.edges)
    for i in range(r - 1):
        for a, b in g.edges:
            edges += [(i * n + a, (i + 1) * n + b), (i * n + b, (i + 1) * n + a)]
    apex = r * n
    edges += [((r - 1) * n + v, apex) for v in range(n)]
    return Graph(apex + 1, tuple(edges))


def grotzsch() -> Graph:
    return mycielski(cycle(5))


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, tuple(outer + spokes + inner))


def chvatal() -> Graph:
    edges = [
        (0, 1), (0, 4), (0, 6), (0, 9), (1, 2), (1, 5), (1, 7), (2, 3),
        (2, 6), (2, 8), (3, 4), (3, 7), (3, 9), (4, 5), (4, 8), (5, 10),
        (5, 11), (6, 10), (6, 11), (7, 8), (7, 11), (8, 10), (9, 10), (9, 11),
    ]
    return Graph(12, tuple(edges))


def kneser(n: int, k: int) -> Graph:
    """k-subsets of ``range(n)``, adjacent when disjoint."""
    if n > KNESER_MAX_N:
        raise SizeCutoffError(f"Kneser graphs are capped at n <= {KNESER_MAX_N}")
    if not 1 <= k or 2 * k > n:
        raise GraphInputError("Kneser(n, k) needs 1 <= k and 2k <= n")
    subsets = list(itertools.combinations(range(n), k))
    edges = [
        (i, j)
        for i, j in itertools.combinations(range(len(subsets)), 2)
        if not set(subsets[i]) & set(subsets[j])
    ]
    labels = ["{" + ",".join(map(str, s)) + "}" for s in subsets]
    return Graph(len(subsets), tuple(edges), tuple(labels))


def empty(n: int) -> Graph:
    return Graph(n, ())


_GENERATORS: dict[str, Callable[..., Graph]] = {
    "c": cycle,
    "cycle": cycle,
    "p": path,
    "path": path,
    "k": complete,
    "complete": complete,
    "e": empty,
    "empty": empty,
    "w": wheel,
    "wheel": wheel,
    "mycielski": mycielski,
    "genmycielski": generalized_mycielski,
    "grotzsch": grotzsch,
    "petersen": petersen,
    "chvatal": chvatal,
    "kneser": kneser,
    "sum": lambda *gs: disjoint_sum(*gs),
}


def catalog_get(name: str, *params) -> Graph:
    """Look up a family by name; graph-valued parameters may be given as
    name strings (``catalog_get("mycielski", "C7")``)."""
    key = name.lower().replace("ö", "o")
    if key not in _GENERATORS:
        if not params:
            return parse_graph_name(name)
        raise GraphInputError(f"unknown catalog name {name!r}")
    args = [parse_graph_name(p) if isinstance(p, str) else p for p in params]
    try:
        return _GENERATORS[key](*args)
    except TypeError as exc:
        raise GraphInputError(f"bad parameters for {name}: {exc}") from exc


_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-zö_]+)|(.))")


def parse_graph_name(text: str) -> Graph:
    """Parse names like ``K3``, ``C5``, ``Kneser(5,2)``, ``Mycielski(Grotzsch)``,
    ``Sum(C5,C7)``."""
    tokens = [m.groups() for m in _TOKEN.finditer(text) if m.group(0).strip()]
    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else (None, None, None)

    def expr():
        nonlocal pos
        num, word, sym = peek()
        if num is not None:
            pos += 1
            return int(num)
        if word is None:
            raise GraphInputError(f"cannot parse graph name {text!r}")
        pos += 1
        args = []
        # short forms: K3, C5, P4, W5, E2
        nxt = peek()
        if nxt[0] is not None and word in ("K", "C", "P", "W", "E"):
            pos += 1
            args.append(int(nxt[0]))
        elif nxt[2] == "(":
            pos += 1
            while True:
                args.append(expr())
                _, _, s = peek()
                pos += 1
                if s == ")":
                    break
                if s != ",":
                    raise GraphInputError(f"cannot parse graph name {text!r}")
        key = word.lower().replace("ö", "o")
        if key not in _GENERATORS:
            raise GraphInputError(f"unknown catalog name {word!r}")
        try:
            return _GENERATORS[key](*args)
        except TypeError as exc:
            raise GraphInputError(f"bad parameters for {word}: {exc}") from exc

    g = expr()
    if pos != len(tokens) or not isinstance(g, Graph):
        raise GraphInputError(f"cannot parse graph name {text!r}")
    return g


@dataclass
class CatalogEntry:
    """A named graph with properties known independently of this code.

    ``properties`` holds chromatic number, odd girth (None if bipartite),
    clique number and triangle-freeness; the test-suite recomputes them.
    """

    name: str
    graph: Graph
    properties: dict = field(default_factory=dict)

    @property
    def chromatic(self) -> int:
        return self.properties["chromatic"]

    @property
    def odd_girth(self) -> int | None:
        return self.properties["odd_girth"]


def _entry(name: str, chi: int, og: int | None, omega: int) -> CatalogEntry:
    g = parse_graph_name(name)
    return CatalogEntry(
        name,
        g,
        {"chromatic": chi, "odd_girth": og, "clique": omega, "triangle_free": omega < 3},
    )


def default_entries() -> list[CatalogEntry]:
    """The standard catalog, smallest first within each family."""
    out = [_entry(f"K{n}", n, 3 if n >= 3 else None, n) for n in range(1, 7)]
    out += [_entry(f"C{n}", 3 if n % 2 else 2, n if n % 2 else None, 3 if n == 3 else 2) for n in range(3, 12)]
    out += [
        _entry("W5", 4, 3, 3),
        _entry("Petersen", 3, 5, 2),
        _entry("Grotzsch", 4, 5, 2),
        _entry("Chvatal", 4, 5, 2),
        _entry("Mycielski(C7)", 4, 5, 2),
        _entry("Mycielski(Grotzsch)", 5, 5, 2),
        _entry("GenMycielski(C7,3)", 4, 7, 2),
        _entry("Kneser(5,2)", 3, 5, 2),
        _entry("Kneser(6,2)", 4, 3, 3),
        _entry("Kneser(7,2)", 5, 3, 3),
        _entry("Kneser(7,3)", 3, 7, 2),
        _entry("Kneser(9,4)", 3, 9, 2),
    ]
    return out


def verify_entry(entry: CatalogEntry) -> dict:
    """Recompute every recorded property; maps name to (recorded, computed)."""
    g = entry.graph
    computed = {
        "chromatic": chromatic_number(g, g.n),
        "odd_girth": odd_girth(g),
        "clique": clique_number(g),
        "triangle_free": triangle_free(g),
    }
    return {k: (entry.properties[k], computed[k]) for k in computed}


def blocks_for(min_chi: int, min_odd_girth: int) -> tuple[list[CatalogEntry], str]:
    """Entries with chromatic number >= ``min_chi`` and no odd cycle of length
    <= ``min_odd_girth``.  An empty answer comes with an explanatory note."""
    hits = [
        e
        for e in default_entries()
        if e.chromatic >= min_chi and (e.odd_girth is None or e.odd_girth > min_odd_girth)
    ]
    if hits:
        return hits, ""
    return [], (
        f"desk-infeasible: no catalog graph has chromatic number >= {min_chi} "
        f"and odd girth > {min_odd_girth}"
    )


# --- rigid triangle-free graphs -------------------------------------------------------


def _dominated_pair(g: Graph) -> bool:
    # N(u) subset of N(v) for non-adjacent u != v gives a folding endomorphism
    for u in range(g.n):
        for v in range(g.n):
            if u != v and not g.has_edge(u, v) and g.adj[u] & ~g.adj[v] == 0:
                return True
    return False


def _random_trianglefree(n: int, rng: random.Random, density: float) -> Graph:
    pairs = list(itertools.combinations(range(n), 2))
    rng.shuffle(pairs)
    adj = [0] * n
    edges = []
    target = int(density * len(pairs))
    for u, v in pairs:
        if len(edges) >= target:
            break
        if adj[u] & adj[v]:
            continue
        adj[u] |= 1 << v
        adj[v] |= 1 << u
        edges.append((u, v))
    return Graph(n, tuple(edges))


def find_rigid_trianglefree(max_n: int, seed: int = 0, attempts: int = 400, budget_ms: float = 20_000) -> Graph:
    """Seeded random search for a triangle-free graph whose only endomorphism
    is the identity.

    Sizes are tried from small to ``max_n``; at each size candidates are
    filtered cheaply (connected, non-bipartite, no dominated vertex, no
    non-trivial automorphism) before the exhaustive rigidity check.
    """
    if max_n > 12:
        raise GraphInputError("rigid search is limited to max_n <= 12")
    if max_n < 1:
        raise GraphInputError("max_n must be positive")
    if max_n == 1:
        return Graph(1, ())
    rng = random.Random(seed)
    for n in range(2, max_n + 1):
        for _ in range(attempts):
            density = rng.uniform(0.2, 0.5)
            g = _random_trianglefree(n, rng, density)
            if len(components(g)) != 1 or odd_girth(g) is None:
                continue
            if _dominated_pair(g) or has_nontrivial_automorphism(g):
                continue
            if is_rigid(g, budget_ms=budget_ms).rigid:
                return g
    raise RigidSearchFailed(f"no rigid triangle-free graph found with at most {max_n} vertices")


def arrow_replacement(rel: DirectedRelation, gadget: Graph, tail: int, head: int) -> Graph:
    """Replace each arc ``(a, b)`` of a relation by a copy of ``gadget`` whose
    ``tail`` is glued to ``a`` and ``head`` to ``b``."""
    if tail == head:
        raise GraphInputError("gadget terminals must differ")
    inner = [v for v in range(gadget.n) if v not in (tail, head)]
    edges = []
    labels = [f"s{i}" for i in range(rel.n)]
    nxt = rel.n
    for a, b in rel.arcs:
        where = {tail: a, head: b}
        for v in inner:
            where[v] = nxt
            labels.append(f"a{a}-{b}:{v}")
            nxt += 1
        edges.extend((where[u], where[v]) for u, v in gadget.edges)
    return Graph(nxt, tuple(edges), tuple(labels))


def rigid_trianglefree_of_size(
    min_n: int,
    gadget: Graph | None = None,
    terminals: tuple[int, int] | None = None,
    seed: int = 0,
    budget_ms: float = 120_000,
) -> Graph:
    """A rigid triangle-free graph on at least ``min_n`` vertices, built by
    replacing the arcs of the rigid seed relation by a rigid triangle-free
    gadget.  The result is certified by exhaustive endomorphism search."""
    if gadget is None:
        gadget = find_rigid_trianglefree(12, seed)
    if terminals is None:
        terminals = _far_pair(gadget)
    k = gadget.n
    n = 4
    while n + n * (k - 2) < min_n:
        n += 1
    g = arrow_replacement(rigid_relation_seed(n), gadget, *terminals)
    if not triangle_free(g):
        raise RigidSearchFailed("gadget replacement created a triangle")
    if not is_rigid(g, budget_ms=budget_ms).rigid:
        raise RigidSearchFailed("gadget replacement is not rigid for this gadget")
    return g


def _far_pair(g: Graph) -> tuple[int, int]:
    """Two vertices at maximum distance (smallest indices on ties)."""
    best = (-1, 0, 1)
    for s in range(g.n):
        dist = {s: 0}
        frontier = [s]
        while frontier:
            nxt = []
            for v in frontier:
                for w in g.nbrs[v]:
                    if w not in dist:
                        dist[w] = dist[v] + 1
                        nxt.append(w)
            frontier = nxt
        for t, d in dist.items():
            if d > best[0] or (d == best[0] and (s, t) < best[1:]):
                best = (d, s, t)
    return best[1], best[2]
