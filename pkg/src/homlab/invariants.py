"""Exact invariants of small graphs: odd girth, clique number, chromatic number,
components, and an isomorphism test.
"""
from __future__ import annotations

from collections import deque
from dataclasses import asdict, dataclass

from .errors import ExactChromaticUnavailable, SizeCutoffError
from .graph import Graph, _bits

CHROMATIC_CUTOFF = 16
ISOMORPHISM_CUTOFF = 12


def odd_walk_lengths(g: Graph) -> list[int | None]:
    """Per vertex, the length of the shortest odd closed walk through it.

    Breadth-first search over (vertex, parity) states; ``None`` when the
    vertex's component is bipartite.
    """
    out: list[int | None] = []
    for s in range(g.n):
        dist = {(s, 0): 0}
        queue = deque([(s, 0)])
        found = None
        while queue:
            v, p = queue.popleft()
            d = dist[(v, p)]
            for w in g.nbrs[v]:
                state = (w, p ^ 1)
                if state not in dist:
                    dist[state] = d + 1
                    if state == (s, 1):
                        found = d + 1
                        queue.clear()
                        break
                    queue.append(state)
        out.append(found)
    return out


def odd_girth(g: Graph) -> int | None:
    """Length of the shortest odd cycle, or ``None`` for bipartite graphs.

    The shortest odd closed walk always contains an odd cycle no longer than
    itself, so minimising walk lengths gives the odd girth.
    """
    lengths = [x for x in odd_walk_lengths(g) if x is not None]
    return min(lengths) if lengths else None


def components(g: Graph) -> list[list[int]]:
    seen = 0
    comps = []
    for s in range(g.n):
        if seen >> s & 1:
            continue
        comp = 1 << s
        frontier = comp
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= g.adj[v]
            frontier = nxt & ~comp
            comp |= nxt
        seen |= comp
        comps.append(list(_bits(comp)))
    return comps


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def _max_clique(adj, cand: int, size: int, best: list) -> None:
    if not cand:
        if size > best[0]:
            best[0] = size
        return
    # greedy colouring bound on the candidate set
    bound, rest = 0, cand
    while rest:
        bound += 1
        avail = rest
        while avail:
            low = avail & -avail
            v = low.bit_length() - 1
            avail &= ~adj[v] & ~low
            rest &= ~low
    if size + bound <= best[0]:
        return
    while cand:
        if size + bin(cand).count("1") <= best[0]:
            return
        low = cand & -cand
        v = low.bit_length() - 1
        _max_clique(adj, cand & adj[v], size + 1, best)
        cand &= ~low


def clique_number(g: Graph, within: int | None = None) -> int:
    """Largest clique, optionally restricted to the vertex mask ``within``."""
    cand = (1 << g.n) - 1 if within is None else within
    best = [0]
    _max_clique(g.adj, cand, 0, best)
    return best[0]


def local_clique_numbers(g: Graph) -> list[int]:
    """Size of the largest clique containing each vertex."""
    return [1 + clique_number(g, g.adj[v]) for v in range(g.n)]


def find_clique(g: Graph, k: int) -> list[int] | None:
    def rec(cand, chosen):
        if len(chosen) == k:
            return chosen
        while cand:
            if len(chosen) + bin(cand).count("1") < k:
                return None
            low = cand & -cand
            v = low.bit_length() - 1
            got = rec(cand & g.adj[v], chosen + [v])
            if got:
                return got
            cand &= ~low
        return None

    return rec((1 << g.n) - 1, [])


def dsatur_coloring(g: Graph) -> list[int]:
    """Greedy DSATUR colouring (an upper bound only)."""
    color = [-1] * g.n
    sat = [0] * g.n  # bitmask of neighbour colours
    for _ in range(g.n):
        v = max(
            (u for u in range(g.n) if color[u] < 0),
            key=lambda u: (bin(sat[u]).count("1"), g.degree(u), -u),
        )
        c = 0
        while sat[v] >> c & 1:
            c += 1
        color[v] = c
        for w in g.nbrs[v]:
            sat[w] |= 1 << c
    return color


def k_coloring(g: Graph, k: int) -> list[int] | None:
    """A proper colouring with at most ``k`` colours, or ``None``.

    Vertices of degree < k are peeled first (they can always be coloured
    last); the remainder is searched by DSATUR-ordered backtracking where a
    vertex may only open the next unused colour.
    """
    if g.n == 0:
        return []
    if k <= 0:
        return None
    alive = (1 << g.n) - 1
    peeled = []
    changed = True
    while changed:
        changed = False
        for v in _bits(alive):
            if bin(g.adj[v] & alive).count("1") < k:
                alive &= ~(1 << v)
                peeled.append(v)
                changed = True
    color = [-1] * g.n
    core = list(_bits(alive))
    if core and not _color_search(g, core, k, color):
        return None
    for v in reversed(peeled):
        used = 0
        for w in g.nbrs[v]:
            if color[w] >= 0:
                used |= 1 << color[w]
        c = 0
        while used >> c & 1:
            c += 1
        color[v] = c
    return color


def _color_search(g: Graph, verts: list[int], k: int, color: list[int]) -> bool:
    sat = {v: 0 for v in verts}
    uncolored = set(verts)
    full = (1 << k) - 1

    def rec(ncolors: int) -> bool:
        if not uncolored:
            return True
        v = max(
            uncolored,
            key=lambda u: (bin(sat[u]).count("1"), len(g.nbrs[u]), -u),
        )
        if sat[v] == full:
            return False
        uncolored.discard(v)
        limit = min(k, ncolors + 1)
        for c in range(limit):
            if sat[v] >> c & 1:
                continue
            color[v] = c
            touched = []
            for w in g.nbrs[v]:
                if w in sat and color[w] < 0 and not sat[w] >> c & 1:
                    sat[w] |= 1 << c
                    touched.append(w)
            if rec(max(ncolors, c + 1)):
                return True
            for w in touched:
                sat[w] &= ~(1 << c)
            color[v] = -1
        uncolored.add(v)
        return False

    return rec(0)


def chromatic_number(g: Graph, cutoff: int = CHROMATIC_CUTOFF) -> int:
    """Exact chromatic number; refuses graphs above ``cutoff`` vertices."""
    if g.n > cutoff:
        raise ExactChromaticUnavailable(g.n, cutoff)
    if g.n == 0:
        return 0
    if g.m == 0:
        return 1
    lower = clique_number(g)
    upper = max(dsatur_coloring(g)) + 1
    for k in range(lower, upper):
        if k_coloring(g, k) is not None:
            return k
    return upper


@dataclass(frozen=True)
class InvariantReport:
    odd_girth: int | None
    chromatic: int
    clique_number: int
    bipartite: bool
    component_count: int
    connected: bool

    def to_dict(self) -> dict:
        d = asdict(self)
        d["odd_girth"] = "none" if self.odd_girth is None else self.odd_girth
        return d


def graph_invariants(g: Graph, cutoff: int = CHROMATIC_CUTOFF) -> InvariantReport:
    chi = chromatic_number(g, cutoff)
    og = odd_girth(g)
    comps = components(g)
    return InvariantReport(
        odd_girth=og,
        chromatic=chi,
        clique_number=clique_number(g),
        bipartite=og is None,
        component_count=len(comps),
        connected=len(comps) <= 1,
    )


def triangle_free(g: Graph) -> bool:
    return all(not (g.adj[u] & g.adj[v]) for u, v in g.edges)


def edges_in_triangles(g: Graph) -> list[bool]:
    return [bool(g.adj[u] & g.adj[v]) for u, v in g.edges]


def triangle_blocks(g: Graph) -> list[list[int]]:
    """Components of the subgraph formed by the edges that lie in a triangle.

    A homomorphism sends triangles to triangles, so each block of the source
    lands inside a single block of the target.
    """
    tri = [0] * g.n
    for (u, v), flag in zip(g.edges, edges_in_triangles(g)):
        if flag:
            tri[u] |= 1 << v
            tri[v] |= 1 << u
    seen = 0
    out = []
    for s in range(g.n):
        if not tri[s] or seen >> s & 1:
            continue
        comp = frontier = 1 << s
        while frontier:
            nxt = 0
            for v in _bits(frontier):
                nxt |= tri[v]
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(list(_bits(comp)))
    return out


# --- isomorphism --------------------------------------------------------------


def _refine(g: Graph) -> list[int]:
    """Colour refinement starting from degrees; returns stable colour ids."""
    colors = [g.degree(v) for v in range(g.n)]
    while True:
        sigs = [
            (colors[v], tuple(sorted(colors[w] for w in g.nbrs[v]))) for v in range(g.n)
        ]
        palette = {s: i for i, s in enumerate(sorted(set(sigs)))}
        new = [palette[s] for s in sigs]
        if len(set(new)) == len(set(colors)):
            return new
        colors = new


def _refine_pair(g: Graph, h: Graph):
    """Refine both graphs with a shared palette so colours are comparable."""
    cg = [g.degree(v) for v in range(g.n)]
    ch = [h.degree(v) for v in range(h.n)]
    while True:
        sg = [(cg[v], tuple(sorted(cg[w] for w in g.nbrs[v]))) for v in range(g.n)]
        sh = [(ch[v], tuple(sorted(ch[w] for w in h.nbrs[v]))) for v in range(h.n)]
        palette = {s: i for i, s in enumerate(sorted(set(sg) | set(sh)))}
        ng = [palette[s] for s in sg]
        nh = [palette[s] for s in sh]
        if len(set(ng)) == len(set(cg)) and len(set(nh)) == len(set(ch)):
            return ng, nh
        cg, ch = ng, nh


def find_isomorphism(g: Graph, h: Graph, cutoff: int = ISOMORPHISM_CUTOFF):
    """An edge-preserving bijection ``g -> h`` with edge-preserving inverse."""
    if max(g.n, h.n) > cutoff:
        raise SizeCutoffError(f"isomorphism test limited to {cutoff} vertices")
    if g.n != h.n or g.m != h.m:
        return None
    if sorted(g.degree(v) for v in range(g.n)) != sorted(h.degree(v) for v in range(h.n)):
        return None
    cg, ch = _refine_pair(g, h)
    if sorted(cg) != sorted(ch):
        return None
    order = sorted(range(g.n), key=lambda v: (sum(c == cg[v] for c in cg), v))
    image = [-1] * g.n
    used = [False] * h.n

    def rec(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        for t in range(h.n):
            if used[t] or ch[t] != cg[v]:
                continue
            ok = True
            for w in range(g.n):
                if image[w] >= 0 and g.has_edge(v, w) != h.has_edge(t, image[w]):
                    ok = False
                    break
            if ok:
                image[v] = t
                used[t] = True
                if rec(i + 1):
                    return True
                image[v] = -1
                used[t] = False
        return False

    return image if rec(0) else None


def is_isomorphic(g: Graph, h: Graph, cutoff: int = ISOMORPHISM_CUTOFF) -> bool:
    return find_isomorphism(g, h, cutoff) is not None


def has_nontrivial_automorphism(g: Graph, cutoff: int = 64) -> bool:
    """Whether ``g`` has an automorphism other than the identity."""
    if g.n > cutoff:
        raise SizeCutoffError(f"automorphism test limited to {cutoff} vertices")
    colors = _refine(g)
    if len(set(colors)) == g.n:
        return False
    # try to send some vertex v to a different vertex t of the same colour
    for v in range(g.n):
        for t in range(g.n):
            if t != v and colors[t] == colors[v] and _extend_auto(g, colors, v, t):
                return True
    return False


def _extend_auto(g: Graph, colors, v0: int, t0: int) -> bool:
    image = [-1] * g.n
    used = [False] * g.n
    image[v0], used[t0] = t0, True
    order = [v0] + [v for v in range(g.n) if v != v0]

    def rec(i: int) -> bool:
        if i == g.n:
            return True
        v = order[i]
        for t in range(g.n):
            if used[t] or colors[t] != colors[v]:
                continue
            if all(
                image[w] < 0 or g.has_edge(v, w) == g.has_edge(t, image[w])
                for w in range(g.n)
            ):
                image[v] = t
                used[t] = True
                if rec(i + 1):
                    return True
                image[v] = -1
                used[t] = False
        return False

    return rec(1)
