"""Finite simple graphs and the graph-forming operations used throughout.

Vertices are always ``0..n-1``.  Constructed graphs keep a human readable
label per vertex recording where the vertex came from (a sequence, a pair,
a block index), but labels never take part in equality.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Mapping, Sequence

from .errors import GraphInputError

Edge = tuple[int, int]


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


@dataclass(frozen=True)
class Graph:
    n: int
    edges: tuple[Edge, ...]
    labels: tuple[str, ...] | None = field(default=None, compare=False, repr=False)

    def __post_init__(self):
        if self.n < 0:
            raise GraphInputError("vertex count must be non-negative")
        norm = set()
        for e in self.edges:
            u, v = e
            if u == v:
                raise GraphInputError(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise GraphInputError(f"edge ({u}, {v}) out of range for n={self.n}")
            norm.add((u, v) if u < v else (v, u))
        object.__setattr__(self, "edges", tuple(sorted(norm)))
        if self.labels is not None:
            if len(self.labels) != self.n:
                raise GraphInputError("labels must have one entry per vertex")
            object.__setattr__(self, "labels", tuple(str(s) for s in self.labels))

    @property
    def m(self) -> int:
        return len(self.edges)

    @cached_property
    def adj(self) -> tuple[int, ...]:
        """Neighbourhood of each vertex as an int bitmask."""
        masks = [0] * self.n
        for u, v in self.edges:
            masks[u] |= 1 << v
            masks[v] |= 1 << u
        return tuple(masks)

    @cached_property
    def nbrs(self) -> tuple[tuple[int, ...], ...]:
        return tuple(tuple(_bits(a)) for a in self.adj)

    def vertices(self) -> range:
        return range(self.n)

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return len(self.nbrs[v])

    def label(self, v: int) -> str:
        return self.labels[v] if self.labels is not None else str(v)

    def induced(self, vertices: Sequence[int]) -> Graph:
        """Induced subgraph; new vertex ``i`` is old vertex ``vertices[i]``."""
        index = {v: i for i, v in enumerate(vertices)}
        if len(index) != len(vertices):
            raise GraphInputError("duplicate vertex in induced subgraph")
        edges = [
            (index[u], index[v]) for u, v in self.edges if u in index and v in index
        ]
        labels = [self.label(v) for v in vertices] if self.labels is not None else None
        return Graph(len(vertices), tuple(edges), labels and tuple(labels))

    def relabeled(self, perm: Sequence[int]) -> Graph:
        """Graph with vertex ``v`` renamed to ``perm[v]``."""
        return Graph(self.n, tuple((perm[u], perm[v]) for u, v in self.edges))

    def with_labels(self, labels: Iterable[str]) -> Graph:
        return Graph(self.n, self.edges, tuple(labels))

    def __repr__(self):
        return f"Graph(n={self.n}, m={self.m})"


def build_graph(n: int, edges: Iterable[Iterable[int]], labels=None) -> Graph:
    pairs = []
    for e in edges:
        e = tuple(e)
        if len(e) != 2:
            raise GraphInputError(f"edge {e!r} is not a pair")
        pairs.append((int(e[0]), int(e[1])))
    return Graph(n, tuple(pairs), tuple(labels) if labels is not None else None)


def empty_graph(n: int = 0) -> Graph:
    return Graph(n, ())


@dataclass(frozen=True)
class OrderedPattern:
    """A graph whose vertex numbering is the enumeration used for prefixes."""

    graph: Graph

    @property
    def n(self) -> int:
        return self.graph.n

    def prefix(self, k: int) -> Graph:
        if not 0 <= k <= self.graph.n:
            raise GraphInputError(f"prefix length {k} outside 0..{self.graph.n}")
        return self.graph.induced(list(range(k)))


@dataclass(frozen=True)
class HPartiteGraph:
    """A graph bundled with a homomorphism ``coloring`` into a pattern."""

    graph: Graph
    pattern: OrderedPattern
    coloring: tuple[int, ...]

    def __post_init__(self):
        col = tuple(int(c) for c in self.coloring)
        object.__setattr__(self, "coloring", col)
        if len(col) != self.graph.n:
            raise GraphInputError("coloring must assign every vertex")
        p = self.pattern.graph
        for c in col:
            if not 0 <= c < p.n:
                raise GraphInputError(f"color {c} is not a pattern vertex")
        for u, v in self.graph.edges:
            if not p.has_edge(col[u], col[v]):
                raise GraphInputError(
                    f"coloring is not a homomorphism: edge ({u}, {v}) -> "
                    f"({col[u]}, {col[v]})"
                )

    def color_class(self, x: int) -> list[int]:
        return [v for v, c in enumerate(self.coloring) if c == x]


def prefix_copy(pattern: OrderedPattern, k: int) -> HPartiteGraph:
    """The prefix ``H_k`` as an H-partite graph under the inclusion coloring."""
    return HPartiteGraph(pattern.prefix(k), pattern, tuple(range(k)))


# --- graph-forming operations -------------------------------------------------


def _labels_or_index(g: Graph, prefix: str) -> list[str]:
    return [f"{prefix}{g.label(v)}" for v in range(g.n)]


def disjoint_sum(*graphs: Graph) -> Graph:
    """Vertex-disjoint union; vertices of later summands are shifted up."""
    edges: list[Edge] = []
    labels: list[str] = []
    offset = 0
    for i, g in enumerate(graphs):
        edges.extend((u + offset, v + offset) for u, v in g.edges)
        labels.extend(_labels_or_index(g, f"{i}:"))
        offset += g.n
    return Graph(offset, tuple(edges), tuple(labels))


def tensor_product(g: Graph, h: Graph) -> Graph:
    """Categorical product: ``(u, x) ~ (v, y)`` iff ``u ~ v`` and ``x ~ y``.

    Vertex ``(u, x)`` gets index ``u * h.n + x``.
    """
    edges = []
    for u, v in g.edges:
        for x, y in h.edges:
            edges.append((u * h.n + x, v * h.n + y))
            edges.append((u * h.n + y, v * h.n + x))
    labels = [f"({g.label(u)},{h.label(x)})" for u in range(g.n) for x in range(h.n)]
    return Graph(g.n * h.n, tuple(edges), tuple(labels))


def product_projections(g: Graph, h: Graph) -> tuple[list[int], list[int]]:
    return (
        [i // h.n for i in range(g.n * h.n)],
        [i % h.n for i in range(g.n * h.n)],
    )


def apex_extend(g: Graph) -> Graph:
    """Add one vertex (index ``g.n``) adjacent to every existing vertex."""
    x = g.n
    edges = list(g.edges) + [(v, x) for v in range(g.n)]
    labels = [g.label(v) for v in range(g.n)] + ["x"]
    return Graph(g.n + 1, tuple(edges), tuple(labels))


def pendant_triangles(g: Graph) -> Graph:
    """Attach to each edge ``{u, v}`` a new vertex adjacent to both ends."""
    edges = list(g.edges)
    labels = [g.label(v) for v in range(g.n)]
    w = g.n
    for u, v in g.edges:
        edges.append((u, w))
        edges.append((v, w))
        labels.append(f"t{u}-{v}")
        w += 1
    return Graph(w, tuple(edges), tuple(labels))


def triangle_strip_pad(g: Graph, extra: int, anchor: Edge | None = None) -> Graph:
    """Grow ``g`` by ``extra`` vertices, each joined to the previous two.

    Starting from an edge ``anchor`` of ``g`` (first edge by default), every new
    vertex closes a triangle with the last edge added, so the padding is
    connected to ``g``, K4-free, 3-colourable and every new edge lies in a
    triangle.
    """
    if extra == 0:
        return g
    if not g.edges and anchor is None:
        raise GraphInputError("triangle padding needs an anchor edge")
    a, b = anchor if anchor is not None else g.edges[0]
    if not g.has_edge(a, b):
        raise GraphInputError(f"anchor ({a}, {b}) is not an edge")
    edges = list(g.edges)
    labels = [g.label(v) for v in range(g.n)]
    for k in range(extra):
        w = g.n + k
        edges += [(a, w), (b, w)]
        labels.append(f"pad{k}")
        a, b = b, w
    return Graph(g.n + extra, tuple(edges), tuple(labels))


def disjoint_triangle_pad(g: Graph, extra: int) -> Graph:
    """Pad with disjoint triangles (plus a triangle-closing tail for the rest).

    Kept for completeness; the result is disconnected, which voids the
    connectivity the sandwich argument uses, so callers must re-check.
    """
    if extra == 0:
        return g
    parts = [g]
    k, r = divmod(extra, 3)
    tri = Graph(3, ((0, 1), (1, 2), (0, 2)))
    parts.extend([tri] * k)
    out = disjoint_sum(*parts)
    if r:
        out = triangle_strip_pad(out, r, anchor=(out.n - 3, out.n - 2) if k else None)
    return out


def h_join(a: HPartiteGraph, b: HPartiteGraph) -> HPartiteGraph:
    """Disjoint union plus every cross edge whose colours are pattern-adjacent."""
    if a.pattern != b.pattern:
        raise GraphInputError("h_join needs both operands over the same pattern")
    p = a.pattern.graph
    off = a.graph.n
    edges = list(a.graph.edges) + [(u + off, v + off) for u, v in b.graph.edges]
    for x in range(a.graph.n):
        cx = p.adj[a.coloring[x]]
        for y in range(b.graph.n):
            if cx >> b.coloring[y] & 1:
                edges.append((x, y + off))
    labels = _labels_or_index(a.graph, "a") + _labels_or_index(b.graph, "b")
    g = Graph(off + b.graph.n, tuple(edges), tuple(labels))
    return HPartiteGraph(g, a.pattern, a.coloring + b.coloring)


def mapping_from(obj: Mapping[int, int] | Sequence[int], n: int) -> list[int]:
    """Normalise a dict or sequence mapping on ``0..n-1`` into a list."""
    if isinstance(obj, Mapping):
        missing = [v for v in range(n) if v not in obj]
        if missing:
            raise GraphInputError(f"mapping is partial: no image for {missing[:5]}")
        return [int(obj[v]) for v in range(n)]
    out = [int(x) for x in obj]
    if len(out) != n:
        raise GraphInputError(f"mapping has {len(out)} entries, expected {n}")
    return out
