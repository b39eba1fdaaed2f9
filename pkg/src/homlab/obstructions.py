"""Sound certificates that no homomorphism exists, and the rank functions.

Every certificate is a pair of invariant values that are monotone along
homomorphisms, so a violated inequality proves ``G -/-> H``.  Certificates
carry the compared values and can be re-checked from scratch.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Sequence

from .errors import ExactChromaticUnavailable, GraphInputError
from .graph import Graph, OrderedPattern
from .invariants import CHROMATIC_CUTOFF, chromatic_number, clique_number, odd_girth

KINDS = ("oddGirth", "chromatic", "clique", "rank", "exhaustiveSearch")
DEFAULT_CHECKS = ("oddgirth", "clique", "chromatic", "rank")


@dataclass(frozen=True)
class NoHomCertificate:
    kind: str
    data: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise GraphInputError(f"unknown certificate kind {self.kind!r}")

    def to_dict(self) -> dict:
        return {"kind": self.kind, "data": self.data}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> NoHomCertificate:
        return cls(d["kind"], dict(d.get("data", {})))

    def recheck(self, g: Graph, h: Graph, pattern: OrderedPattern | None = None) -> bool:
        """Recompute the recorded values and confirm they still separate."""
        d = self.data
        if self.kind == "oddGirth":
            og, oh = odd_girth(g), odd_girth(h)
            return (og, oh) == (d["source"], d["target"]) and _og_blocks(og, oh)
        if self.kind == "clique":
            cg, ch = clique_number(g), clique_number(h)
            return (cg, ch) == (d["source"], d["target"]) and cg > ch
        if self.kind == "chromatic":
            cut = max(g.n, h.n)
            cg, ch = chromatic_number(g, cut), chromatic_number(h, cut)
            return (cg, ch) == (d["source"], d["target"]) and cg > ch
        if self.kind == "rank":
            if pattern is None:
                raise GraphInputError("rank certificate needs its pattern to recheck")
            rg, rh = h_rank(g, pattern), h_rank(h, pattern)
            if rg.unbounded or rh.unbounded:
                return False
            return (rg.value, rh.value) == (d["source"], d["target"]) and rg.value > rh.value
        from .solver import find_hom

        return find_hom(g, h, precheck=()) is None


def _og_blocks(og: int | None, oh: int | None) -> bool:
    # G has an odd cycle shorter than every odd cycle of H
    return og is not None and (oh is None or og < oh)


@dataclass(frozen=True)
class RankValue:
    """Height of a homomorphism tree with a virtual root (leaves have rank 0).

    ``unbounded`` means the full pattern maps into the graph; ``witness`` is
    then such a homomorphism.  ``truncated`` marks a value that hit the
    exploration cutoff and is only a lower bound.
    """

    value: int | None
    unbounded: bool = False
    witness: tuple[int, ...] | None = None
    truncated: bool = False

    def to_dict(self) -> dict:
        if self.unbounded:
            return {"value": "unbounded", "witness": list(self.witness or ())}
        return {"value": self.value, "truncated": self.truncated}


def clique_rank(g: Graph) -> RankValue:
    """Rank of the tree of homomorphisms ``K_n -> G`` ordered by extension.

    A node is an injective sequence of pairwise adjacent vertices; its
    subtree depends only on the underlying vertex set, which is memoised.
    """
    memo: dict[int, int] = {}

    def rank(chosen: int, common: int) -> int:
        if chosen in memo:
            return memo[chosen]
        best = 0
        cand = common
        while cand:
            low = cand & -cand
            w = low.bit_length() - 1
            cand ^= low
            best = max(best, rank(chosen | low, common & g.adj[w]) + 1)
        memo[chosen] = best
        return best

    return RankValue(rank(0, (1 << g.n) - 1))


def h_rank(
    g: Graph,
    pattern: OrderedPattern,
    cutoff: int | None = None,
    memo: bool = False,
) -> RankValue:
    """Rank of the tree of homomorphisms ``prefix(k) -> G``, k = 1, 2, ...

    The tree is walked depth first.  If the walk reaches depth ``|V(P)|`` the
    whole pattern maps into ``G`` and the rank is reported unbounded with
    that map as witness.  ``memo`` caches subtree heights keyed on the images
    of the prefix vertices that still have later neighbours.
    """
    p = pattern.graph
    limit = p.n if cutoff is None else min(cutoff, p.n)
    back = [[j for j in p.nbrs[k] if j < k] for k in range(p.n)]
    last_use = [max([k] + [j for j in p.nbrs[k]]) for k in range(p.n)]
    image: list[int] = []
    cache: dict = {}
    found: list = [None]

    def frontier_key(k: int):
        return (k, tuple(image[j] for j in range(k) if last_use[j] >= k))

    def height(k: int) -> int:
        if k == limit:
            if k == p.n:
                found[0] = tuple(image)
            return 0
        if memo:
            key = frontier_key(k)
            if key in cache:
                return cache[key]
        cand = (1 << g.n) - 1
        for j in back[k]:
            cand &= g.adj[image[j]]
        best = 0
        while cand:
            low = cand & -cand
            t = low.bit_length() - 1
            cand ^= low
            image.append(t)
            best = max(best, height(k + 1) + 1)
            image.pop()
            if found[0] is not None or best == limit - k:
                break
        if memo:
            cache[frontier_key(k)] = best
        return best

    value = height(0)
    if found[0] is not None:
        return RankValue(None, unbounded=True, witness=found[0])
    return RankValue(value, truncated=(limit < p.n and value == limit))


def hom_tree_level(g: Graph, pattern: OrderedPattern, depth: int) -> list[tuple[int, ...]]:
    """All homomorphisms ``prefix(depth) -> G`` as image tuples, i.e. the
    nodes of the rank tree at that depth."""
    p = pattern.graph
    back = [[j for j in p.nbrs[k] if j < k] for k in range(p.n)]
    out: list[tuple[int, ...]] = []

    def rec(image: list[int]):
        k = len(image)
        if k == depth:
            out.append(tuple(image))
            return
        cand = (1 << g.n) - 1
        for j in back[k]:
            cand &= g.adj[image[j]]
        for t in range(g.n):
            if cand >> t & 1:
                rec(image + [t])

    rec([])
    return out


def push_forward(f: Sequence[int], node: Sequence[int]) -> tuple[int, ...]:
    """The induced tree map: a node ``g`` goes to ``f o g`` at the same depth."""
    return tuple(f[x] for x in node)


@dataclass
class Certification:
    certificate: NoHomCertificate | None
    unavailable: list[str]
    values: dict


def certify(
    g: Graph,
    h: Graph,
    pattern: OrderedPattern | None = None,
    checks: Sequence[str] = DEFAULT_CHECKS,
    chromatic_cutoff: int = CHROMATIC_CUTOFF,
) -> Certification:
    """Run the requested checks in order and stop at the first that applies.

    Order: odd girth, clique number, chromatic number, pattern rank.  A check
    whose exact value cannot be computed within the cutoff is recorded in
    ``unavailable`` rather than guessed.
    """
    unavailable: list[str] = []
    values: dict = {}
    if "oddgirth" in checks:
        og, oh = odd_girth(g), odd_girth(h)
        values["oddGirth"] = (og, oh)
        if _og_blocks(og, oh):
            return Certification(
                NoHomCertificate("oddGirth", {"source": og, "target": oh}),
                unavailable,
                values,
            )
    if "clique" in checks:
        cg, ch = clique_number(g), clique_number(h)
        values["clique"] = (cg, ch)
        if cg > ch:
            return Certification(
                NoHomCertificate("clique", {"source": cg, "target": ch}),
                unavailable,
                values,
            )
    if "chromatic" in checks:
        try:
            cg = chromatic_number(g, chromatic_cutoff)
            ch = chromatic_number(h, chromatic_cutoff)
        except ExactChromaticUnavailable:
            unavailable.append("chromatic")
        else:
            values["chromatic"] = (cg, ch)
            if cg > ch:
                return Certification(
                    NoHomCertificate("chromatic", {"source": cg, "target": ch}),
                    unavailable,
                    values,
                )
    if "rank" in checks and pattern is not None:
        rg, rh = h_rank(g, pattern), h_rank(h, pattern)
        # rank only drops along homomorphisms when the pattern maps into neither graph
        if not rg.unbounded and not rh.unbounded:
            values["rank"] = (rg.value, rh.value)
            if rg.value > rh.value:
                return Certification(
                    NoHomCertificate(
                        "rank",
                        {"source": rg.value, "target": rh.value, "pattern_n": pattern.n},
                    ),
                    unavailable,
                    values,
                )
    return Certification(None, unavailable, values)


def no_hom_certificate(
    g: Graph,
    h: Graph,
    pattern: OrderedPattern | None = None,
    checks: Sequence[str] = DEFAULT_CHECKS,
    chromatic_cutoff: int = CHROMATIC_CUTOFF,
) -> NoHomCertificate | None:
    return certify(g, h, pattern, checks, chromatic_cutoff).certificate
