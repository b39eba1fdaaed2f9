"""Pure-Python homomorphism search kernel.

This is the reference implementation; ``_ckernel.pyx`` is a line-for-line
port.  Both must produce identical solutions, enumeration order and node
counts, which the test-suite checks.

Domains are int bitmasks over target vertices.  A *node* is one tentative
assignment ``v -> t``.
"""
import time

DONE = 0
LIMIT = 1
BUDGET = 2

_CHECK_EVERY = 1024


def _popcount(x):
    return bin(x).count("1")


def _support(tgt_adj, dom):
    s = 0
    while dom:
        low = dom & -dom
        s |= tgt_adj[low.bit_length() - 1]
        dom ^= low
    return s


def _arc_consistency(src_nbrs, tgt_adj, doms, assigned, queue):
    """Shrink unassigned domains to arc consistency; False on a wipe-out."""
    inq = set(queue)
    while queue:
        w = queue.pop()
        inq.discard(w)
        sup = _support(tgt_adj, doms[w])
        for v in src_nbrs[w]:
            if assigned[v] >= 0:
                continue
            nd = doms[v] & sup
            if nd != doms[v]:
                if not nd:
                    return False
                doms[v] = nd
                if v not in inq:
                    queue.append(v)
                    inq.add(v)
    return True


def search(src_nbrs, tgt_adj, domains, mrv, ac, limit, node_limit, deadline):
    """Backtracking with forward checking.

    Returns ``(solutions, nodes, status)``; ``status`` is DONE when the tree
    was exhausted, LIMIT when ``limit`` solutions were found, BUDGET when
    ``node_limit`` nodes or the ``deadline`` (``time.monotonic`` value) ran
    out.  ``limit``/``node_limit``/``deadline`` of 0 mean unbounded.
    """
    n = len(src_nbrs)
    assigned = [-1] * n
    sols = []
    state = {"nodes": 0, "status": DONE}
    if n == 0:
        return [()], 0, (LIMIT if limit == 1 else DONE)
    for d in domains:
        if not d:
            return [], 0, DONE

    def pick(doms):
        if not mrv:
            for v in range(n):
                if assigned[v] < 0:
                    return v
        best, bc = -1, 1 << 30
        for v in range(n):
            if assigned[v] < 0:
                c = _popcount(doms[v])
                if c < bc:
                    best, bc = v, c
        return best

    def rec(depth, doms):
        if depth == n:
            sols.append(tuple(assigned))
            if limit and len(sols) >= limit:
                state["status"] = LIMIT
                return True
            return False
        v = pick(doms)
        d = doms[v]
        while d:
            low = d & -d
            t = low.bit_length() - 1
            d ^= low
            state["nodes"] += 1
            nodes = state["nodes"]
            if node_limit and nodes > node_limit:
                state["status"] = BUDGET
                return True
            if deadline and nodes % _CHECK_EVERY == 0 and time.monotonic() > deadline:
                state["status"] = BUDGET
                return True
            nd = list(doms)
            nd[v] = low
            assigned[v] = t
            ok = True
            adj_t = tgt_adj[t]
            changed = []
            for w in src_nbrs[v]:
                if assigned[w] < 0:
                    x = nd[w] & adj_t
                    if not x:
                        ok = False
                        break
                    if x != nd[w]:
                        nd[w] = x
                        changed.append(w)
            if ok and ac and changed:
                ok = _arc_consistency(src_nbrs, tgt_adj, nd, assigned, changed)
            if ok and rec(depth + 1, nd):
                return True
            assigned[v] = -1
        return False

    rec(0, list(domains))
    return sols, state["nodes"], state["status"]
