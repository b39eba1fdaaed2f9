# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled homomorphism search kernel; a port of ``_pysearch.search``."""
import time

from libc.stdint cimport uint64_t
from libc.stdlib cimport calloc, free
from libc.string cimport memcpy

cdef extern from *:
    int __builtin_popcountll(unsigned long long) nogil
    int __builtin_ctzll(unsigned long long) nogil

cdef long long CHECK_EVERY = 1024

cdef int DONE = 0
cdef int LIMIT = 1
cdef int BUDGET = 2


cdef class _Search:
    cdef int n, W, T
    cdef int *nb_start
    cdef int *nb_list
    cdef uint64_t *tadj
    cdef uint64_t *doms
    cdef uint64_t *sup
    cdef int *assigned
    cdef int *queue
    cdef char *inq
    cdef int mrv, ac
    cdef long long limit, node_limit, nodes
    cdef double deadline
    cdef int status
    cdef list sols

    def __cinit__(self):
        self.nb_start = NULL
        self.nb_list = NULL
        self.tadj = NULL
        self.doms = NULL
        self.sup = NULL
        self.assigned = NULL
        self.queue = NULL
        self.inq = NULL

    def __dealloc__(self):
        free(self.nb_start)
        free(self.nb_list)
        free(self.tadj)
        free(self.doms)
        free(self.sup)
        free(self.assigned)
        free(self.queue)
        free(self.inq)

    cdef inline uint64_t* dom(self, int depth, int v):
        return self.doms + (<size_t>depth * self.n + v) * self.W

    cdef int popcount(self, uint64_t *d):
        cdef int i, c = 0
        for i in range(self.W):
            c += __builtin_popcountll(d[i])
        return c

    cdef void support(self, uint64_t *d):
        cdef int i, j, t
        cdef uint64_t word
        for j in range(self.W):
            self.sup[j] = 0
        for i in range(self.W):
            word = d[i]
            while word:
                t = i * 64 + __builtin_ctzll(word)
                word &= word - 1
                for j in range(self.W):
                    self.sup[j] |= self.tadj[t * self.W + j]

    cdef bint arc_consistency(self, int depth, int qlen):
        cdef int w, v, k, j, head
        cdef uint64_t *dv
        cdef uint64_t x, changed, nonempty
        # LIFO like the Python list.pop()
        while qlen > 0:
            qlen -= 1
            w = self.queue[qlen]
            self.inq[w] = 0
            self.support(self.dom(depth, w))
            for k in range(self.nb_start[w], self.nb_start[w + 1]):
                v = self.nb_list[k]
                if self.assigned[v] >= 0:
                    continue
                dv = self.dom(depth, v)
                changed = 0
                nonempty = 0
                for j in range(self.W):
                    x = dv[j] & self.sup[j]
                    changed |= x ^ dv[j]
                    nonempty |= x
                if changed:
                    if not nonempty:
                        return False
                    for j in range(self.W):
                        dv[j] &= self.sup[j]
                    if not self.inq[v]:
                        self.queue[qlen] = v
                        qlen += 1
                        self.inq[v] = 1
        return True

    cdef int pick(self, int depth):
        cdef int v, c, best = -1, bc = 1 << 30
        if not self.mrv:
            for v in range(self.n):
                if self.assigned[v] < 0:
                    return v
        for v in range(self.n):
            if self.assigned[v] < 0:
                c = self.popcount(self.dom(depth, v))
                if c < bc:
                    best = v
                    bc = c
        return best

    cdef bint rec(self, int depth) except -1:
        cdef int v, t, wi, k, w, j, qlen, i
        cdef uint64_t word, x, changed, nonempty
        cdef uint64_t *d
        cdef uint64_t *nd
        cdef uint64_t *dw
        cdef bint ok
        if depth == self.n:
            self.sols.append(tuple([self.assigned[i] for i in range(self.n)]))
            if self.limit and len(self.sols) >= self.limit:
                self.status = LIMIT
                return True
            return False
        v = self.pick(depth)
        d = self.dom(depth, v)
        for wi in range(self.W):
            word = d[wi]
            while word:
                t = wi * 64 + __builtin_ctzll(word)
                word &= word - 1
                self.nodes += 1
                if self.node_limit and self.nodes > self.node_limit:
                    self.status = BUDGET
                    return True
                if self.deadline and self.nodes % CHECK_EVERY == 0:
                    if time.monotonic() > self.deadline:
                        self.status = BUDGET
                        return True
                memcpy(self.dom(depth + 1, 0), self.dom(depth, 0),
                       sizeof(uint64_t) * self.n * self.W)
                nd = self.dom(depth + 1, v)
                for j in range(self.W):
                    nd[j] = 0
                nd[t >> 6] = (<uint64_t>1) << (t & 63)
                self.assigned[v] = t
                ok = True
                qlen = 0
                for k in range(self.nb_start[v], self.nb_start[v + 1]):
                    w = self.nb_list[k]
                    if self.assigned[w] >= 0:
                        continue
                    dw = self.dom(depth + 1, w)
                    changed = 0
                    nonempty = 0
                    for j in range(self.W):
                        x = dw[j] & self.tadj[t * self.W + j]
                        changed |= x ^ dw[j]
                        nonempty |= x
                    if not nonempty:
                        ok = False
                        break
                    if changed:
                        for j in range(self.W):
                            dw[j] &= self.tadj[t * self.W + j]
                        if self.ac and not self.inq[w]:
                            self.queue[qlen] = w
                            qlen += 1
                            self.inq[w] = 1
                if not ok:
                    for i in range(qlen):
                        self.inq[self.queue[i]] = 0
                elif self.ac and qlen:
                    # match the Python kernel, which pops from the end of the
                    # changed list in insertion order
                    ok = self.arc_consistency(depth + 1, qlen)
                    if not ok:
                        for i in range(self.n):
                            self.inq[i] = 0
                if ok and self.rec(depth + 1):
                    return True
                self.assigned[v] = -1
        return False


def search(src_nbrs, tgt_adj, domains, mrv, ac, limit, node_limit, deadline):
    cdef _Search s = _Search()
    cdef int n = len(src_nbrs)
    cdef int T = len(tgt_adj)
    cdef int W = max(1, (T + 63) // 64)
    cdef int i, j, k, total
    cdef object mask
    s.n = n
    s.T = T
    s.W = W
    s.mrv = 1 if mrv else 0
    s.ac = 1 if ac else 0
    s.limit = limit or 0
    s.node_limit = node_limit or 0
    s.deadline = deadline or 0.0
    s.nodes = 0
    s.status = DONE
    s.sols = []
    if n == 0:
        return [()], 0, (LIMIT if limit == 1 else DONE)
    for d in domains:
        if not d:
            return [], 0, DONE
    total = sum(len(x) for x in src_nbrs)
    s.nb_start = <int *> calloc(n + 1, sizeof(int))
    s.nb_list = <int *> calloc(max(1, total), sizeof(int))
    s.tadj = <uint64_t *> calloc(<size_t>T * W, sizeof(uint64_t))
    s.doms = <uint64_t *> calloc(<size_t>(n + 1) * n * W, sizeof(uint64_t))
    s.sup = <uint64_t *> calloc(W, sizeof(uint64_t))
    s.assigned = <int *> calloc(n, sizeof(int))
    s.queue = <int *> calloc(n, sizeof(int))
    s.inq = <char *> calloc(n, sizeof(char))
    if (s.nb_start == NULL or s.nb_list == NULL or s.tadj == NULL or s.doms == NULL
            or s.sup == NULL or s.assigned == NULL or s.queue == NULL or s.inq == NULL):
        raise MemoryError()
    k = 0
    for i in range(n):
        s.nb_start[i] = k
        for j in src_nbrs[i]:
            s.nb_list[k] = j
            k += 1
        s.assigned[i] = -1
    s.nb_start[n] = k
    mask_words = (1 << 64) - 1
    for i in range(T):
        mask = tgt_adj[i]
        for j in range(W):
            s.tadj[i * W + j] = (mask >> (64 * j)) & mask_words
    for i in range(n):
        mask = domains[i]
        for j in range(W):
            s.doms[i * W + j] = (mask >> (64 * j)) & mask_words
    s.rec(0)
    return s.sols, s.nodes, s.status
