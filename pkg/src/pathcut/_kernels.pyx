# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled search kernels: Dijkstra and highest-label push-relabel.

Interface-identical to pathcut._kernels_py; see that module for the
algorithmic commentary. Inputs are plain Python sequences; arc_cap is
written back in place after max_flow so callers can read the residual.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport INFINITY

COMPILED = True


def dijkstra(Py_ssize_t n, indptr, nbr, eid, weights, Py_ssize_t source):
    cdef cnp.int64_t[::1] indptr_v = np.asarray(indptr, dtype=np.int64)
    cdef cnp.int64_t[::1] nbr_v = np.asarray(nbr, dtype=np.int64)
    cdef cnp.int64_t[::1] eid_v = np.asarray(eid, dtype=np.int64)
    cdef cnp.float64_t[::1] w_v = np.asarray(weights, dtype=np.float64)
    cdef cnp.ndarray[cnp.float64_t, ndim=1] dist = np.full(n, INFINITY)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pred_v = np.full(n, -1, dtype=np.int64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] pred_e = np.full(n, -1, dtype=np.int64)
    cdef cnp.float64_t[::1] dist_v = dist
    cdef cnp.int64_t[::1] pv = pred_v
    cdef cnp.int64_t[::1] pe = pred_e
    cdef cnp.uint8_t[::1] done = np.zeros(n, dtype=np.uint8)

    # Binary heap of (distance, vertex) with lazy deletion via `done`.
    cdef cnp.ndarray[cnp.float64_t, ndim=1] heap_d = np.empty(16, dtype=np.float64)
    cdef cnp.ndarray[cnp.int64_t, ndim=1] heap_x = np.empty(16, dtype=np.int64)
    cdef Py_ssize_t heap_len = 0
    cdef Py_ssize_t i, j, k, u, v, e
    cdef double d, w, nd, td
    cdef cnp.int64_t tx

    dist_v[source] = 0.0
    heap_d[0] = 0.0
    heap_x[0] = source
    heap_len = 1

    while heap_len > 0:
        d = heap_d[0]
        u = heap_x[0]
        # Pop: move last element to the root and sift down.
        heap_len -= 1
        heap_d[0] = heap_d[heap_len]
        heap_x[0] = heap_x[heap_len]
        i = 0
        while True:
            j = 2 * i + 1
            if j >= heap_len:
                break
            if j + 1 < heap_len and (
                heap_d[j + 1] < heap_d[j]
                or (heap_d[j + 1] == heap_d[j] and heap_x[j + 1] < heap_x[j])
            ):
                j += 1
            if heap_d[j] < heap_d[i] or (
                heap_d[j] == heap_d[i] and heap_x[j] < heap_x[i]
            ):
                td = heap_d[i]; heap_d[i] = heap_d[j]; heap_d[j] = td
                tx = heap_x[i]; heap_x[i] = heap_x[j]; heap_x[j] = tx
                i = j
            else:
                break
        if done[u]:
            continue
        done[u] = 1
        for k in range(indptr_v[u], indptr_v[u + 1]):
            e = eid_v[k]
            w = w_v[e]
            if w == INFINITY:
                continue
            v = nbr_v[k]
            if done[v]:
                continue
            nd = d + w
            if nd < dist_v[v]:
                dist_v[v] = nd
                pv[v] = u
                pe[v] = e
                if heap_len == heap_d.shape[0]:
                    heap_d = np.resize(heap_d, 2 * heap_len)
                    heap_x = np.resize(heap_x, 2 * heap_len)
                heap_d[heap_len] = nd
                heap_x[heap_len] = v
                # Sift up.
                i = heap_len
                heap_len += 1
                while i > 0:
                    j = (i - 1) // 2
                    if heap_d[i] < heap_d[j] or (
                        heap_d[i] == heap_d[j] and heap_x[i] < heap_x[j]
                    ):
                        td = heap_d[i]; heap_d[i] = heap_d[j]; heap_d[j] = td
                        tx = heap_x[i]; heap_x[i] = heap_x[j]; heap_x[j] = tx
                        i = j
                    else:
                        break
            elif nd == dist_v[v] and u < pv[v]:
                pv[v] = u
                pe[v] = e
    return dist, pred_v, pred_e


cdef class _PushRelabel:
    cdef Py_ssize_t n, two_n, s, t, highest, relabels
    cdef cnp.int64_t[::1] indptr, arc_head, arc_rev, current
    cdef cnp.float64_t[::1] arc_cap, excess
    cdef cnp.int64_t[::1] height, count
    cdef cnp.uint8_t[::1] in_bucket
    cdef list buckets

    def __init__(self, Py_ssize_t n, indptr, arc_head, arc_rev, arc_cap,
                 Py_ssize_t s, Py_ssize_t t):
        self.n = n
        self.two_n = 2 * n
        self.indptr = np.asarray(indptr, dtype=np.int64)
        self.arc_head = np.asarray(arc_head, dtype=np.int64)
        self.arc_rev = np.asarray(arc_rev, dtype=np.int64)
        self.arc_cap = np.asarray(arc_cap, dtype=np.float64)
        self.s = s
        self.t = t
        self.height = np.zeros(n, dtype=np.int64)
        self.excess = np.zeros(n, dtype=np.float64)
        self.current = np.asarray(self.indptr[:n], dtype=np.int64).copy()
        self.count = np.zeros(self.two_n + 1, dtype=np.int64)
        self.buckets = [[] for _ in range(self.two_n + 1)]
        self.in_bucket = np.zeros(n, dtype=np.uint8)
        self.highest = -1
        self.relabels = 0

    cdef void _reverse_bfs(self, Py_ssize_t root, Py_ssize_t base):
        cdef cnp.int64_t[::1] queue = np.empty(self.n, dtype=np.int64)
        cdef Py_ssize_t qn = 0, qi = 0, v, w, i, dv
        self.height[root] = base
        queue[qn] = root
        qn += 1
        while qi < qn:
            v = queue[qi]
            qi += 1
            dv = self.height[v]
            for i in range(self.indptr[v], self.indptr[v + 1]):
                w = self.arc_head[i]
                if (self.arc_cap[self.arc_rev[i]] > 0.0
                        and self.height[w] == self.two_n and w != self.s):
                    self.height[w] = dv + 1
                    queue[qn] = w
                    qn += 1

    cdef void global_relabel(self):
        cdef Py_ssize_t v, h
        for v in range(self.n):
            self.height[v] = self.two_n
        self._reverse_bfs(self.t, 0)
        self.height[self.s] = self.two_n
        self._reverse_bfs(self.s, self.n)
        for h in range(self.two_n + 1):
            self.count[h] = 0
            (<list>self.buckets[h]).clear()
        self.highest = -1
        for v in range(self.n):
            h = self.height[v]
            self.count[h] += 1
            self.in_bucket[v] = 0
            self.current[v] = self.indptr[v]
            if (self.excess[v] > 0.0 and v != self.s and v != self.t
                    and h < self.two_n):
                (<list>self.buckets[h]).append(v)
                self.in_bucket[v] = 1
                if h > self.highest:
                    self.highest = h
        self.relabels = 0

    cdef void activate(self, Py_ssize_t v):
        if (not self.in_bucket[v] and v != self.s and v != self.t
                and self.height[v] < self.two_n):
            (<list>self.buckets[self.height[v]]).append(v)
            self.in_bucket[v] = 1
            if self.height[v] > self.highest:
                self.highest = self.height[v]

    cdef void relabel(self, Py_ssize_t v):
        cdef Py_ssize_t old_h = self.height[v]
        cdef Py_ssize_t new_h = self.two_n
        cdef Py_ssize_t i, u, cand
        for i in range(self.indptr[v], self.indptr[v + 1]):
            if self.arc_cap[i] > 0.0:
                cand = self.height[self.arc_head[i]] + 1
                if cand < new_h:
                    new_h = cand
        self.count[old_h] -= 1
        if self.count[old_h] == 0 and old_h < self.n:
            for u in range(self.n):
                if u != self.s and old_h < self.height[u] < self.n:
                    self.count[self.height[u]] -= 1
                    self.height[u] = self.n + 1
                    self.count[self.n + 1] += 1
            if new_h < self.n:
                new_h = self.n + 1
        if new_h > self.two_n:
            new_h = self.two_n
        self.height[v] = new_h
        self.count[new_h] += 1
        self.current[v] = self.indptr[v]
        self.relabels += 1

    def run(self):
        cdef Py_ssize_t i, v, w
        cdef double c, send
        cdef list bucket
        for i in range(self.indptr[self.s], self.indptr[self.s + 1]):
            c = self.arc_cap[i]
            if c > 0.0:
                self.arc_cap[i] = 0.0
                self.arc_cap[self.arc_rev[i]] += c
                self.excess[self.arc_head[i]] += c
                self.excess[self.s] -= c
        self.global_relabel()
        while self.highest >= 0:
            bucket = <list>self.buckets[self.highest]
            if not bucket:
                self.highest -= 1
                continue
            v = bucket.pop()
            self.in_bucket[v] = 0
            if self.excess[v] <= 0.0:
                continue
            if self.height[v] != self.highest:
                self.activate(v)
                continue
            while self.excess[v] > 0.0 and self.height[v] < self.two_n:
                if self.current[v] == self.indptr[v + 1]:
                    self.relabel(v)
                    if self.relabels >= self.n:
                        self.global_relabel()
                        break
                    continue
                i = self.current[v]
                w = self.arc_head[i]
                if self.arc_cap[i] > 0.0 and self.height[v] == self.height[w] + 1:
                    send = self.excess[v]
                    if self.arc_cap[i] < send:
                        send = self.arc_cap[i]
                    self.arc_cap[i] -= send
                    self.arc_cap[self.arc_rev[i]] += send
                    self.excess[v] -= send
                    self.excess[w] += send
                    if self.excess[w] > 0.0:
                        self.activate(w)
                else:
                    self.current[v] += 1
        return self.excess[self.t]

    def residual(self):
        return np.asarray(self.arc_cap)


def max_flow(Py_ssize_t n, indptr, arc_head, arc_rev, arc_cap, Py_ssize_t s,
             Py_ssize_t t):
    """Max flow over CSR arcs; arc_cap becomes the residual in place."""
    if s == t:
        raise ValueError("source equals sink")
    pr = _PushRelabel(n, indptr, arc_head, arc_rev, arc_cap, s, t)
    flow = pr.run()
    arc_cap[:] = pr.residual().tolist()
    return flow


def residual_reachable(Py_ssize_t n, indptr, arc_head, arc_cap, Py_ssize_t source):
    """Vertices reachable from source over arcs with positive residual."""
    cdef cnp.int64_t[::1] indptr_v = np.asarray(indptr, dtype=np.int64)
    cdef cnp.int64_t[::1] head_v = np.asarray(arc_head, dtype=np.int64)
    cdef cnp.float64_t[::1] cap_v = np.asarray(arc_cap, dtype=np.float64)
    cdef cnp.ndarray[cnp.uint8_t, ndim=1] seen = np.zeros(n, dtype=np.uint8)
    cdef cnp.uint8_t[::1] seen_v = seen
    cdef cnp.int64_t[::1] queue = np.empty(n, dtype=np.int64)
    cdef Py_ssize_t qn = 0, qi = 0, v, w, i
    seen_v[source] = 1
    queue[qn] = source
    qn += 1
    while qi < qn:
        v = queue[qi]
        qi += 1
        for i in range(indptr_v[v], indptr_v[v + 1]):
            w = head_v[i]
            if cap_v[i] > 0.0 and not seen_v[w]:
                seen_v[w] = 1
                queue[qn] = w
                qn += 1
    return seen.astype(bool).tolist()
