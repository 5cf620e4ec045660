"""Pure-Python twin of the compiled search kernels.

Same interface as pathcut._kernels (the Cython extension). Both kernels are
order-insensitive in their observable outputs: Dijkstra's distance array and
smallest-predecessor tie rule are unique functions of the input, and the
min-cut side mask is the inclusion-minimal source side, which is invariant
across maximum flows.
"""

from heapq import heappop, heappush

COMPILED = False


def dijkstra(n, indptr, nbr, eid, weights, source):
    """Single-source shortest paths over a CSR adjacency.

    indptr/nbr/eid describe the undirected adjacency (each edge appears in
    both endpoint rows); weights is indexed by edge id and may contain +inf
    (edge excluded). Ties between equal-distance relaxations resolve to the
    smallest predecessor vertex index. Returns (dist, pred_vertex,
    pred_edge) lists with -1 marking no predecessor.
    """
    inf = float("inf")
    dist = [inf] * n
    pred_v = [-1] * n
    pred_e = [-1] * n
    dist[source] = 0.0
    heap = [(0.0, source)]
    done = [False] * n
    while heap:
        d, u = heappop(heap)
        if done[u]:
            continue
        done[u] = True
        for i in range(indptr[u], indptr[u + 1]):
            w = weights[eid[i]]
            if w == inf:
                continue
            v = nbr[i]
            if done[v]:
                continue
            nd = d + w
            if nd < dist[v]:
                dist[v] = nd
                pred_v[v] = u
                pred_e[v] = eid[i]
                heappush(heap, (nd, v))
            elif nd == dist[v] and u < pred_v[v]:
                pred_v[v] = u
                pred_e[v] = eid[i]
    return dist, pred_v, pred_e


class _PushRelabel:
    """Highest-label push-relabel with gap and periodic global relabeling.

    Runs to a genuine max flow (excess drained back to the source) so the
    residual supports source-side reachability extraction.
    """

    def __init__(self, n, indptr, arc_head, arc_rev, arc_cap, s, t):
        self.n = n
        self.two_n = 2 * n
        self.indptr = indptr
        self.arc_head = arc_head
        self.arc_rev = arc_rev
        self.arc_cap = arc_cap
        self.s = s
        self.t = t
        self.height = [0] * n
        self.excess = [0.0] * n
        self.current = [indptr[v] for v in range(n)]
        self.count = [0] * (self.two_n + 1)
        self.buckets = [[] for _ in range(self.two_n + 1)]
        self.in_bucket = [False] * n
        self.highest = -1
        self.relabels = 0

    def _reverse_bfs(self, root, base):
        """Label unlabeled nodes with base + residual distance to root."""
        height = self.height
        arc_cap, arc_rev = self.arc_cap, self.arc_rev
        indptr, arc_head = self.indptr, self.arc_head
        height[root] = base
        queue = [root]
        qi = 0
        while qi < len(queue):
            v = queue[qi]
            qi += 1
            dv = height[v]
            for i in range(indptr[v], indptr[v + 1]):
                w = arc_head[i]
                # Residual arc w -> v exists iff the reverse arc has capacity.
                if (
                    arc_cap[arc_rev[i]] > 0.0
                    and height[w] == self.two_n
                    and w != self.s
                ):
                    height[w] = dv + 1
                    queue.append(w)

    def global_relabel(self):
        """Exact labels: distance to t in the residual graph for nodes that
        can still reach t, n + distance to s for the rest."""
        n, two_n = self.n, self.two_n
        for v in range(n):
            self.height[v] = two_n
        self._reverse_bfs(self.t, 0)
        self.height[self.s] = two_n
        self._reverse_bfs(self.s, n)
        for h in range(two_n + 1):
            self.count[h] = 0
            self.buckets[h].clear()
        self.highest = -1
        for v in range(n):
            h = self.height[v]
            self.count[h] += 1
            self.in_bucket[v] = False
            self.current[v] = self.indptr[v]
            if self.excess[v] > 0.0 and v != self.s and v != self.t and h < two_n:
                self.buckets[h].append(v)
                self.in_bucket[v] = True
                if h > self.highest:
                    self.highest = h
        self.relabels = 0

    def activate(self, v):
        if (
            not self.in_bucket[v]
            and v != self.s
            and v != self.t
            and self.height[v] < self.two_n
        ):
            self.buckets[self.height[v]].append(v)
            self.in_bucket[v] = True
            if self.height[v] > self.highest:
                self.highest = self.height[v]

    def relabel(self, v):
        n, two_n = self.n, self.two_n
        height, count = self.height, self.count
        old_h = height[v]
        new_h = two_n
        for i in range(self.indptr[v], self.indptr[v + 1]):
            if self.arc_cap[i] > 0.0:
                cand = height[self.arc_head[i]] + 1
                if cand < new_h:
                    new_h = cand
        count[old_h] -= 1
        if count[old_h] == 0 and old_h < n:
            # Gap: every node strictly between the hole and n is cut off
            # from the sink; lift it past n.
            for u in range(n):
                if u != self.s and old_h < height[u] < n:
                    count[height[u]] -= 1
                    height[u] = n + 1
                    count[n + 1] += 1
            if new_h < n:
                new_h = n + 1
        if new_h > two_n:
            new_h = two_n
        height[v] = new_h
        count[new_h] += 1
        self.current[v] = self.indptr[v]
        self.relabels += 1

    def run(self):
        s, t, n, two_n = self.s, self.t, self.n, self.two_n
        indptr, arc_head, arc_rev = self.indptr, self.arc_head, self.arc_rev
        arc_cap, excess, height = self.arc_cap, self.excess, self.height
        # Saturate the source's arcs, then compute exact initial labels.
        for i in range(indptr[s], indptr[s + 1]):
            c = arc_cap[i]
            if c > 0.0:
                arc_cap[i] = 0.0
                arc_cap[arc_rev[i]] += c
                excess[arc_head[i]] += c
                excess[s] -= c
        self.global_relabel()
        while self.highest >= 0:
            bucket = self.buckets[self.highest]
            if not bucket:
                self.highest -= 1
                continue
            v = bucket.pop()
            self.in_bucket[v] = False
            if excess[v] <= 0.0:
                continue
            if height[v] != self.highest:
                # Stale entry (gap lift or relabel moved v); re-file it.
                self.activate(v)
                continue
            while excess[v] > 0.0 and height[v] < two_n:
                if self.current[v] == indptr[v + 1]:
                    self.relabel(v)
                    if self.relabels >= n:
                        self.global_relabel()
                        break
                    continue
                i = self.current[v]
                w = arc_head[i]
                if arc_cap[i] > 0.0 and height[v] == height[w] + 1:
                    send = excess[v] if excess[v] < arc_cap[i] else arc_cap[i]
                    arc_cap[i] -= send
                    arc_cap[arc_rev[i]] += send
                    excess[v] -= send
                    excess[w] += send
                    if excess[w] > 0.0:
                        self.activate(w)
                else:
                    self.current[v] += 1
        return excess[t]


def max_flow(n, indptr, arc_head, arc_rev, arc_cap, s, t):
    """Max flow over CSR arcs; arc_cap becomes the residual in place."""
    if s == t:
        raise ValueError("source equals sink")
    return _PushRelabel(n, indptr, arc_head, arc_rev, arc_cap, s, t).run()


def residual_reachable(n, indptr, arc_head, arc_cap, source):
    """Vertices reachable from source over arcs with positive residual."""
    seen = [False] * n
    seen[source] = True
    queue = [source]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for i in range(indptr[v], indptr[v + 1]):
            w = arc_head[i]
            if arc_cap[i] > 0.0 and not seen[w]:
                seen[w] = True
                queue.append(w)
    return seen
