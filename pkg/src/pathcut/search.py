"""Candidate search engines: most-probable path, most-probable cut, BFS.

The hot kernels (Dijkstra, push-relabel) live in a compiled extension with
a pure-Python fallback, selected at import. Set PATHCUT_PURE_PYTHON=1 to
force the fallback (used by the kernel benchmark and parity tests).

Infinite edge values never enter the flow computation: INF capacities are
replaced by the finite surrogate S+1 (S = sum of finite capacities in the
searched graph). A minimum cut that touches a surrogate edge proves every
true cut does, which is reported as NONE.
"""

import os
from dataclasses import dataclass, field

from .values import INF

if os.environ.get("PATHCUT_PURE_PYTHON"):
    from . import _kernels_py as _impl
else:
    try:
        from . import _kernels as _impl
    except ImportError:  # extension not built
        from . import _kernels_py as _impl

COMPILED = _impl.COMPILED


@dataclass
class CandidatePath:
    """Simple v_s -> v_g walk with finite total weight, pending evaluation."""

    vertices: list
    edges: list  # edge ids, aligned with consecutive vertex pairs
    total_weight: float


@dataclass
class CandidateCut:
    """Finite-capacity edge set separating sources from sinks."""

    edges: list  # sorted edge ids
    total_capacity: float
    source_side: set = field(repr=False)  # vertices on the source side


def build_csr(n_vertices, edges):
    """CSR adjacency (indptr, neighbor, edge id) over undirected edges."""
    deg = [0] * n_vertices
    for u, v in edges:
        deg[u] += 1
        deg[v] += 1
    indptr = [0] * (n_vertices + 1)
    for i in range(n_vertices):
        indptr[i + 1] = indptr[i] + deg[i]
    pos = list(indptr[:n_vertices])
    nbr = [0] * (2 * len(edges))
    eid = [0] * (2 * len(edges))
    for e, (u, v) in enumerate(edges):
        nbr[pos[u]] = v
        eid[pos[u]] = e
        pos[u] += 1
        nbr[pos[v]] = u
        eid[pos[v]] = e
        pos[v] += 1
    return indptr, nbr, eid


def most_probable_path(n_vertices, edges, p_w, v_s, v_g):
    """Minimum-total-weight path over finite-weight edges, or None.

    Minimizing the sum of weights maximizes the product of edge existence
    probabilities. Deterministic tie-breaking: smallest predecessor index.
    """
    if not 0 <= v_s < n_vertices or not 0 <= v_g < n_vertices:
        raise ValueError("source or goal vertex out of range")
    indptr, nbr, eid = build_csr(n_vertices, edges)
    dist, pred_v, pred_e = _impl.dijkstra(n_vertices, indptr, nbr, eid, p_w, v_s)
    if dist[v_g] == INF:
        return None
    verts = [v_g]
    eids = []
    v = v_g
    while v != v_s:
        eids.append(pred_e[v])
        v = pred_v[v]
        verts.append(v)
    verts.reverse()
    eids.reverse()
    return CandidatePath(verts, eids, dist[v_g])


def _build_arcs(n_vertices, edges, caps, extra_arcs):
    """Antiparallel arc pairs per undirected edge plus directed extra arcs."""
    n_arcs = 2 * len(edges) + 2 * len(extra_arcs)
    tails = [0] * n_arcs
    heads = [0] * n_arcs
    arc_caps = [0.0] * n_arcs
    arc_edge = [-1] * n_arcs
    k = 0
    for e, (u, v) in enumerate(edges):
        tails[k], heads[k], arc_caps[k], arc_edge[k] = u, v, caps[e], e
        tails[k + 1], heads[k + 1], arc_caps[k + 1], arc_edge[k + 1] = v, u, caps[e], e
        k += 2
    for u, v, c in extra_arcs:
        tails[k], heads[k], arc_caps[k] = u, v, c
        tails[k + 1], heads[k + 1], arc_caps[k + 1] = v, u, 0.0
        k += 2
    # Group by tail (CSR); rev pairs are k <-> k^1 before sorting, so track
    # the permutation.
    deg = [0] * n_vertices
    for u in tails:
        deg[u] += 1
    indptr = [0] * (n_vertices + 1)
    for i in range(n_vertices):
        indptr[i + 1] = indptr[i] + deg[i]
    pos = list(indptr[:n_vertices])
    order = [0] * n_arcs  # order[old] = new
    arc_head = [0] * n_arcs
    cap = [0.0] * n_arcs
    edge_of = [-1] * n_arcs
    for a in range(n_arcs):
        slot = pos[tails[a]]
        pos[tails[a]] += 1
        order[a] = slot
        arc_head[slot] = heads[a]
        cap[slot] = arc_caps[a]
        edge_of[slot] = arc_edge[a]
    arc_rev = [0] * n_arcs
    for a in range(0, n_arcs, 2):
        arc_rev[order[a]] = order[a + 1]
        arc_rev[order[a + 1]] = order[a]
    return indptr, arc_head, arc_rev, cap, edge_of


def most_probable_cut(n_vertices, edges, p_c, sources, sinks):
    """Minimum-capacity cut separating the source set from the sink set.

    Returns the edges crossing the source-side residual-reachability
    partition, or None when every source-sink cut contains an INF-capacity
    edge. Multi-terminal sets are clustered through an internal
    super-source/super-sink joined by surrogate-INF arcs.
    """
    sources = sorted(set(sources))
    sinks = sorted(set(sinks))
    if not sources or not sinks:
        raise ValueError("terminal sets must be nonempty")
    if set(sources) & set(sinks):
        raise ValueError("terminal sets must be disjoint")
    finite_sum = 0.0
    for e, _ in enumerate(edges):
        if p_c[e] != INF:
            finite_sum += p_c[e]
    surrogate = finite_sum + 1.0
    caps = [surrogate if p_c[e] == INF else p_c[e] for e in range(len(edges))]

    n = n_vertices
    extra = []
    if len(sources) == 1:
        s = sources[0]
    else:
        s = n
        n += 1
        extra.extend((s, v, surrogate) for v in sources)
    if len(sinks) == 1:
        t = sinks[0]
    else:
        t = n
        n += 1
        extra.extend((v, t, surrogate) for v in sinks)

    indptr, arc_head, arc_rev, cap, edge_of = _build_arcs(n, edges, caps, extra)
    _impl.max_flow(n, indptr, arc_head, arc_rev, cap, s, t)
    seen = _impl.residual_reachable(n, indptr, arc_head, cap, s)

    cut_edges = []
    total = 0.0
    for e, (u, v) in enumerate(edges):
        if seen[u] != seen[v]:
            if p_c[e] == INF:
                return None  # every true cut crosses an uncuttable edge
            cut_edges.append(e)
            total += p_c[e]
    source_side = {v for v in range(n_vertices) if seen[v]}
    return CandidateCut(sorted(cut_edges), total, source_side)


def bfs_connected(n_vertices, edges, s, t, usable=None):
    """True iff t is reachable from s; ``usable`` filters edges by id."""
    if not 0 <= s < n_vertices or not 0 <= t < n_vertices:
        raise ValueError("vertex out of range")
    if s == t:
        return True
    adj = [[] for _ in range(n_vertices)]
    for e, (u, v) in enumerate(edges):
        if usable is None or usable(e):
            adj[u].append(v)
            adj[v].append(u)
    seen = [False] * n_vertices
    seen[s] = True
    queue = [s]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for w in adj[v]:
            if w == t:
                return True
            if not seen[w]:
                seen[w] = True
                queue.append(w)
    return False


def bfs_tree(n_vertices, edges, s, usable=None):
    """Reachable set plus predecessor maps for path recovery."""
    adj = [[] for _ in range(n_vertices)]
    for e, (u, v) in enumerate(edges):
        if usable is None or usable(e):
            adj[u].append((v, e))
            adj[v].append((u, e))
    pred_v = [-1] * n_vertices
    pred_e = [-1] * n_vertices
    seen = [False] * n_vertices
    seen[s] = True
    queue = [s]
    qi = 0
    while qi < len(queue):
        v = queue[qi]
        qi += 1
        for w, e in adj[v]:
            if not seen[w]:
                seen[w] = True
                pred_v[w] = v
                pred_e[w] = e
                queue.append(w)
    return seen, pred_v, pred_e
