"""Iterative decomposition and path and cut finding.

Pathfinding still runs over the full roadmap, but every cut search is
localized to one subgraph of a growing decomposition. An abstract graph
over substarts/subgoals (endpoints of confirmed-free cut edges) aggregates
the local cuts; global infeasibility is declared when the abstract graph
disconnects the start image from the goal image.
"""

import time

from .ipc import (
    IterationStats,
    Verdict,
    choose_cut_edge,
    evaluate_path_candidate,
    frontier_blocked_cut,
    reset_edge_values,
)
from .oracle import EvaluationLedger, evaluate_edge
from .roadmap import EdgeState
from .search import most_probable_cut, most_probable_path

SUBSTART = "SUBSTART"
SUBGOAL = "SUBGOAL"

INTRA_PAIR = "INTRA_PAIR"            # candidate substart-subgoal, same subgraph
CONFIRMED_CROSS = "CONFIRMED_CROSS"  # free cut edge between subgraphs
INTRA_SAME_TYPE = "INTRA_SAME_TYPE"  # candidate same-role pair, same subgraph


def _key(a, b):
    return (a, b) if a < b else (b, a)


class AbstractGraph:
    """Connectivity bookkeeping over substarts/subgoals.

    Abstract vertices are roadmap vertex indices (the delta map is the
    identity, injective by construction). ``tau`` assigns each its role;
    the subgraph map Delta is read off the owning decomposition's vertex
    assignment. Edges carry a kind and a confirmation flag c.
    """

    def __init__(self, v_s, v_g):
        self.tau = {v_s: SUBSTART, v_g: SUBGOAL}
        self.kind = {_key(v_s, v_g): INTRA_PAIR}
        self.c = {_key(v_s, v_g): False}
        self.v_s = v_s
        self.v_g = v_g

    @property
    def vertices(self):
        return self.tau.keys()

    def has_edge(self, a, b):
        return _key(a, b) in self.kind

    def add_vertex(self, v, tau):
        self.tau[v] = tau

    def add_edge(self, a, b, kind, c):
        k = _key(a, b)
        self.kind[k] = kind
        self.c[k] = c

    def remove_edge(self, a, b):
        k = _key(a, b)
        del self.kind[k]
        del self.c[k]

    def confirm(self, a, b):
        k = _key(a, b)
        if k in self.c:
            self.c[k] = True

    def neighbors(self):
        adj = {v: [] for v in self.tau}
        for a, b in self.kind:
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def connected(self):
        """True iff the goal image is reachable from the start image."""
        adj = self.neighbors()
        seen = {self.v_s}
        queue = [self.v_s]
        while queue:
            v = queue.pop()
            if v == self.v_g:
                return True
            for w in adj[v]:
                if w not in seen:
                    seen.add(w)
                    queue.append(w)
        return self.v_s == self.v_g


class Decomposition:
    """Subgraph assignment plus liveness of roadmap edges.

    A vertex belongs to exactly one subgraph; an edge leaves the subgraph
    edge sets forever once it has appeared in an executed candidate cut.
    """

    def __init__(self, roadmap):
        self.roadmap = roadmap
        self.assign = [1] * roadmap.n_vertices
        self.alive = [True] * roadmap.n_edges
        self.g = 1

    def edge_subgraph(self, eid):
        """Subgraph id owning the edge, or None for retired cut edges."""
        if not self.alive[eid]:
            return None
        u, v = self.roadmap.edge_vertices(eid)
        ku = self.assign[u]
        return ku if ku == self.assign[v] else None

    def subgraph_vertices(self, k):
        return [v for v, kv in enumerate(self.assign) if kv == k]

    def subgraph_edges(self, k):
        return [
            e
            for e in range(self.roadmap.n_edges)
            if self.alive[e] and self.edge_subgraph(e) == k
        ]


def initialize_abstract_graph(roadmap):
    return AbstractGraph(roadmap.v_s, roadmap.v_g)


def reflect_path_evaluation(decomp, abstract, path):
    """Propagate an evaluated path's results into the abstract graph.

    Every maximal subpath that stays inside one subgraph and is fully
    traversable confirms (c=TRUE) the abstract edge between its boundary
    abstract vertices. Returns the per-vertex subgraph id sequence.
    """
    roadmap = decomp.roadmap
    assign = decomp.assign
    subgraph_ids = [assign[v] for v in path.vertices]
    seg_start = path.vertices[0]  # boundary abstract vertex of the segment
    seg_free = True
    for i, eid in enumerate(path.edges):
        a, b = path.vertices[i], path.vertices[i + 1]
        if assign[a] != assign[b]:
            # Crossing a confirmed-free cut edge; close the segment.
            if seg_free and seg_start != a:
                abstract.confirm(seg_start, a)
            seg_start = b
            seg_free = True
        else:
            if not roadmap.is_passable(eid):
                seg_free = False
    if seg_free and seg_start != path.vertices[-1]:
        abstract.confirm(seg_start, path.vertices[-1])
    return subgraph_ids


def choose_subgraph(decomp, path):
    """Subgraph holding the longest run of consecutive collision edges."""
    roadmap = decomp.roadmap
    runs = []  # (length, order of appearance, subgraph id)
    run_len = 0
    run_k = None
    for eid in path.edges:
        if roadmap.is_blocked(eid):
            if run_len == 0:
                run_k = decomp.edge_subgraph(eid)
            run_len += 1
        else:
            if run_len:
                runs.append((run_len, len(runs), run_k))
            run_len = 0
    if run_len:
        runs.append((run_len, len(runs), run_k))
    if not runs:
        raise ValueError("path contains no collision edge")
    best = max(runs, key=lambda r: (r[0], -r[1]))
    return best[2]


def cluster_substarts_and_subgoals(decomp, abstract, k_star):
    """Terminal sets for the local cut in subgraph k_star.

    Substart-subgoal pairs already confirmed connected (c=TRUE) are removed:
    no cut inside the subgraph can separate them, so they stay out of the
    dummy clustering.
    """
    substarts = {
        v
        for v, role in abstract.tau.items()
        if decomp.assign[v] == k_star and role == SUBSTART
    }
    subgoals = {
        v
        for v, role in abstract.tau.items()
        if decomp.assign[v] == k_star and role == SUBGOAL
    }
    for a in sorted(substarts):
        for b in sorted(subgoals):
            key = _key(a, b)
            if abstract.c.get(key, False):
                substarts.discard(a)
                subgoals.discard(b)
    return substarts, subgoals


def local_cut(decomp, k_star, substarts, subgoals):
    """Minimum cut inside subgraph k_star between the clustered terminals.

    Returns (cut, local vertex count) with the cut's edge ids and source
    side translated back to roadmap indices, or (None, count).
    """
    roadmap = decomp.roadmap
    verts = decomp.subgraph_vertices(k_star)
    local = {v: i for i, v in enumerate(verts)}
    eids = decomp.subgraph_edges(k_star)
    edges = [
        (local[roadmap.eu[e]], local[roadmap.ev[e]]) for e in eids
    ]
    p_c = [roadmap.p_c[e] for e in eids]
    cut = most_probable_cut(
        len(verts),
        edges,
        p_c,
        [local[v] for v in sorted(substarts)],
        [local[v] for v in sorted(subgoals)],
    )
    if cut is None:
        return None, len(verts)
    cut.edges = sorted(eids[e] for e in cut.edges)
    cut.source_side = {verts[i] for i in cut.source_side}
    return cut, len(verts)


def subgraph_partition(decomp, abstract, cut, k_star, oracle, ledger):
    """Split subgraph k_star along an executed candidate cut.

    Sink-side vertices move to a fresh subgraph id. Every cut edge retires
    from the edge sets; each one evaluating FREE becomes a confirmed cross
    connection, minting abstract vertices at its endpoints (subgoal on the
    source side, substart on the sink side) joined to every abstract vertex
    of their side by candidate edges. Candidate abstract edges split across
    the two sides are dropped.
    """
    roadmap = decomp.roadmap
    decomp.g += 1
    g_new = decomp.g
    for v in decomp.subgraph_vertices(k_star):
        if v not in cut.source_side:
            decomp.assign[v] = g_new

    free_cut_edges = []
    for eid in cut.edges:
        decomp.alive[eid] = False
        if roadmap.state[eid] == EdgeState.UNKNOWN and 0.0 < roadmap.p[eid] < 1.0:
            evaluate_edge(ledger, oracle, roadmap, eid)
        if roadmap.is_passable(eid):
            free_cut_edges.append(eid)

    # Drop candidate abstract edges whose endpoints were separated.
    for a, b in list(abstract.kind):
        if abstract.kind[(a, b)] != CONFIRMED_CROSS and (
            decomp.assign[a] != decomp.assign[b]
        ):
            abstract.remove_edge(a, b)

    for eid in free_cut_edges:
        u, v = roadmap.edge_vertices(eid)
        if decomp.assign[u] != k_star:
            u, v = v, u
        for w, role in ((u, SUBGOAL), (v, SUBSTART)):
            if w not in abstract.tau:
                abstract.add_vertex(w, role)
                for x in abstract.tau:
                    if x != w and decomp.assign[x] == decomp.assign[w]:
                        kind = (
                            INTRA_SAME_TYPE
                            if abstract.tau[x] == abstract.tau[w]
                            else INTRA_PAIR
                        )
                        if not abstract.has_edge(w, x):
                            abstract.add_edge(w, x, kind, False)
        abstract.add_edge(u, v, CONFIRMED_CROSS, True)
    return free_cut_edges


def check_cut_existence(abstract):
    """True when the abstract graph separates the start and goal images."""
    return not abstract.connected()


def run_idpc(roadmap, oracle, paths_per_iteration=1, on_iteration=None, trace=None):
    """Run the divide-and-conquer variant to a certified verdict.

    ``trace``, when given, receives one structured text line per iteration:
    ``iter k_star cut_size free_in_cut g |V~| |E~|``.
    """
    if roadmap.v_s is None or roadmap.v_g is None:
        raise ValueError("roadmap has no attached query")
    if paths_per_iteration < 1:
        raise ValueError("paths_per_iteration must be >= 1")
    t0 = time.perf_counter_ns()
    ledger = EvaluationLedger()
    stats = IterationStats()
    edges = list(zip(roadmap.eu, roadmap.ev))
    n = roadmap.n_vertices
    decomp = Decomposition(roadmap)
    abstract = initialize_abstract_graph(roadmap)

    def finish(feasible, path, cut):
        stats.n_evaluations = ledger.n_evaluations
        stats.wall_time_us = (time.perf_counter_ns() - t0) / 1000.0
        return Verdict(feasible, path, cut, stats)

    def emit(k_star, cut_size, free_in_cut):
        if trace is not None:
            trace.write(
                f"iter {stats.n_iterations} {k_star} {cut_size} {free_in_cut} "
                f"{decomp.g} {len(abstract.tau)} {len(abstract.kind)}\n"
            )
        if on_iteration is not None:
            on_iteration(stats, ledger, decomp, abstract)

    while True:
        stats.n_iterations += 1
        last_failed = None
        for _ in range(paths_per_iteration):
            stats.n_path_calls += 1
            path = most_probable_path(n, edges, roadmap.p_w, roadmap.v_s, roadmap.v_g)
            if path is None:
                return finish(False, None, frontier_blocked_cut(roadmap))
            if evaluate_path_candidate(path, roadmap, oracle, ledger):
                return finish(True, path, None)
            reflect_path_evaluation(decomp, abstract, path)
            last_failed = path
        k_star = choose_subgraph(decomp, last_failed)
        restrict = {
            e for e in last_failed.edges if decomp.edge_subgraph(e) == k_star
        }
        choose_cut_edge(last_failed.edges, roadmap, restrict)
        substarts, subgoals = cluster_substarts_and_subgoals(
            decomp, abstract, k_star
        )
        if not substarts or not subgoals:
            # Every remaining pair is confirmed connected (or one role is
            # absent); no valid local cut. Path progress keeps us complete.
            reset_edge_values(last_failed.edges, roadmap, restrict)
            emit(k_star, 0, 0)
            continue
        cut, n_local = local_cut(decomp, k_star, substarts, subgoals)
        reset_edge_values(last_failed.edges, roadmap, restrict)
        stats.record_cut_call(n_local + 2)
        if cut is None:
            emit(k_star, 0, 0)
            continue
        free_edges = subgraph_partition(
            decomp, abstract, cut, k_star, oracle, ledger
        )
        emit(k_star, len(cut.edges), len(free_edges))
        if check_cut_existence(abstract):
            return finish(False, None, frontier_blocked_cut(roadmap))
        assert stats.n_iterations <= roadmap.n_edges + 1, "progress violated"
