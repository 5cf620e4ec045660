"""Reference strategies: path-only search, cut-only search, and plain BFS.

All three reach a certified verdict on every instance; they differ in how
many oracle evaluations they spend getting there.
"""

import time
from collections import deque

from .ipc import (
    IterationStats,
    Verdict,
    evaluate_cut_candidate,
    evaluate_path_candidate,
    frontier_blocked_cut,
)
from .oracle import EvaluationLedger, evaluate_edge
from .roadmap import EdgeState
from .search import CandidatePath, bfs_tree, most_probable_cut, most_probable_path


def _finish(stats, ledger, t0, feasible, path, cut):
    stats.n_evaluations = ledger.n_evaluations
    stats.wall_time_us = (time.perf_counter_ns() - t0) / 1000.0
    return Verdict(feasible, path, cut, stats)


def run_path_only(roadmap, oracle, on_iteration=None):
    """Repeat most-probable-path queries until one survives evaluation.

    Infeasibility is only detected once no finite-weight path remains, at
    which point the blocked frontier around the start certifies it.
    """
    if roadmap.v_s is None or roadmap.v_g is None:
        raise ValueError("roadmap has no attached query")
    t0 = time.perf_counter_ns()
    ledger = EvaluationLedger()
    stats = IterationStats()
    edges = list(zip(roadmap.eu, roadmap.ev))
    while True:
        stats.n_iterations += 1
        stats.n_path_calls += 1
        path = most_probable_path(
            roadmap.n_vertices, edges, roadmap.p_w, roadmap.v_s, roadmap.v_g
        )
        if path is None:
            return _finish(stats, ledger, t0, False, None, frontier_blocked_cut(roadmap))
        if evaluate_path_candidate(path, roadmap, oracle, ledger):
            return _finish(stats, ledger, t0, True, path, None)
        if on_iteration is not None:
            on_iteration(stats, ledger)


def _passable_path(roadmap):
    """Recover a start-goal path over confirmed-passable edges."""
    seen, pred_v, pred_e = bfs_tree(
        roadmap.n_vertices,
        list(zip(roadmap.eu, roadmap.ev)),
        roadmap.v_s,
        usable=roadmap.is_passable,
    )
    assert seen[roadmap.v_g], "no passable path despite exhausted cuts"
    verts = [roadmap.v_g]
    eids = []
    while verts[-1] != roadmap.v_s:
        eids.append(pred_e[verts[-1]])
        verts.append(pred_v[verts[-1]])
    verts.reverse()
    eids.reverse()
    total = sum(roadmap.p_w[e] for e in eids)
    return CandidatePath(verts, eids, total)


def run_cut_only(roadmap, oracle, on_iteration=None):
    """Repeat whole-graph most-probable-cut queries until one is confirmed.

    A missing cut means the start and goal are joined by edges of infinite
    capacity, i.e. confirmed-passable ones, so feasibility follows and the
    witness path is recovered by BFS over those edges.
    """
    if roadmap.v_s is None or roadmap.v_g is None:
        raise ValueError("roadmap has no attached query")
    t0 = time.perf_counter_ns()
    ledger = EvaluationLedger()
    stats = IterationStats()
    edges = list(zip(roadmap.eu, roadmap.ev))
    while True:
        stats.n_iterations += 1
        stats.record_cut_call(roadmap.n_vertices)
        cut = most_probable_cut(
            roadmap.n_vertices, edges, roadmap.p_c, [roadmap.v_s], [roadmap.v_g]
        )
        if cut is None:
            return _finish(stats, ledger, t0, True, _passable_path(roadmap), None)
        if evaluate_cut_candidate(cut, roadmap, oracle, ledger):
            return _finish(stats, ledger, t0, False, None, cut)
        if on_iteration is not None:
            on_iteration(stats, ledger)


def run_bfs_feasibility(roadmap, oracle, on_iteration=None):
    """Breadth-first flood from the start, evaluating edges as they appear.

    Vertices leave a FIFO queue in discovery order; their incident edges are
    taken in index order, undetermined ones evaluated once, and only
    passable edges expand the frontier. The prior is ignored except for the
    deterministic values baked into it.
    """
    if roadmap.v_s is None or roadmap.v_g is None:
        raise ValueError("roadmap has no attached query")
    t0 = time.perf_counter_ns()
    ledger = EvaluationLedger()
    stats = IterationStats()
    stats.n_iterations = 1
    adjacency = roadmap.adjacency()
    pred_v = [-1] * roadmap.n_vertices
    pred_e = [-1] * roadmap.n_vertices
    seen = [False] * roadmap.n_vertices
    seen[roadmap.v_s] = True
    queue = deque([roadmap.v_s])
    while queue:
        v = queue.popleft()
        for w, eid in sorted(adjacency[v], key=lambda t: t[1]):
            if roadmap.state[eid] == EdgeState.UNKNOWN and 0.0 < roadmap.p[eid] < 1.0:
                evaluate_edge(ledger, oracle, roadmap, eid)
            if not roadmap.is_passable(eid) or seen[w]:
                continue
            seen[w] = True
            pred_v[w] = v
            pred_e[w] = eid
            queue.append(w)
            if w == roadmap.v_g:
                verts = [w]
                eids = []
                while verts[-1] != roadmap.v_s:
                    eids.append(pred_e[verts[-1]])
                    verts.append(pred_v[verts[-1]])
                verts.reverse()
                eids.reverse()
                total = sum(roadmap.p_w[e] for e in eids)
                path = CandidatePath(verts, eids, total)
                return _finish(stats, ledger, t0, True, path, None)
        if on_iteration is not None:
            on_iteration(stats, ledger)
    return _finish(stats, ledger, t0, False, None, frontier_blocked_cut(roadmap))
