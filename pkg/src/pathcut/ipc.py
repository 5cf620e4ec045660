"""Iterative path and cut finding over the whole roadmap.

Alternates most-probable-path search (certifying connectivity) with
most-probable-cut search (certifying disconnectivity), evaluating only the
candidates' edges, until one candidate is confirmed. Complete: every
non-terminal iteration evaluates at least one new edge.
"""

import time
from dataclasses import dataclass, field

from .oracle import EvaluationLedger, evaluate_edge
from .roadmap import EdgeState
from .search import (
    CandidateCut,
    CandidatePath,
    bfs_tree,
    most_probable_cut,
    most_probable_path,
)
from .values import INF, capacity_from_prob


@dataclass
class IterationStats:
    n_iterations: int = 0
    n_evaluations: int = 0
    n_path_calls: int = 0
    n_cut_calls: int = 0
    max_cut_input_vertices: int = 0
    wall_time_us: float = 0.0
    cut_input_sizes: list = field(default_factory=list)

    def record_cut_call(self, n_vertices):
        self.n_cut_calls += 1
        self.cut_input_sizes.append(n_vertices)
        if n_vertices > self.max_cut_input_vertices:
            self.max_cut_input_vertices = n_vertices


@dataclass
class Verdict:
    """Terminal certificate: a confirmed path or a confirmed cut."""

    feasible: bool
    path: CandidatePath | None
    cut: CandidateCut | None
    stats: IterationStats


def evaluate_path_candidate(path, roadmap, oracle, ledger):
    """Evaluate every undetermined edge of the path, in order.

    True iff all path edges end up traversable (confirmed FREE or
    prior-certain p=1). Deterministic edges are never evaluated.
    """
    for eid in path.edges:
        if roadmap.state[eid] == EdgeState.UNKNOWN and 0.0 < roadmap.p[eid] < 1.0:
            evaluate_edge(ledger, oracle, roadmap, eid)
    return all(roadmap.is_passable(eid) for eid in path.edges)


def evaluate_cut_candidate(cut, roadmap, oracle, ledger):
    """Evaluate every undetermined edge of the cut.

    True iff all cut edges end up blocked (confirmed COLLISION or
    prior-certain p=0).
    """
    for eid in cut.edges:
        if roadmap.state[eid] == EdgeState.UNKNOWN and 0.0 < roadmap.p[eid] < 1.0:
            evaluate_edge(ledger, oracle, roadmap, eid)
    return all(roadmap.is_blocked(eid) for eid in cut.edges)


def choose_cut_edge(path_edges, roadmap, restrict=None):
    """Force the next candidate cut through one collision edge of the path.

    Picks the center edge of the longest maximal run of consecutive blocked
    edges along the path (earliest run on ties; lower middle for even
    runs), sets its capacity to 0, and raises every other considered path
    edge to INF so the cut cannot avoid the chosen edge. ``restrict``
    limits consideration to an edge subset (the chosen subgraph in the
    divide-and-conquer variant).
    """
    considered = [
        eid for eid in path_edges if restrict is None or eid in restrict
    ]
    runs = []  # (length, start position) over `considered`
    start = None
    for i, eid in enumerate(considered):
        if roadmap.is_blocked(eid):
            if start is None:
                start = i
        elif start is not None:
            runs.append((i - start, start))
            start = None
    if start is not None:
        runs.append((len(considered) - start, start))
    if not runs:
        raise ValueError("path contains no collision edge")
    best_len, best_start = max(runs, key=lambda r: (r[0], -r[1]))
    chosen = considered[best_start + (best_len - 1) // 2]
    for eid in considered:
        roadmap.p_c[eid] = 0.0 if eid == chosen else INF
    return chosen


def reset_edge_values(path_edges, roadmap, restrict=None):
    """Undo choose_cut_edge after a failed cut candidate."""
    for eid in path_edges:
        if restrict is not None and eid not in restrict:
            continue
        if roadmap.is_blocked(eid):
            roadmap.p_c[eid] = 0.0
        elif roadmap.is_passable(eid):
            roadmap.p_c[eid] = INF
        else:
            roadmap.p_c[eid] = capacity_from_prob(roadmap.p[eid])


def frontier_blocked_cut(roadmap):
    """Cut of blocked edges on the boundary of the v_s-reachable region.

    Valid whenever v_g is unreachable from v_s over non-blocked edges: every
    edge leaving the reachable region is blocked, and together they
    disconnect v_s from v_g in the full edge set.
    """
    edges = list(zip(roadmap.eu, roadmap.ev))
    seen, _, _ = bfs_tree(
        roadmap.n_vertices,
        edges,
        roadmap.v_s,
        usable=lambda e: not roadmap.is_blocked(e),
    )
    assert not seen[roadmap.v_g], "goal still reachable; no frontier cut exists"
    cut_edges = [
        e for e, (u, v) in enumerate(edges) if seen[u] != seen[v]
    ]
    source_side = {v for v in range(roadmap.n_vertices) if seen[v]}
    return CandidateCut(sorted(cut_edges), 0.0, source_side)


def run_ipc(roadmap, oracle, paths_per_iteration=1, on_iteration=None):
    """Run iterative path and cut finding to a certified verdict."""
    if roadmap.v_s is None or roadmap.v_g is None:
        raise ValueError("roadmap has no attached query")
    if paths_per_iteration < 1:
        raise ValueError("paths_per_iteration must be >= 1")
    t0 = time.perf_counter_ns()
    ledger = EvaluationLedger()
    stats = IterationStats()
    edges = list(zip(roadmap.eu, roadmap.ev))
    n = roadmap.n_vertices

    def finish(feasible, path, cut):
        stats.n_evaluations = ledger.n_evaluations
        stats.wall_time_us = (time.perf_counter_ns() - t0) / 1000.0
        return Verdict(feasible, path, cut, stats)

    while True:
        stats.n_iterations += 1
        last_failed = None
        for _ in range(paths_per_iteration):
            stats.n_path_calls += 1
            path = most_probable_path(n, edges, roadmap.p_w, roadmap.v_s, roadmap.v_g)
            if path is None:
                # The blocked edges already form a cut; certify it directly.
                return finish(False, None, frontier_blocked_cut(roadmap))
            if evaluate_path_candidate(path, roadmap, oracle, ledger):
                return finish(True, path, None)
            last_failed = path
        choose_cut_edge(last_failed.edges, roadmap)
        stats.record_cut_call(n)
        cut = most_probable_cut(
            n, edges, roadmap.p_c, [roadmap.v_s], [roadmap.v_g]
        )
        if cut is not None and evaluate_cut_candidate(cut, roadmap, oracle, ledger):
            return finish(False, None, cut)
        reset_edge_values(last_failed.edges, roadmap)
        if on_iteration is not None:
            on_iteration(stats, ledger)
        assert stats.n_iterations <= roadmap.n_edges + 1, "progress violated"
