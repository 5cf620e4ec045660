"""Roadmap generators and prior calibration.

Three topologies: k-nearest-neighbor PRM, 4-connected grid, and a sparse
visibility roadmap. Construction only places vertices and edges; collision
truth and the prior come from ``label_and_calibrate`` against a scene.
"""

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .geometry import evaluate_segment
from .roadmap import EdgeState, Roadmap
from .values import capacity_from_prob, weight_from_prob

PERFECT = "PERFECT"
NOISY = "NOISY"
NONE = "NONE"


@dataclass
class PriorCalibration:
    mode: str = NOISY
    a: float = 0.3
    b: float = 0.4
    c: float = 0.6
    d: float = 0.7
    seed: int = 0

    def __post_init__(self):
        if self.mode not in (PERFECT, NOISY, NONE):
            raise ValueError(f"unknown calibration mode {self.mode!r}")
        if self.mode == NOISY and not (
            0.0 <= self.a < self.b <= self.c < self.d <= 1.0
        ):
            raise ValueError("NOISY intervals must satisfy 0 <= a < b <= c < d <= 1")


def _empty_roadmap(coords):
    return Roadmap(np.asarray(coords, dtype=float), [], [])


def prm(scene, n_vertices, k_neighbors=None, seed=0, n_edges=None):
    """Uniform samples joined to their k nearest neighbors.

    Samples inside obstacles are retained; collision status lives on edges.
    When ``n_edges`` is given instead of k, the neighbor count is tuned by
    binary search so the deduplicated edge total lands nearest the target.
    """
    if n_vertices < 2:
        raise ValueError("n_vertices must be >= 2")
    if (k_neighbors is None) == (n_edges is None):
        raise ValueError("give exactly one of k_neighbors, n_edges")
    if k_neighbors is not None and k_neighbors < 1:
        raise ValueError("k_neighbors must be >= 1")
    rng = np.random.default_rng(seed)
    pts = scene.sample_uniform(rng, n_vertices)
    tree = cKDTree(pts)
    k_cap = min(n_vertices - 1, max(k_neighbors or 0, 64))
    _, nbr = tree.query(pts, k=k_cap + 1)
    nbr = np.atleast_2d(nbr)[:, 1:]  # drop each point itself

    def pairs_for(k):
        out = set()
        for i in range(n_vertices):
            for j in nbr[i, :k]:
                out.add((i, int(j)) if i < j else (int(j), i))
        return out

    if k_neighbors is not None:
        k = k_neighbors
    else:
        lo, hi = 1, k_cap
        while lo < hi:  # smallest k reaching the target, counts are monotone
            mid = (lo + hi) // 2
            if len(pairs_for(mid)) >= n_edges:
                hi = mid
            else:
                lo = mid + 1
        k = lo
        if k > 1 and abs(len(pairs_for(k - 1)) - n_edges) <= abs(
            len(pairs_for(k)) - n_edges
        ):
            k = k - 1
    rm = _empty_roadmap(pts)
    for u, v in sorted(pairs_for(min(k, k_cap))):
        rm.add_edge(u, v, 0.5)
    return rm


def grid(scene, rows, cols):
    """4-connected rows x cols lattice spanning the scene bounds."""
    if rows < 2 or cols < 2:
        raise ValueError("rows and cols must be >= 2")
    if scene.bounds.shape[0] != 2:
        raise ValueError("grid roadmaps require a 2-D scene")
    xs = np.linspace(scene.bounds[0, 0], scene.bounds[0, 1], cols)
    ys = np.linspace(scene.bounds[1, 0], scene.bounds[1, 1], rows)
    coords = [(xs[c], ys[r]) for r in range(rows) for c in range(cols)]
    rm = _empty_roadmap(coords)
    for r in range(rows):
        for c in range(cols):
            i = r * cols + c
            if c + 1 < cols:
                rm.add_edge(i, i + 1, 0.5)
            if r + 1 < rows:
                rm.add_edge(i, i + cols, 0.5)
    return rm


def sparse_roadmap(scene, n_attempts, visibility_radius, seed=0):
    """Visibility-style sparse roadmap.

    A sample becomes a guard when no guard lies within visibility_radius,
    a connector when it can see guards of two or more disconnected
    components (against base obstacles only, so one roadmap serves both
    toggle variants of a scene), and is discarded otherwise.
    """
    if n_attempts < 1:
        raise ValueError("n_attempts must be >= 1")
    rng = np.random.default_rng(seed)
    base = scene.with_toggles(False)
    coords = []
    guards = []
    comp = {}  # guard vertex -> component root

    def find(v):
        while comp[v] != v:
            comp[v] = comp[comp[v]]
            v = comp[v]
        return v

    edges = []
    for _ in range(n_attempts):
        x = scene.sample_uniform(rng, 1)[0]
        near = [
            g
            for g in guards
            if np.linalg.norm(coords[g] - x) <= visibility_radius
        ]
        if not near:
            coords.append(x)
            v = len(coords) - 1
            guards.append(v)
            comp[v] = v
            continue
        visible = [g for g in near if evaluate_segment(base, coords[g], x)]
        roots = {}
        for g in visible:
            roots.setdefault(find(g), g)
        if len(roots) < 2:
            continue
        coords.append(x)
        v = len(coords) - 1
        comp[v] = v
        for g in roots.values():
            edges.append((v, g))
            comp[find(g)] = find(v)
    rm = _empty_roadmap(np.stack(coords) if coords else np.zeros((0, scene.bounds.shape[0])))
    for u, v in edges:
        rm.add_edge(u, v, 0.5)
    return rm


def label_and_calibrate(roadmap, scene, calibration):
    """Assign ground truth and a calibrated prior to every edge.

    Truth comes from evaluating each edge's segment against the scene's
    active obstacles. The prior overwrites roadmap.p (and the derived
    weight/capacity): exact for PERFECT, interval-uniform for NOISY, a
    flat 0.5 for NONE. Any prior evaluation state is cleared: the prior
    defines a fresh epoch and evaluations happen after it. Returns the
    truth table (edge id -> free?).
    """
    rng = np.random.default_rng(calibration.seed)
    truth = {}
    for eid in range(roadmap.n_edges):
        u, v = roadmap.edge_vertices(eid)
        free = evaluate_segment(scene, roadmap.coords[u], roadmap.coords[v])
        truth[eid] = free
        if calibration.mode == PERFECT:
            p = 1.0 if free else 0.0
        elif calibration.mode == NONE:
            p = 0.5
        elif free:
            p = float(rng.uniform(calibration.c, calibration.d))
        else:
            p = float(rng.uniform(calibration.a, calibration.b))
        roadmap.p[eid] = p
        roadmap.p_w[eid] = weight_from_prob(p)
        roadmap.p_c[eid] = capacity_from_prob(p)
        roadmap.state[eid] = EdgeState.UNKNOWN
    return truth
