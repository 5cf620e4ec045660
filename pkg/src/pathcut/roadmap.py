"""Prior-roadmap data model: vertices, edges, priors, derived edge values.

A roadmap is a simple undirected graph. Each edge carries a prior existence
probability ``p``, a derived path weight ``p_w``, a derived cut capacity
``p_c``, and an evaluation state. Evaluating an edge (collision check)
permanently pins its values: FREE gives (p_w, p_c) = (0, INF), COLLISION
gives (INF, 0).
"""

from enum import IntEnum

import numpy as np

from .values import INF, capacity_from_prob, weight_from_prob

ATTACH_K = 10  # nearest-vertex candidates tried when embedding a query


class EdgeState(IntEnum):
    UNKNOWN = 0
    FREE = 1
    COLLISION = 2


class QueryNotEmbeddable(Exception):
    """Start or goal could not be connected collision-free to the roadmap."""


class Roadmap:
    """Mutable augmented roadmap owned by a single algorithm run.

    Vertices are integer indices into ``coords`` (one configuration per
    row). Edges are stored as parallel arrays (``eu[i] < ev[i]``) plus a
    lookup dict. ``v_s``/``v_g`` are set by attach_query.
    """

    def __init__(self, coords, edges, p):
        coords = np.asarray(coords, dtype=float)
        if coords.ndim != 2 or coords.shape[1] < 2:
            raise ValueError("coords must be (n, d) with d >= 2")
        if not np.isfinite(coords).all():
            raise ValueError("coordinates must be finite")
        self.coords = coords
        self.eu = []
        self.ev = []
        self.edge_index = {}
        self.p = []
        self.p_w = []
        self.p_c = []
        self.state = []
        self.v_s = None
        self.v_g = None
        self._adjacency = None
        for (u, v), prob in zip(edges, p, strict=True):
            self.add_edge(u, v, prob)

    @property
    def n_vertices(self):
        return self.coords.shape[0]

    @property
    def n_edges(self):
        return len(self.eu)

    @property
    def dim(self):
        return self.coords.shape[1]

    def add_vertex(self, config):
        config = np.asarray(config, dtype=float)
        if config.shape != (self.dim,):
            raise ValueError("configuration dimension mismatch")
        self.coords = np.vstack([self.coords, config[None, :]])
        self._adjacency = None
        return self.n_vertices - 1

    def add_edge(self, u, v, prob, state=EdgeState.UNKNOWN):
        if u == v:
            raise ValueError(f"self-loop at vertex {u}")
        if u > v:
            u, v = v, u
        if (u, v) in self.edge_index:
            raise ValueError(f"duplicate edge ({u}, {v})")
        if not 0 <= u and v < self.n_vertices:
            raise ValueError(f"edge ({u}, {v}) out of vertex range")
        eid = len(self.eu)
        self.edge_index[(u, v)] = eid
        self.eu.append(u)
        self.ev.append(v)
        self.p.append(prob)
        if state == EdgeState.FREE:
            self.p_w.append(0.0)
            self.p_c.append(INF)
        elif state == EdgeState.COLLISION:
            self.p_w.append(INF)
            self.p_c.append(0.0)
        else:
            self.p_w.append(weight_from_prob(prob))
            self.p_c.append(capacity_from_prob(prob))
        self.state.append(EdgeState(state))
        self._adjacency = None
        return eid

    def edge_vertices(self, eid):
        return self.eu[eid], self.ev[eid]

    def is_deterministic(self, eid):
        """True when the edge needs no evaluation: prior-certain or evaluated."""
        return (
            self.state[eid] != EdgeState.UNKNOWN
            or self.p[eid] == 0.0
            or self.p[eid] == 1.0
        )

    def is_passable(self, eid):
        """Edge usable by a certified path: confirmed FREE or prior-certain p=1."""
        return self.state[eid] == EdgeState.FREE or (
            self.state[eid] == EdgeState.UNKNOWN and self.p[eid] == 1.0
        )

    def is_blocked(self, eid):
        """Edge usable by a certified cut: confirmed COLLISION or prior-certain p=0."""
        return self.state[eid] == EdgeState.COLLISION or (
            self.state[eid] == EdgeState.UNKNOWN and self.p[eid] == 0.0
        )

    def adjacency(self):
        """vertex -> list of (neighbor, edge id), cached until mutation."""
        if self._adjacency is None:
            adj = [[] for _ in range(self.n_vertices)]
            for eid, (u, v) in enumerate(zip(self.eu, self.ev)):
                adj[u].append((v, eid))
                adj[v].append((u, eid))
            self._adjacency = adj
        return self._adjacency

    def copy(self):
        rm = Roadmap.__new__(Roadmap)
        rm.coords = self.coords.copy()
        rm.eu = list(self.eu)
        rm.ev = list(self.ev)
        rm.edge_index = dict(self.edge_index)
        rm.p = list(self.p)
        rm.p_w = list(self.p_w)
        rm.p_c = list(self.p_c)
        rm.state = list(self.state)
        rm.v_s = self.v_s
        rm.v_g = self.v_g
        rm._adjacency = None
        return rm


def record_evaluation(roadmap, eid, status):
    """Pin an UNKNOWN edge to its revealed ground-truth status."""
    if roadmap.state[eid] != EdgeState.UNKNOWN:
        raise ValueError(f"edge {eid} already evaluated ({roadmap.state[eid].name})")
    if status == EdgeState.FREE:
        roadmap.p_w[eid] = 0.0
        roadmap.p_c[eid] = INF
    elif status == EdgeState.COLLISION:
        roadmap.p_w[eid] = INF
        roadmap.p_c[eid] = 0.0
    else:
        raise ValueError(f"invalid evaluation status: {status}")
    roadmap.state[eid] = EdgeState(status)


def _connect_endpoint(roadmap, config, segment_free, k):
    """Match or insert one query endpoint; returns its vertex index."""
    config = np.asarray(config, dtype=float)
    d2 = np.sum((roadmap.coords - config[None, :]) ** 2, axis=1)
    order = np.argsort(d2, kind="stable")
    nearest = int(order[0])
    if d2[nearest] == 0.0:
        return nearest
    vq = roadmap.add_vertex(config)
    for cand in order[:k]:
        cand = int(cand)
        if segment_free(config, roadmap.coords[cand]):
            roadmap.add_edge(vq, cand, 1.0, state=EdgeState.FREE)
            return vq
    raise QueryNotEmbeddable(
        f"no collision-free connection among the {k} nearest vertices"
    )


def attach_query(roadmap, start, goal, oracle, k=ATTACH_K):
    """Embed start and goal into the roadmap.

    Each endpoint either matches an existing vertex exactly or becomes a new
    vertex joined to the nearest reachable vertex by an edge confirmed
    collision-free through ``oracle`` (p=1). Raises QueryNotEmbeddable when
    no candidate segment among the k nearest vertices is free; the instance
    is rejected rather than declared infeasible.
    """
    if roadmap.n_vertices == 0:
        raise ValueError("cannot attach a query to an empty roadmap")
    segment_free = getattr(oracle, "segment_free", oracle)
    roadmap.v_s = _connect_endpoint(roadmap, start, segment_free, k)
    roadmap.v_g = _connect_endpoint(roadmap, goal, segment_free, k)
    return roadmap


def save_roadmap(roadmap, path):
    """Write the text roadmap format: header, vertex lines, edge lines."""
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(
            f"dim {roadmap.dim} vertices {roadmap.n_vertices} "
            f"edges {roadmap.n_edges}\n"
        )
        for row in roadmap.coords:
            fh.write(" ".join(repr(float(x)) for x in row) + "\n")
        for u, v, prob in zip(roadmap.eu, roadmap.ev, roadmap.p):
            fh.write(f"{u} {v} {prob!r}\n")


def load_roadmap(path):
    with open(path, encoding="utf-8") as fh:
        header = fh.readline().split()
        if len(header) != 6 or header[0] != "dim" or header[2] != "vertices":
            raise ValueError(f"{path}: malformed roadmap header")
        dim, n, m = int(header[1]), int(header[3]), int(header[5])
        coords = np.empty((n, dim))
        for i in range(n):
            coords[i] = [float(x) for x in fh.readline().split()]
        edges, p = [], []
        for _ in range(m):
            parts = fh.readline().split()
            u, v, prob = int(parts[0]), int(parts[1]), float(parts[2])
            if not u < v:
                raise ValueError(f"{path}: edge endpoints must satisfy u < v")
            edges.append((u, v))
            p.append(prob)
    return Roadmap(coords, edges, p)


def save_truth(path, roadmap, truth):
    """Sibling truth/prior file: one ``u v status p`` line per edge."""
    with open(path, "w", encoding="utf-8") as fh:
        for eid, (u, v) in enumerate(zip(roadmap.eu, roadmap.ev)):
            status = "FREE" if truth[eid] else "COLLISION"
            fh.write(f"{u} {v} {status} {roadmap.p[eid]!r}\n")


def load_truth(path):
    """Returns (edge list, truth list of bool, prior list)."""
    edges, truth, p = [], [], []
    with open(path, encoding="utf-8") as fh:
        for line in fh:
            parts = line.split()
            if not parts:
                continue
            edges.append((int(parts[0]), int(parts[1])))
            truth.append(parts[2] == "FREE")
            p.append(float(parts[3]))
    return edges, truth, p
