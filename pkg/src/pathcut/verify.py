"""Independent checking utilities: ground truth and certificate validity.

Everything here deliberately avoids the search kernels — reachability is
union-find, disconnection checks are plain BFS — so it can stand as an
independent referee for the algorithms.
"""


class UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))
        self.rank = [0] * n

    def find(self, v):
        root = v
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[v] != root:
            self.parent[v], v = root, self.parent[v]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        if self.rank[ra] < self.rank[rb]:
            ra, rb = rb, ra
        self.parent[rb] = ra
        if self.rank[ra] == self.rank[rb]:
            self.rank[ra] += 1
        return True


def ground_truth_feasible(roadmap, truth):
    """Union-find reachability of v_g from v_s over ground-truth-free edges."""
    uf = UnionFind(roadmap.n_vertices)
    for eid, free in truth.items():
        if free:
            uf.union(*roadmap.edge_vertices(eid))
    return uf.find(roadmap.v_s) == uf.find(roadmap.v_g)


def validate_path_certificate(roadmap, path):
    """A valid feasibility proof: connected v_s->v_g walk of passable edges."""
    if path is None or not path.edges:
        return path is not None and roadmap.v_s == roadmap.v_g
    if path.vertices[0] != roadmap.v_s or path.vertices[-1] != roadmap.v_g:
        return False
    if len(path.vertices) != len(path.edges) + 1:
        return False
    for i, eid in enumerate(path.edges):
        u, v = roadmap.edge_vertices(eid)
        if {u, v} != {path.vertices[i], path.vertices[i + 1]}:
            return False
        if not roadmap.is_passable(eid):
            return False
    return True


def validate_cut_certificate(roadmap, cut):
    """A valid infeasibility proof: blocked edges whose removal disconnects.

    Every certificate edge must be confirmed blocked, and no v_s->v_g path
    may exist through the remaining edges regardless of their status.
    """
    if cut is None:
        return False
    removed = set(cut.edges)
    if any(not roadmap.is_blocked(eid) for eid in removed):
        return False
    uf = UnionFind(roadmap.n_vertices)
    for eid in range(roadmap.n_edges):
        if eid not in removed:
            uf.union(*roadmap.edge_vertices(eid))
    return uf.find(roadmap.v_s) != uf.find(roadmap.v_g)


def validate_verdict(roadmap, truth, verdict):
    """Check a verdict against ground truth and its certificate at once.

    Returns (correct, certificate_ok).
    """
    correct = verdict.feasible == ground_truth_feasible(roadmap, truth)
    if verdict.feasible:
        cert_ok = validate_path_certificate(roadmap, verdict.path)
    else:
        cert_ok = validate_cut_certificate(roadmap, verdict.cut)
    return correct, cert_ok
