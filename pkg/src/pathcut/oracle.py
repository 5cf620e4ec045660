"""Ground-truth edge evaluation backends and the evaluation ledger.

Edge evaluation is the expensive black box whose call count is the primary
metric. Two backends share one interface (``edge_status(roadmap, eid)``):
a geometric scene oracle and a precomputed table oracle. Benchmarks use the
table oracle so evaluation cost never pollutes wall-time measurements.
"""

from . import geometry
from .roadmap import EdgeState, record_evaluation


class EvaluationLedger:
    """Record of revealed edge statuses for one run; counts oracle calls."""

    def __init__(self):
        self.statuses = {}
        self.order = []

    @property
    def n_evaluations(self):
        return len(self.statuses)

    def record(self, eid, status):
        if eid in self.statuses:
            raise ValueError(f"edge {eid} evaluated twice")
        self.statuses[eid] = status
        self.order.append(eid)


class SceneOracle:
    """Evaluates roadmap edges geometrically against a scene."""

    def __init__(self, scene):
        self.scene = scene

    def segment_free(self, a, b):
        return geometry.evaluate_segment(self.scene, a, b)

    def edge_status(self, roadmap, eid):
        u, v = roadmap.edge_vertices(eid)
        free = self.segment_free(roadmap.coords[u], roadmap.coords[v])
        return EdgeState.FREE if free else EdgeState.COLLISION


class TableOracle:
    """Returns stored statuses; zero geometric work per query."""

    def __init__(self, truth):
        # truth: edge id -> bool (True = collision-free)
        self.truth = dict(truth)

    def edge_status(self, roadmap, eid):
        try:
            free = self.truth[eid]
        except KeyError:
            raise KeyError(f"edge {eid} absent from the truth table") from None
        return EdgeState.FREE if free else EdgeState.COLLISION


def truth_table_from_scene(scene, roadmap):
    """edge id -> bool, precomputed once per instance."""
    oracle = SceneOracle(scene)
    return {
        eid: oracle.edge_status(roadmap, eid) == EdgeState.FREE
        for eid in range(roadmap.n_edges)
    }


def evaluate_edge(ledger, oracle, roadmap, eid):
    """Single-edge evaluation primitive: one oracle call, ledger + roadmap update."""
    if roadmap.state[eid] != EdgeState.UNKNOWN:
        raise ValueError(f"edge {eid} already evaluated")
    status = oracle.edge_status(roadmap, eid)
    ledger.record(eid, status)
    record_evaluation(roadmap, eid, status)
    return status
