"""Feasibility detection on probabilistic prior roadmaps.

Decides whether a collision-free start-goal path exists on a roadmap whose
edges carry prior free probabilities, spending as few edge evaluations as
possible by alternating most-probable-path and most-probable-cut searches.
"""

from .baselines import run_bfs_feasibility, run_cut_only, run_path_only
from .generators import PriorCalibration, grid, label_and_calibrate, prm, sparse_roadmap
from .geometry import Scene, bundled_scene, evaluate_segment, load_scene, save_scene
from .idpc import run_idpc
from .ipc import IterationStats, Verdict, run_ipc
from .oracle import EvaluationLedger, SceneOracle, TableOracle, truth_table_from_scene
from .roadmap import (
    EdgeState,
    QueryNotEmbeddable,
    Roadmap,
    attach_query,
    load_roadmap,
    load_truth,
    save_roadmap,
    save_truth,
)
from .search import COMPILED, most_probable_cut, most_probable_path
from .values import INF, capacity_from_prob, weight_from_prob
from .verify import ground_truth_feasible, validate_verdict

__version__ = "0.1.0"

__all__ = [
    "COMPILED",
    "EdgeState",
    "EvaluationLedger",
    "INF",
    "IterationStats",
    "PriorCalibration",
    "QueryNotEmbeddable",
    "Roadmap",
    "Scene",
    "SceneOracle",
    "TableOracle",
    "Verdict",
    "attach_query",
    "bundled_scene",
    "capacity_from_prob",
    "evaluate_segment",
    "grid",
    "ground_truth_feasible",
    "label_and_calibrate",
    "load_roadmap",
    "load_scene",
    "load_truth",
    "most_probable_cut",
    "most_probable_path",
    "prm",
    "run_bfs_feasibility",
    "run_cut_only",
    "run_idpc",
    "run_ipc",
    "run_path_only",
    "save_roadmap",
    "save_scene",
    "save_truth",
    "sparse_roadmap",
    "truth_table_from_scene",
    "validate_verdict",
    "weight_from_prob",
    "__version__",
]
