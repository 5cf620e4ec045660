import io
import random

import pytest

from conftest import random_instance
from pathcut import Roadmap, TableOracle, run_idpc, run_ipc
from pathcut.idpc import (
    CONFIRMED_CROSS,
    SUBGOAL,
    SUBSTART,
    AbstractGraph,
    Decomposition,
    choose_subgraph,
    cluster_substarts_and_subgoals,
    initialize_abstract_graph,
    reflect_path_evaluation,
)
from pathcut.roadmap import EdgeState, record_evaluation
from pathcut.search import CandidatePath
from pathcut.verify import (
    ground_truth_feasible,
    validate_cut_certificate,
    validate_path_certificate,
)


def chain(n_edges, p=0.5):
    coords = [[float(i), 0.0] for i in range(n_edges + 1)]
    edges = [(i, i + 1) for i in range(n_edges)]
    rm = Roadmap(coords, edges, [p] * n_edges)
    rm.v_s, rm.v_g = 0, n_edges
    return rm


def test_initial_abstract_graph():
    rm = chain(3)
    abstract = initialize_abstract_graph(rm)
    assert abstract.tau == {0: SUBSTART, 3: SUBGOAL}
    assert abstract.c == {(0, 3): False}
    assert abstract.connected()


def test_reflect_path_confirms_free_subpath():
    rm = chain(3)
    decomp = Decomposition(rm)
    abstract = initialize_abstract_graph(rm)
    for eid in range(3):
        record_evaluation(rm, eid, EdgeState.FREE)
    path = CandidatePath([0, 1, 2, 3], [0, 1, 2], 0.0)
    ids = reflect_path_evaluation(decomp, abstract, path)
    assert ids == [1, 1, 1, 1]
    assert abstract.c[(0, 3)] is True


def test_reflect_path_failed_subpath_stays_unconfirmed():
    rm = chain(3)
    decomp = Decomposition(rm)
    abstract = initialize_abstract_graph(rm)
    record_evaluation(rm, 0, EdgeState.FREE)
    record_evaluation(rm, 1, EdgeState.COLLISION)
    record_evaluation(rm, 2, EdgeState.FREE)
    path = CandidatePath([0, 1, 2, 3], [0, 1, 2], 0.0)
    reflect_path_evaluation(decomp, abstract, path)
    assert abstract.c[(0, 3)] is False


def test_choose_subgraph_longest_run():
    rm = chain(6)
    decomp = Decomposition(rm)
    # split: vertices 0-3 in subgraph 1, vertices 4-6 in subgraph 2
    for v in (4, 5, 6):
        decomp.assign[v] = 2
    decomp.alive[3] = False  # the cross edge (3,4) left the subgraph edge sets
    for eid, st in enumerate("FCFFCC"):
        record_evaluation(rm, eid, EdgeState.COLLISION if st == "C" else EdgeState.FREE)
    path = CandidatePath(list(range(7)), list(range(6)), 0.0)
    # longest collision run is edges {4,5}, inside subgraph 2
    assert choose_subgraph(decomp, path) == 2


def test_cluster_removes_confirmed_pairs():
    rm = chain(3)
    decomp = Decomposition(rm)
    abstract = AbstractGraph(0, 3)
    abstract.add_vertex(1, SUBSTART)
    abstract.add_vertex(2, SUBGOAL)
    abstract.add_edge(1, 2, "INTRA_PAIR", True)  # confirmed connected
    abstract.add_edge(0, 2, "INTRA_PAIR", False)
    substarts, subgoals = cluster_substarts_and_subgoals(decomp, abstract, 1)
    assert substarts == {0}
    assert subgoals == {3}


def test_verdict_agreement_with_ipc():
    rng = random.Random(29)
    for _ in range(250):
        rm, truth = random_instance(rng)
        v_ipc = run_ipc(rm.copy(), TableOracle(truth))
        v_idpc = run_idpc(rm.copy(), TableOracle(truth))
        assert v_ipc.feasible == v_idpc.feasible
        assert v_idpc.feasible == ground_truth_feasible(rm, truth)


def test_certificates_and_progress():
    rng = random.Random(31)
    for _ in range(150):
        rm, truth = random_instance(rng)
        verdict = run_idpc(rm, TableOracle(truth))
        assert verdict.stats.n_iterations <= verdict.stats.n_evaluations + 1
        if verdict.feasible:
            assert validate_path_certificate(rm, verdict.path)
        else:
            assert validate_cut_certificate(rm, verdict.cut)


def ladder(columns):
    """2 x columns ladder; vertex 2i bottom of column i, 2i+1 its top."""
    coords = []
    for i in range(columns):
        coords += [[float(i), 0.0], [float(i), 1.0]]
    edges = []
    for i in range(columns - 1):
        edges.append((2 * i, 2 * i + 2))
        edges.append((2 * i + 1, 2 * i + 3))
    for i in range(columns):
        edges.append((2 * i, 2 * i + 1))
    rm = Roadmap(coords, edges, [0.5] * len(edges))
    rm.v_s, rm.v_g = 0, 2 * (columns - 1)
    return rm


def blocked_ladder():
    # one stray blocked bottom edge plus a fully blocked column boundary
    rm = ladder(7)
    truth = {e: True for e in range(rm.n_edges)}
    truth[rm.edge_index[(4, 6)]] = False    # bottom, columns 2-3
    truth[rm.edge_index[(8, 10)]] = False   # bottom, columns 4-5
    truth[rm.edge_index[(9, 11)]] = False   # top, columns 4-5
    return rm, truth


def test_cut_calls_shrink_after_partition():
    # The first cut runs on the whole graph; the stray blocked edge forces a
    # partition, and the second cut sees only one side.
    rm, truth = blocked_ladder()
    verdict = run_idpc(rm, TableOracle(truth))
    assert not verdict.feasible
    sizes = verdict.stats.cut_input_sizes
    assert len(sizes) >= 2
    assert sizes[0] == rm.n_vertices + 2
    assert all(s < rm.n_vertices + 2 for s in sizes[1:])
    assert validate_cut_certificate(rm, verdict.cut)


def test_abstract_graph_never_falsely_disconnects():
    # On feasible instances the abstract graph must stay connected at every
    # iteration; disconnection would be a wrong Infeasible verdict.
    rng = random.Random(37)
    checked = 0
    for _ in range(200):
        rm, truth = random_instance(rng, max_vertices=10)
        if not ground_truth_feasible(rm, truth):
            continue
        checked += 1
        states = []
        run_idpc(
            rm,
            TableOracle(truth),
            on_iteration=lambda stats, ledger, decomp, abstract: states.append(
                abstract.connected()
            ),
        )
        assert all(states)
    assert checked >= 50


def test_trace_output_format():
    n = 12
    rm = chain(n)
    truth = {e: e != 5 for e in range(n)}
    buf = io.StringIO()
    verdict = run_idpc(rm, TableOracle(truth), trace=buf)
    lines = buf.getvalue().splitlines()
    assert lines  # at least one non-terminal iteration
    for line in lines:
        parts = line.split()
        assert parts[0] == "iter"
        assert len(parts) == 8
        int(parts[1])  # iteration counter parses


def test_confirmed_cross_edges_created_on_partition():
    # A free cut edge mints a substart/subgoal pair joined by a confirmed
    # cross edge.
    rm, truth = blocked_ladder()
    abstracts = []
    run_idpc(
        rm,
        TableOracle(truth),
        on_iteration=lambda stats, ledger, decomp, abstract: abstracts.append(abstract),
    )
    final = abstracts[-1]
    kinds = set(final.kind.values())
    assert CONFIRMED_CROSS in kinds


def test_paths_per_iteration_agreement():
    rng = random.Random(41)
    for _ in range(60):
        rm, truth = random_instance(rng, deterministic_edges=False)
        verdicts = [
            run_idpc(rm.copy(), TableOracle(truth), paths_per_iteration=k)
            for k in (1, 2, 5)
        ]
        assert len({v.feasible for v in verdicts}) == 1
