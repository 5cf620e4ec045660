import math
import random

import pytest

from conftest import random_instance
from pathcut import Roadmap, TableOracle, run_ipc
from pathcut.ipc import choose_cut_edge, frontier_blocked_cut, reset_edge_values
from pathcut.roadmap import EdgeState, record_evaluation
from pathcut.values import INF
from pathcut.verify import validate_cut_certificate, validate_path_certificate


def chain_roadmap(statuses, p=0.5):
    """Path graph with one edge per status character (F free, C collision)."""
    n = len(statuses) + 1
    coords = [[float(i), 0.0] for i in range(n)]
    edges = [(i, i + 1) for i in range(len(statuses))]
    rm = Roadmap(coords, edges, [p] * len(edges))
    for eid, st in enumerate(statuses):
        if st == "F":
            record_evaluation(rm, eid, EdgeState.FREE)
        elif st == "C":
            record_evaluation(rm, eid, EdgeState.COLLISION)
    rm.v_s, rm.v_g = 0, n - 1
    return rm


def test_choose_cut_edge_center_of_longest_run():
    rm = chain_roadmap("FCCCFC")
    chosen = choose_cut_edge(list(range(6)), rm)
    assert chosen == 2  # middle of the run {1,2,3}
    assert rm.p_c[2] == 0.0
    for eid in (0, 1, 3, 4, 5):
        assert rm.p_c[eid] == INF


def test_choose_cut_edge_even_run_takes_lower_middle():
    rm = chain_roadmap("CCCC")
    assert choose_cut_edge(list(range(4)), rm) == 1


def test_choose_cut_edge_tie_prefers_earliest_run():
    rm = chain_roadmap("CCFCC")
    assert choose_cut_edge(list(range(5)), rm) == 0


def test_choose_cut_edge_requires_a_collision():
    rm = chain_roadmap("FFF")
    with pytest.raises(ValueError):
        choose_cut_edge(list(range(3)), rm)


def test_choose_cut_edge_respects_restrict():
    rm = chain_roadmap("CFUU")
    chosen = choose_cut_edge(list(range(4)), rm, restrict={0, 1})
    assert chosen == 0
    # outside the restriction, untouched prior capacities
    assert rm.p_c[2] == pytest.approx(math.log(2.0))
    assert rm.p_c[3] == pytest.approx(math.log(2.0))


def test_reset_edge_values_restores():
    rm = chain_roadmap("FC??".replace("?", "U"))
    # edges: 0 free, 1 collision, 2 and 3 unknown with p=0.5
    choose_cut_edge(list(range(4)), rm)
    reset_edge_values(list(range(4)), rm)
    assert rm.p_c[0] == INF
    assert rm.p_c[1] == 0.0
    assert rm.p_c[2] == pytest.approx(math.log(2.0))
    assert rm.p_c[3] == pytest.approx(math.log(2.0))


def test_frontier_blocked_cut():
    rm = chain_roadmap("FCU")
    cut = frontier_blocked_cut(rm)
    assert cut.edges == [1]
    assert validate_cut_certificate(rm, cut)


def test_feasible_straight_line():
    rm = chain_roadmap("UUU")
    verdict = run_ipc(rm, TableOracle({0: True, 1: True, 2: True}))
    assert verdict.feasible
    assert verdict.path.edges == [0, 1, 2]
    assert verdict.stats.n_evaluations == 3
    assert verdict.stats.n_iterations == 1
    assert validate_path_certificate(rm, verdict.path)


def test_infeasible_chain_detected_by_cut():
    rm = chain_roadmap("UUU")
    verdict = run_ipc(rm, TableOracle({0: True, 1: False, 2: True}))
    assert not verdict.feasible
    assert verdict.cut.edges == [1]
    assert validate_cut_certificate(rm, verdict.cut)


def test_cut_shortcuts_parallel_paths():
    # Ladder of disjoint 2-edge routes all meeting at a narrow blocked band:
    # cut evaluation confirms infeasibility without walking every route.
    k = 5
    coords = [[0.0, 0.0]] + [[1.0, float(i)] for i in range(k)] + [[2.0, 0.0]]
    edges = [(0, i + 1) for i in range(k)] + [(i + 1, k + 1) for i in range(k)]
    p = [0.9] * k + [0.5] * k
    truth = {e: True for e in range(k)}
    truth.update({e: False for e in range(k, 2 * k)})
    rm = Roadmap(coords, edges, p)
    rm.v_s, rm.v_g = 0, k + 1
    verdict = run_ipc(rm, TableOracle(truth))
    assert not verdict.feasible
    assert sorted(verdict.cut.edges) == list(range(k, 2 * k))
    # one failed path (2 evals) then one cut evaluating the remaining band
    assert verdict.stats.n_evaluations == k + 1
    assert verdict.stats.n_iterations <= 2


def test_perfect_prior_zero_evaluations():
    for feasible in (True, False):
        statuses = [True, feasible, True]
        rm = chain_roadmap("UUU")
        for eid, free in enumerate(statuses):
            rm.p[eid] = 1.0 if free else 0.0
            rm.p_w[eid] = 0.0 if free else INF
            rm.p_c[eid] = INF if free else 0.0
        verdict = run_ipc(rm, TableOracle(dict(enumerate(statuses))))
        assert verdict.feasible == feasible
        assert verdict.stats.n_evaluations == 0
        assert verdict.stats.n_iterations <= 1


def test_progress_bound_and_certificates():
    rng = random.Random(17)
    for _ in range(150):
        rm, truth = random_instance(rng)
        verdict = run_ipc(rm, TableOracle(truth))
        assert verdict.stats.n_iterations <= verdict.stats.n_evaluations + 1
        assert verdict.stats.n_evaluations <= rm.n_edges
        if verdict.feasible:
            assert validate_path_certificate(rm, verdict.path)
        else:
            assert validate_cut_certificate(rm, verdict.cut)


def test_on_iteration_callback():
    rm = chain_roadmap("UUU")
    calls = []
    run_ipc(
        rm,
        TableOracle({0: True, 1: False, 2: False}),
        on_iteration=lambda stats, ledger: calls.append(stats.n_iterations),
    )
    assert calls == sorted(calls)


def test_paths_per_iteration_counts():
    rng = random.Random(23)
    for _ in range(40):
        rm, truth = random_instance(rng, deterministic_edges=False)
        v1 = run_ipc(rm.copy(), TableOracle(truth), paths_per_iteration=1)
        v3 = run_ipc(rm.copy(), TableOracle(truth), paths_per_iteration=3)
        assert v1.feasible == v3.feasible
        # with k path rounds an iteration can spend at most k path calls
        assert v3.stats.n_path_calls <= 3 * v3.stats.n_iterations


def test_paths_per_iteration_validation():
    rm = chain_roadmap("UUU")
    with pytest.raises(ValueError):
        run_ipc(rm, TableOracle({}), paths_per_iteration=0)


def test_requires_attached_query():
    rm = Roadmap([[0, 0], [1, 1]], [(0, 1)], [0.5])
    with pytest.raises(ValueError):
        run_ipc(rm, TableOracle({0: True}))
