import math

import numpy as np
import pytest

from pathcut.roadmap import (
    EdgeState,
    QueryNotEmbeddable,
    Roadmap,
    attach_query,
    load_roadmap,
    load_truth,
    record_evaluation,
    save_roadmap,
    save_truth,
)
from pathcut.values import INF


def square_roadmap():
    coords = [[0.0, 0.0], [1.0, 0.0], [1.0, 1.0], [0.0, 1.0]]
    edges = [(0, 1), (1, 2), (2, 3), (0, 3)]
    return Roadmap(coords, edges, [0.5, 0.9, 0.1, 1.0])


def test_basic_construction():
    rm = square_roadmap()
    assert rm.n_vertices == 4
    assert rm.n_edges == 4
    assert rm.dim == 2
    assert rm.edge_vertices(1) == (1, 2)
    assert rm.p_w[3] == 0.0 and rm.p_c[3] == INF


def test_edge_value_derivation():
    rm = square_roadmap()
    assert rm.p_w[0] == pytest.approx(math.log(2.0))
    assert rm.p_c[0] == pytest.approx(math.log(2.0))
    assert rm.p_w[1] == pytest.approx(math.log(1 / 0.9))
    assert rm.p_c[1] == pytest.approx(math.log(1 / 0.1))


def test_self_loop_rejected():
    with pytest.raises(ValueError):
        Roadmap([[0, 0], [1, 1]], [(0, 0)], [0.5])


def test_duplicate_edge_rejected():
    with pytest.raises(ValueError):
        Roadmap([[0, 0], [1, 1]], [(0, 1), (1, 0)], [0.5, 0.5])


def test_edge_endpoints_normalized():
    rm = Roadmap([[0, 0], [1, 1]], [(1, 0)], [0.5])
    assert rm.edge_vertices(0) == (0, 1)


def test_record_evaluation_pins_values():
    rm = square_roadmap()
    record_evaluation(rm, 0, EdgeState.FREE)
    assert rm.state[0] == EdgeState.FREE
    assert rm.p_w[0] == 0.0
    assert rm.p_c[0] == INF
    record_evaluation(rm, 1, EdgeState.COLLISION)
    assert rm.p_w[1] == INF
    assert rm.p_c[1] == 0.0


def test_double_evaluation_rejected():
    rm = square_roadmap()
    record_evaluation(rm, 0, EdgeState.FREE)
    with pytest.raises(ValueError):
        record_evaluation(rm, 0, EdgeState.COLLISION)


def test_deterministic_predicates():
    rm = square_roadmap()
    # p=1 edge counts as passable without evaluation, p interior does not
    assert rm.is_passable(3)
    assert not rm.is_passable(0)
    assert rm.is_deterministic(3)
    assert not rm.is_deterministic(1)
    rm2 = Roadmap([[0, 0], [1, 1]], [(0, 1)], [0.0])
    assert rm2.is_blocked(0)
    assert rm2.is_deterministic(0)


def test_copy_is_independent():
    rm = square_roadmap()
    rm.v_s, rm.v_g = 0, 2
    other = rm.copy()
    record_evaluation(other, 0, EdgeState.COLLISION)
    assert rm.state[0] == EdgeState.UNKNOWN
    assert other.v_s == 0 and other.v_g == 2


def test_attach_query_reuses_exact_vertex():
    rm = square_roadmap()
    attach_query(rm, [0.0, 0.0], [1.0, 1.0], lambda a, b: True)
    assert rm.v_s == 0
    assert rm.v_g == 2
    assert rm.n_vertices == 4  # no new vertices


def test_attach_query_inserts_new_vertex():
    rm = square_roadmap()
    attach_query(rm, [0.5, 0.05], [1.0, 1.0], lambda a, b: True)
    assert rm.v_s == 4
    eid = rm.n_edges - 1
    assert rm.state[eid] == EdgeState.FREE
    assert rm.p[eid] == 1.0


def test_attach_query_not_embeddable():
    rm = square_roadmap()
    with pytest.raises(QueryNotEmbeddable):
        attach_query(rm, [0.5, 0.5], [1.0, 1.0], lambda a, b: False)


def test_roadmap_roundtrip(tmp_path):
    rm = square_roadmap()
    path = tmp_path / "r.roadmap"
    save_roadmap(rm, path)
    back = load_roadmap(path)
    assert back.n_vertices == rm.n_vertices
    assert back.n_edges == rm.n_edges
    assert np.array_equal(back.coords, rm.coords)
    assert back.p == rm.p
    assert list(zip(back.eu, back.ev)) == list(zip(rm.eu, rm.ev))


def test_roadmap_file_header(tmp_path):
    rm = square_roadmap()
    path = tmp_path / "r.roadmap"
    save_roadmap(rm, path)
    first = path.read_text().splitlines()[0]
    assert first == "dim 2 vertices 4 edges 4"


def test_truth_roundtrip(tmp_path):
    rm = square_roadmap()
    truth = {0: True, 1: False, 2: True, 3: True}
    path = tmp_path / "r.truth"
    save_truth(path, rm, truth)
    edges, free, p = load_truth(path)
    assert edges == list(zip(rm.eu, rm.ev))
    assert free == [True, False, True, True]
    assert p == rm.p
