import math

import pytest
from hypothesis import given, strategies as st

from pathcut.values import INF, capacity_from_prob, weight_from_prob


def test_weight_endpoints():
    assert weight_from_prob(0.0) == INF
    assert weight_from_prob(1.0) == 0.0


def test_capacity_endpoints():
    assert capacity_from_prob(0.0) == 0.0
    assert capacity_from_prob(1.0) == INF


def test_half_probability():
    assert weight_from_prob(0.5) == pytest.approx(math.log(2.0))
    assert capacity_from_prob(0.5) == pytest.approx(math.log(2.0))


def test_known_value():
    # p = 0.9: weight = ln(1/0.9), capacity = ln(1/0.1)
    assert weight_from_prob(0.9) == pytest.approx(0.105360515657826, abs=1e-12)
    assert capacity_from_prob(0.9) == pytest.approx(2.302585092994046, abs=1e-12)


@pytest.mark.parametrize("bad", [-0.1, 1.1, 2.0, -5.0])
def test_domain_errors(bad):
    with pytest.raises(ValueError):
        weight_from_prob(bad)
    with pytest.raises(ValueError):
        capacity_from_prob(bad)


@given(st.floats(min_value=1e-3, max_value=1.0 - 1e-3))
def test_weight_capacity_duality(p):
    # weight(p) == capacity(1-p); range avoids 1-p cancellation noise
    assert weight_from_prob(p) == pytest.approx(capacity_from_prob(1.0 - p), rel=1e-9)


@given(st.floats(min_value=1e-9, max_value=1.0 - 1e-9))
def test_monotonicity(p):
    q = p * 0.5
    assert weight_from_prob(q) > weight_from_prob(p)
    assert capacity_from_prob(q) < capacity_from_prob(p)


def test_inf_marker_arithmetic():
    # The tagged infinity must absorb addition and dominate comparisons.
    assert INF + 1.0 == INF
    assert INF > 1e308
    assert -INF < 0.0 < INF
