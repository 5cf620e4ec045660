"""Probability-to-weight and probability-to-capacity transforms.

Edge values live on the extended non-negative reals: finite values plus a
distinguished INF that compares greater than every finite value and absorbs
addition. IEEE infinity satisfies both properties without overflow hazards,
so INF is ``math.inf``; flow computations never feed INF into arithmetic
directly (see pathcut.search for the finite surrogate).
"""

import math

INF = math.inf


def weight_from_prob(p):
    """Path-search weight for an edge with existence probability p.

    p=1 costs 0, p=0 costs INF (never traversed), otherwise log(1/p)
    (natural log), so minimizing the weight sum maximizes the probability
    product.
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range [0, 1]: {p}")
    if p == 0.0:
        return INF
    if p == 1.0:
        return 0.0
    return math.log(1.0 / p)


def capacity_from_prob(p):
    """Cut-search capacity for an edge with existence probability p.

    p=0 costs 0 (certainly absent, free to cut), p=1 costs INF (never cut),
    otherwise log(1/(1-p)).
    """
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"probability out of range [0, 1]: {p}")
    if p == 0.0:
        return 0.0
    if p == 1.0:
        return INF
    return math.log(1.0 / (1.0 - p))
