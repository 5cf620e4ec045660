"""Shared helpers: random instances and brute-force reference oracles."""

import itertools
import random

from pathcut import Roadmap
from pathcut.values import INF


def random_instance(rng, max_vertices=12, max_degree=3, deterministic_edges=True):
    """Random roadmap + consistent ground truth for cross-checking.

    Truth is drawn from the prior so deterministic p values (0/1) are
    honored exactly. Returns (roadmap, truth dict).
    """
    n = rng.randint(2, max_vertices)
    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    rng.shuffle(pairs)
    m = rng.randint(1, min(len(pairs), max_degree * n))
    edges = sorted(pairs[:m])
    choices = [round(rng.uniform(0.05, 0.95), 3)]
    if deterministic_edges:
        choices = [0.0, 1.0] + choices
    p = [rng.choice(choices) for _ in edges]
    coords = [[rng.random(), rng.random()] for _ in range(n)]
    truth = {}
    for e, pe in enumerate(p):
        if pe == 1.0:
            truth[e] = True
        elif pe == 0.0:
            truth[e] = False
        else:
            truth[e] = rng.random() < pe
    rm = Roadmap(coords, edges, p)
    rm.v_s, rm.v_g = 0, n - 1
    return rm, truth


def brute_force_path(n, edges, p_w, s, t):
    """Minimum path weight by exhaustive simple-path enumeration."""
    adj = [[] for _ in range(n)]
    for e, (u, v) in enumerate(edges):
        if p_w[e] != INF:
            adj[u].append((v, e))
            adj[v].append((u, e))
    best = [INF]

    def walk(v, used, total):
        if total >= best[0]:
            return
        if v == t:
            best[0] = total
            return
        for w, e in adj[v]:
            if w not in used:
                walk(w, used | {w}, total + p_w[e])

    walk(s, {s}, 0.0)
    return best[0]


def brute_force_cut(n, edges, p_c, sources, sinks):
    """Minimum cut capacity over all source/sink-respecting partitions."""
    fixed = set(sources) | set(sinks)
    others = [v for v in range(n) if v not in fixed]
    best = INF
    best_edges = None
    for bits in itertools.product([0, 1], repeat=len(others)):
        side = set(sources)
        side.update(v for v, b in zip(others, bits) if b)
        total = 0.0
        cut = []
        for e, (u, v) in enumerate(edges):
            if (u in side) != (v in side):
                total += p_c[e]
                cut.append(e)
            if total > best:
                break
        if total < best:
            best = total
            best_edges = cut
    return best, best_edges
