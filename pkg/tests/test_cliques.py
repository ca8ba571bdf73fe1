from __future__ import annotations

import random

from stabcut.cliques import (
    enumerate_cliques_bounded,
    greedy_cliques_by_coverage,
    greedy_cliques_by_weight,
    grow_clique,
    point_weight,
    rounding_lower_bound,
)
from stabcut.graph import Graph, bits, mask_of, random_graph


def test_greedy_passes_differ_on_candidate_order():
    # 0-1, 1-3, 2-3 with these values separates the two growth orders
    g = Graph(4, [(0, 1), (1, 3), (2, 3)])
    point = [0.8, 0.9, 0.2, 0.45]
    by_weight, cov_w = greedy_cliques_by_weight(g, point)
    by_cover, cov_c = greedy_cliques_by_coverage(g, point)
    assert by_weight == [(0, 1), (1, 3), (2, 3)]
    assert by_cover == [(0, 1), (2, 3)]
    assert cov_w == cov_c == g.full_mask


def test_greedy_passes_cover_everything_with_cliques():
    rng = random.Random(5)
    for trial in range(20):
        n = rng.randint(4, 16)
        g = random_graph(n, rng.choice([0.2, 0.5, 0.8]), seed=300 + trial)
        point = [rng.random() for _ in range(n)]
        for fn in (greedy_cliques_by_weight, greedy_cliques_by_coverage):
            cliques, covered = fn(g, point)
            assert covered == g.full_mask
            seen = 0
            for w in cliques:
                assert g.is_clique(w)
                seen |= mask_of(w)
            assert seen == g.full_mask


def test_greedy_respects_initial_covered_mask():
    g = Graph(4, [(0, 1), (1, 3), (2, 3)])
    point = [0.8, 0.9, 0.2, 0.45]
    cliques, covered = greedy_cliques_by_weight(g, point, covered=mask_of([0, 1]))
    assert cliques[0] == (1, 3)
    assert covered == g.full_mask


def test_grow_clique_is_maximal():
    rng = random.Random(17)
    for trial in range(20):
        n = rng.randint(4, 14)
        g = random_graph(n, 0.5, seed=800 + trial)
        point = [rng.random() for _ in range(n)]
        w = grow_clique(g, point, seed=rng.randrange(n))
        assert g.is_clique(w)
        wset = set(w)
        for v in range(n):
            if v not in wset:
                assert not all(g.has_edge(v, u) for u in w)


def brute_maximal_cliques(g):
    out = set()
    for m in range(1, 1 << g.n):
        vs = tuple(bits(m))
        if not g.is_clique(m):
            continue
        if any(all(g.has_edge(v, u) for u in vs) for v in range(g.n) if v not in vs):
            continue
        out.add(vs)
    return out


def test_bounded_enumeration_matches_brute_force():
    rng = random.Random(31)
    for trial in range(12):
        n = rng.randint(3, 9)
        g = random_graph(n, rng.choice([0.3, 0.6]), seed=400 + trial)
        point = [rng.random() for _ in range(n)]
        cliques, best = enumerate_cliques_bounded(g, point, limit=10000)
        assert set(cliques) == brute_maximal_cliques(g)
        assert len(set(cliques)) == len(cliques)
        want = max(point_weight(point, w) for w in cliques)
        assert point_weight(point, best) == want


def test_bounded_enumeration_stops_at_limit():
    g = random_graph(18, 0.6, seed=9)
    point = [1.0] * 18
    cliques, best = enumerate_cliques_bounded(g, point, limit=5)
    assert len(cliques) == 5
    assert best in cliques


def test_rounding_lower_bound_properties(c5):
    assert rounding_lower_bound(c5, [0.5] * 5) == (0, 2)
    rng = random.Random(13)
    for trial in range(20):
        n = rng.randint(4, 15)
        g = random_graph(n, 0.4, seed=600 + trial)
        point = [rng.random() for _ in range(n)]
        s = rounding_lower_bound(g, point)
        assert g.is_stable(s)
        inside = set(s)
        for v in range(n):
            if v not in inside:
                assert any(g.has_edge(v, u) for u in s)  # maximal
