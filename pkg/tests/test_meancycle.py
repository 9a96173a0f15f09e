"""Exact mean-cycle solvers: policy iteration against Karp's recurrence."""

import random
from fractions import Fraction

import numpy as np
import pytest

from dgratio import meancycle


def _csr(adjacency):
    return meancycle.csr_from_adjacency(adjacency)


def test_self_loop():
    indptr, dst, w = _csr([[(3, 0)]])
    mean, cyc, weights = meancycle.min_mean_cycle_howard(indptr, dst, w)
    assert mean == 3
    assert cyc == [0]
    assert weights == [3]


def test_two_cycle():
    indptr, dst, w = _csr([[(0, 1)], [(1, 0)]])
    mean, cyc, weights = meancycle.min_mean_cycle_howard(indptr, dst, w)
    assert mean == Fraction(1, 2)
    assert sorted(cyc) == [0, 1]


def test_choice_between_cycles():
    # node 0 can self-loop at 5 or enter a 3-cycle of total 9 (mean 3)
    adjacency = [[(5, 0), (2, 1)], [(3, 2)], [(4, 0)]]
    indptr, dst, w = _csr(adjacency)
    mean, cyc, weights = meancycle.min_mean_cycle_howard(indptr, dst, w)
    assert mean == 3
    assert sum(weights) == 9 and len(cyc) == 3
    mean_max, _, _ = meancycle.max_mean_cycle_howard(indptr, dst, w)
    assert mean_max == 5


def test_karp_small():
    edges = [(0, 0, 3)]
    assert meancycle.max_mean_cycle_karp(1, edges) == 3
    edges = [(0, 1, 0), (1, 0, 1)]
    assert meancycle.max_mean_cycle_karp(2, edges) == Fraction(1, 2)
    with pytest.raises(meancycle.NoCycleError):
        meancycle.max_mean_cycle_karp(2, [(0, 1, 1)])


def _random_graph(rng, n):
    adjacency = [[] for _ in range(n)]
    edges = []
    for u in range(n):
        k = rng.randint(1, min(4, n))
        for v in rng.sample(range(n), k):
            wt = rng.randint(-4, 4)
            adjacency[u].append((wt, v))
            edges.append((u, v, wt))
    return adjacency, edges


def test_howard_matches_karp_on_random_graphs():
    rng = random.Random(42)
    for _ in range(300):
        n = rng.randint(1, 12)
        adjacency, edges = _random_graph(rng, n)
        indptr, dst, w = _csr(adjacency)
        got, cyc, weights = meancycle.min_mean_cycle_howard(indptr, dst, w)
        assert got == meancycle.min_mean_cycle_karp(n, edges)
        got_max, _, _ = meancycle.max_mean_cycle_howard(indptr, dst, w)
        assert got_max == meancycle.max_mean_cycle_karp(n, edges)
        # witness cycle is a real cycle with the reported mean
        L = len(cyc)
        for j in range(L):
            u, v = cyc[j], cyc[(j + 1) % L]
            assert any(d == v and wt == weights[j] for wt, d in adjacency[u])
        assert Fraction(sum(weights), L) == got


def test_descent_rescue_agrees():
    # exercise the unconditional fallback directly on tie-heavy graphs
    rng = random.Random(9)
    for _ in range(60):
        n = rng.randint(2, 10)
        adjacency, edges = _random_graph(rng, n)
        indptr, dst, w = _csr(adjacency)
        deg = np.diff(indptr)
        src = np.repeat(np.arange(n, dtype=np.int64), deg)
        mean, cyc, weights = meancycle._min_mean_cycle_descent(indptr, dst, w, src)
        assert mean == meancycle.min_mean_cycle_karp(n, edges)
        assert Fraction(sum(weights), len(weights)) == mean


def test_negation_duality():
    rng = random.Random(77)
    for _ in range(50):
        n = rng.randint(1, 10)
        adjacency, edges = _random_graph(rng, n)
        indptr, dst, w = _csr(adjacency)
        mn, _, _ = meancycle.min_mean_cycle_howard(indptr, dst, w)
        mx, _, _ = meancycle.max_mean_cycle_howard(indptr, dst, -w)
        assert mn == -mx
