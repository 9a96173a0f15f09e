"""Window-state graphs, extremal cycles, and the exact density engines."""

import random
from fractions import Fraction
from itertools import combinations

import pytest

from dgratio.core import BlockList, DistanceSet, block_density, verify_periodic_independent
from dgratio.stategraph import (
    Coloring,
    Domination,
    EngineCaps,
    Independence,
    InfeasibleError,
    StateGraph,
    StateSpaceError,
    build_state_graph,
    extremal_mean_cycle,
    fractional_chromatic,
    independence_ratio_exact,
    min_dominating_density,
    min_identifying_density,
    periodic_coloring,
    verify_periodic_coloring,
    verify_periodic_dominating,
    verify_periodic_identifying,
)


# ---------------------------------------------------------------------------
# build_state_graph
# ---------------------------------------------------------------------------


def test_build_independence_single_generator():
    g = build_state_graph(DistanceSet([1]), Independence())
    assert g.window == 1
    assert set(g.states) == {0, 1}
    arcs = {g.states[i]: {g.states[j] for j in out} for i, out in enumerate(g.arcs)}
    assert arcs[0] == {0, 1}  # empty window may be followed by anything
    assert arcs[1] == {0}  # adjacent occupied windows collide at distance 1


def test_build_independence_two_generators():
    g = build_state_graph(DistanceSet([1, 2]), Independence())
    assert g.window == 2
    # subsets of a 2-window: {} , {1}, {2}; {1,2} has internal distance 1
    assert set(g.states) == {0b00, 0b01, 0b10}


def test_build_domination_single_generator():
    g = build_state_graph(DistanceSet([1]), Domination())
    assert g.window == 2
    assert len(g.states) == 4  # all states admissible and bi-extensible


def test_extremal_examples():
    loop = StateGraph(window=2, kind=Independence(), states=(1,), arcs=((0,),), weights=(1,))
    wit = extremal_mean_cycle(loop, "max")
    assert wit.density == Fraction(1, 2)

    two = StateGraph(
        window=1, kind=Independence(), states=(0, 1), arcs=((1,), (0,)), weights=(0, 1)
    )
    wit = extremal_mean_cycle(two, "max")
    assert wit.density == Fraction(1, 2)

    g = build_state_graph(DistanceSet([1]), Independence())
    wit = extremal_mean_cycle(g, "max")
    assert wit.density == Fraction(1, 2)
    assert wit.period_set is not None
    assert block_density(wit.period_set) == Fraction(1, 2)


def test_negation_duality_on_window_graphs():
    for s in ([1], [1, 2], [1, 3], [2, 3], [1, 4]):
        g = build_state_graph(DistanceSet(s), Independence())
        mx = extremal_mean_cycle(g, "max").density
        neg = StateGraph(
            window=g.window,
            kind=g.kind,
            states=g.states,
            arcs=g.arcs,
            weights=tuple(-w for w in g.weights),
        )
        mn = extremal_mean_cycle(neg, "min").density
        assert mn == -mx


# ---------------------------------------------------------------------------
# independence engine
# ---------------------------------------------------------------------------


def test_independence_ratio_examples():
    assert independence_ratio_exact(DistanceSet([1, 4]))[0] == Fraction(2, 5)
    assert independence_ratio_exact(DistanceSet([1, 4, 7]))[0] == Fraction(3, 8)


def test_witness_is_sound():
    rng = random.Random(3)
    for _ in range(40):
        s = DistanceSet(rng.sample(range(1, 11), rng.randint(1, 3)))
        value, witness = independence_ratio_exact(s)
        assert verify_periodic_independent(witness, s).ok
        assert block_density(witness) == value


def test_gap_engine_matches_window_graph():
    for size in (1, 2, 3):
        for combo in combinations(range(1, 10), size):
            s = DistanceSet(combo)
            value, _ = independence_ratio_exact(s)
            wit = extremal_mean_cycle(build_state_graph(s, Independence()), "max")
            assert wit.density == value, combo


def test_period_bound():
    rng = random.Random(17)
    for _ in range(30):
        s = DistanceSet(rng.sample(range(1, 12), rng.randint(1, 3)))
        _, witness = independence_ratio_exact(s)
        m = s.max_element
        assert witness.period <= (m + 1) * 2 ** max(m - 1, 0) <= max(m, 1) * 2**m + 1


def test_scaling_invariance_raw_engine():
    rng = random.Random(29)
    checked = 0
    for _ in range(20):
        s = DistanceSet(rng.sample(range(1, 8), rng.randint(1, 3)))
        base, _ = independence_ratio_exact(s)
        for d in (2, 3):
            scaled = s.scaled(d)
            if scaled.max_element > 22:
                continue
            try:
                got, _ = independence_ratio_exact(scaled)
            except StateSpaceError:
                continue  # invariant applies only when both fit the caps
            assert got == base, (s, d)
            checked += 1
    assert checked >= 20


def test_subset_monotonicity():
    rng = random.Random(31)
    for _ in range(20):
        big = sorted(rng.sample(range(1, 10), 3))
        small = sorted(rng.sample(big, rng.randint(1, 2)))
        r_small, _ = independence_ratio_exact(DistanceSet(small))
        r_big, _ = independence_ratio_exact(DistanceSet(big))
        assert r_small >= r_big


def test_state_cap_raises():
    with pytest.raises(StateSpaceError):
        independence_ratio_exact(DistanceSet([1, 30]))
    with pytest.raises(StateSpaceError):
        independence_ratio_exact(
            DistanceSet([21, 22]), EngineCaps(independence_max_states=1000)
        )


# ---------------------------------------------------------------------------
# domination
# ---------------------------------------------------------------------------


def _brute_min_dominating(distances, max_period):
    best = None
    for p in range(1, max_period + 1):
        for mask in range(1, 1 << p):
            members = {i for i in range(p) if mask >> i & 1}
            deltas = [0] + [d for s in distances for d in (s, -s)]
            if all(
                any((u + d) % p in members for d in deltas) for u in range(p)
            ):
                cand = Fraction(len(members), p)
                if best is None or cand < best:
                    best = cand
    return best


def test_domination_examples():
    density, witness = min_dominating_density(DistanceSet([1]))
    assert density == Fraction(1, 3)
    assert verify_periodic_dominating(witness.period_set, DistanceSet([1]))

    density, _ = min_dominating_density(DistanceSet([1, 2]))
    assert density == Fraction(1, 5)

    density, _ = min_dominating_density(DistanceSet([2]))
    assert density == Fraction(1, 3)


def test_domination_matches_brute_oracle():
    for s in ([1], [2], [1, 2]):
        density, _ = min_dominating_density(DistanceSet(s))
        assert density == _brute_min_dominating(DistanceSet(s), 9), s


def test_domination_density_in_range():
    for s in ([1], [2], [3], [1, 2], [1, 3], [2, 3]):
        density, _ = min_dominating_density(DistanceSet(s))
        assert Fraction(0) < density <= Fraction(1)


# ---------------------------------------------------------------------------
# identifying codes
# ---------------------------------------------------------------------------


def _brute_min_identifying(distances, radius, max_period):
    best = None
    for p in range(1, max_period + 1):
        for mask in range(1, 1 << p):
            members = {i for i in range(p) if mask >> i & 1}
            blocks = _blocklist_from_members(members, p)
            if blocks is None:
                continue
            if verify_periodic_identifying(blocks, distances, radius):
                cand = Fraction(len(members), p)
                if best is None or cand < best:
                    best = cand
    return best


def _blocklist_from_members(members, period):
    if not members:
        return None
    xs = sorted(members)
    gaps = [b - a for a, b in zip(xs, xs[1:])]
    gaps.append(period - xs[-1] + xs[0])
    return BlockList(gaps)


def test_identifying_single_generator_matches_oracle():
    density, witness = min_identifying_density(DistanceSet([1]), 1)
    oracle = _brute_min_identifying(DistanceSet([1]), 1, 12)
    assert density == oracle == Fraction(1, 2)
    assert verify_periodic_identifying(witness.period_set, DistanceSet([1]), 1)


def test_identifying_radius_two_equals_power_route():
    d2, _ = min_identifying_density(DistanceSet([1]), 2)
    d1, _ = min_identifying_density(DistanceSet([1, 2]), 1)
    assert d2 == d1


def test_identifying_scaled_generator():
    base, _ = min_identifying_density(DistanceSet([1]), 1)
    scaled, witness = min_identifying_density(DistanceSet([2]), 1)
    assert scaled == base
    assert verify_periodic_identifying(witness.period_set, DistanceSet([2]), 1)


def test_identifying_cap():
    with pytest.raises(StateSpaceError):
        min_identifying_density(DistanceSet([3]), 1)


# ---------------------------------------------------------------------------
# colorings and the fractional chromatic number
# ---------------------------------------------------------------------------


def test_coloring_examples():
    wit = periodic_coloring(DistanceSet([1]), 2)
    assert wit is not None
    assert wit.period == 2
    assert verify_periodic_coloring(wit.colors, DistanceSet([1]))

    assert periodic_coloring(DistanceSet([1]), 1) is None

    wit = periodic_coloring(DistanceSet([1, 2, 3]), 4)
    assert wit is not None
    assert verify_periodic_coloring(wit.colors, DistanceSet([1, 2, 3]))


def test_coloring_matches_chromatic_threshold():
    # distance set {1,2}: 3 colors needed, 2 impossible
    assert periodic_coloring(DistanceSet([1, 2]), 2) is None
    assert periodic_coloring(DistanceSet([1, 2]), 3) is not None


def test_mean_cycle_on_empty_graph_is_infeasible():
    graph = build_state_graph(DistanceSet([1]), Coloring(1))
    assert not graph.states
    with pytest.raises(InfeasibleError):
        extremal_mean_cycle(graph, "max")


def test_fractional_chromatic_examples():
    assert fractional_chromatic(DistanceSet([1, 2, 3])) == 4
    assert fractional_chromatic(DistanceSet([1, 4])) == Fraction(5, 2)
    assert fractional_chromatic(DistanceSet([3, 5, 7])) == 2


def test_coloring_consistent_with_fractional_chromatic():
    # no proper coloring may use fewer than chi_f colors, and position mod
    # max(S)+1 always colors the graph, so the engines must agree on both
    rng = random.Random(41)
    for _ in range(12):
        s = DistanceSet(rng.sample(range(1, 5), rng.randint(1, 3)))
        chi_f = fractional_chromatic(s)
        too_few = (chi_f.numerator - 1) // chi_f.denominator  # largest k < chi_f
        if too_few >= 1:
            assert periodic_coloring(s, too_few) is None, (s, chi_f)
        upper = s.max_element + 1
        wit = periodic_coloring(s, upper)
        assert wit is not None and verify_periodic_coloring(wit.colors, s)
