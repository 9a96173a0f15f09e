"""Branch-and-bound independence numbers on finite slices of G(S).

Two slice families sandwich the independence ratio for any n, m:

    alpha(G(n,S)) / n  <=  ratio  <=  alpha(G(S)[m]) / m

where G(S)[m] is the subgraph induced on [m] and G(n,S) the circulant on
Z_n.  compute_ratio interleaves both computations, growing n and m until the
best bounds meet or the work budget runs out.  The core solver is a
backtracking search over vertices in decreasing order with two prunes: the
memoized alpha values of shorter intervals, and the interval decomposition
bound beta(B) of the remaining candidate set.
"""

from __future__ import annotations

import os
import time
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

import numpy as np

from .core import BlockList, DistanceSet, verify_periodic_independent

FALLBACK_NODE_BUDGET = 3_000_000
BRUTE_FORCE_CAP = 26


def default_node_budget() -> int:
    raw = os.environ.get("DGRATIO_BUDGET")
    if raw:
        try:
            return max(1, int(raw))
        except ValueError:
            pass
    return FALLBACK_NODE_BUDGET


class BudgetExceeded(Exception):
    """Search budget ran out; carries the partially filled table."""

    def __init__(self, message: str, table: Optional["AlphaTable"] = None):
        super().__init__(message)
        self.table = table


@dataclass
class SearchBudget:
    """Work limits: search-tree nodes, plus an optional wall-clock cap.

    The wall-clock cap is off by default so identical inputs give identical
    outputs regardless of machine speed.
    """

    max_nodes: int = field(default_factory=default_node_budget)
    max_seconds: Optional[float] = None
    nodes: int = 0
    _started: Optional[float] = None

    def charge(self, table: Optional["AlphaTable"] = None) -> None:
        self.nodes += 1
        if self.nodes > self.max_nodes:
            raise BudgetExceeded(f"node budget {self.max_nodes} exhausted", table)
        if self.max_seconds is not None and self.nodes % 8192 == 0:
            if self._started is None:
                self._started = time.monotonic()
            elif time.monotonic() - self._started > self.max_seconds:
                raise BudgetExceeded(f"wall-clock budget {self.max_seconds}s exhausted", table)


class AlphaTable:
    """Memoized alpha(G(S)[n]) values with the adjacency masks they need.

    interval_alpha[n] is alpha of the induced subgraph on [n]; the sequence
    satisfies a(n) <= a(n+1) <= a(n) + 1, which drives the search targets.
    Circulant prefix tables are per-call (they are useless across n).
    """

    def __init__(self, distances: DistanceSet):
        self.distances = distances
        self.interval_alpha: list[int] = [0]
        self.prefix_alpha: list[int] = []  # alpha(n, i) for the latest circulant n
        self._nbr: list[int] = [0]  # _nbr[v] has bit (u-1) for u adjacent to v

    def _extend_masks(self, n: int) -> None:
        # only neighbors below v matter: candidates shrink downward, so the
        # search never needs the v+d side (and storing it would cost memory
        # proportional to max(S) per vertex)
        for v in range(len(self._nbr), n + 1):
            m = 0
            for d in self.distances.distances:
                if v - d >= 1:
                    m |= 1 << (v - d - 1)
            self._nbr.append(m)

    def _beta(self, candidates: int) -> int:
        """Sum of memoized alphas over the maximal runs of the candidate set."""
        total = 0
        iv = self.interval_alpha
        top = len(iv) - 1
        b = candidates
        while b:
            low = b & -b
            merged = b + low
            run = (b ^ merged).bit_count() - 1
            if run <= top:
                total += iv[run]
            else:
                total += iv[top] + (run - top)
            b &= merged
        return total

    def _search(
        self,
        count: int,
        candidates: int,
        target: int,
        nbr: list[int],
        bound: list[int],
        budget: SearchBudget,
        chosen: list[int],
    ) -> bool:
        """Grow an independent set to `target` vertices, decreasing order."""
        budget.charge(self)
        if count == target:
            return True
        if count + self._beta(candidates) < target:
            return False
        rest = candidates
        while rest:
            v = rest.bit_length()
            if count + bound[v] < target:
                return False
            rest ^= 1 << (v - 1)
            chosen.append(v)
            if self._search(count + 1, rest & ~nbr[v], target, nbr, bound, budget, chosen):
                return True
            chosen.pop()
        return False

    def ensure_interval(self, n: int, budget: SearchBudget) -> None:
        self._extend_masks(n + 1)
        iv = self.interval_alpha
        while len(iv) <= n:
            m = len(iv)
            target = iv[m - 1] + 1
            iv.append(target)  # sentinel: a(m) <= a(m-1) + 1 keeps prunes sound
            chosen: list[int] = []
            try:
                found = self._search(0, (1 << m) - 1, target, self._nbr, iv, budget, chosen)
            except BudgetExceeded:
                iv.pop()
                raise
            iv[m] = target if found else iv[m - 1]


def alpha_interval(distances: DistanceSet, n: int, table: AlphaTable, budget: Optional[SearchBudget] = None) -> int:
    """alpha(G(S)[n]); fills the table incrementally up to n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    if table.distances.distances != distances.distances:
        raise ValueError("table was built for a different distance set")
    budget = budget or SearchBudget()
    table.ensure_interval(n, budget)
    return table.interval_alpha[n]


def _circulant_masks(distances: DistanceSet, n: int) -> list[int]:
    nbr = [0] * (n + 1)
    for v in range(1, n + 1):
        m = 0
        for d in distances.distances:
            for u in ((v - 1 + d) % n, (v - 1 - d) % n):
                m |= 1 << u
        m &= ~(1 << (v - 1))
        nbr[v] = m
    return nbr


def _alpha_circulant_solution(
    distances: DistanceSet, n: int, table: AlphaTable, budget: SearchBudget
) -> tuple[int, list[int]]:
    """alpha(G(n,S)) with one maximum independent set as witness."""
    s = distances.max_element
    if n <= s:
        raise ValueError("circulant computation requires n > max(S)")
    table.ensure_interval(n, budget)
    nbr = _circulant_masks(distances, n)
    prefix = [0] * (n + 1)
    wrap_free = n - s  # prefixes this short see no wrap edges
    for i in range(1, min(wrap_free, n) + 1):
        prefix[i] = table.interval_alpha[i]
    solution: list[int] = []
    for i in range(wrap_free + 1, n + 1):
        target = prefix[i - 1] + 1
        prefix[i] = target  # sentinel upper bound while this entry is open
        chosen: list[int] = []
        if table._search(0, (1 << i) - 1, target, nbr, prefix, budget, chosen):
            prefix[i] = target
            solution = list(chosen)
        else:
            prefix[i] = prefix[i - 1]
    if len(solution) != prefix[n]:
        # the optimum was inherited from the wrap-free prefix; recover a set
        chosen = []
        ok = table._search(0, (1 << n) - 1, prefix[n], nbr, prefix, budget, chosen)
        assert ok, "failed to recover a maximum circulant independent set"
        solution = list(chosen)
    table.prefix_alpha = prefix  # replaced wholesale on the next n
    return prefix[n], solution


def alpha_circulant(distances: DistanceSet, n: int, table: Optional[AlphaTable] = None, budget: Optional[SearchBudget] = None) -> int:
    """alpha(G(n,S)) for the circulant graph on Z_n; requires n > max(S)."""
    table = table or AlphaTable(distances)
    budget = budget or SearchBudget()
    size, _ = _alpha_circulant_solution(distances, n, table, budget)
    return size


def _popcount64(x):
    x = x - ((x >> np.uint64(1)) & np.uint64(0x5555555555555555))
    x = (x & np.uint64(0x3333333333333333)) + (
        (x >> np.uint64(2)) & np.uint64(0x3333333333333333)
    )
    x = (x + (x >> np.uint64(4))) & np.uint64(0x0F0F0F0F0F0F0F0F)
    return (x * np.uint64(0x0101010101010101)) >> np.uint64(56)


def brute_force_alpha_interval(distances: DistanceSet, n: int) -> int:
    """Independent oracle: exhaustive enumeration over all 2^n subsets of [n].

    Every bitmask is tested for independence directly (a subset is dependent
    exactly when it intersects itself shifted by some generator); no search
    tables or pruning from the main solver are involved.
    """
    if n > BRUTE_FORCE_CAP:
        raise ValueError(f"oracle capped at n <= {BRUTE_FORCE_CAP}")
    if n == 0:
        return 0
    best = 0
    chunk = 1 << 20
    for start in range(0, 1 << n, chunk):
        end = min(start + chunk, 1 << n)
        masks = np.arange(start, end, dtype=np.uint64)
        ok = np.ones(end - start, dtype=bool)
        for d in distances.distances:
            ok &= (masks & (masks >> np.uint64(d))) == 0
        valid = masks[ok]
        if len(valid):
            best = max(best, int(_popcount64(valid).max()))
    return best


@dataclass
class RatioReport:
    """Outcome of a ratio computation: exact value or certified bounds."""

    distances: DistanceSet
    status: str  # exact | bounded | registry_only
    value: Optional[Fraction]
    lower: Fraction
    upper: Fraction
    lower_witness: BlockList
    upper_witness_n: Optional[int]
    method: str  # stategraph | search | shortcut
    counters: dict
    note: Optional[str] = None

    def __post_init__(self):
        assert self.lower <= self.upper, "bounds crossed"
        if self.status == "exact":
            assert self.value is not None and self.lower == self.upper == self.value


def _gaps_of_circulant_solution(solution: list[int], n: int) -> BlockList:
    xs = sorted(solution)
    gaps = [b - a for a, b in zip(xs, xs[1:])]
    gaps.append(n - xs[-1] + xs[0])
    return BlockList(gaps)


WINDOW_CERTIFICATE_MAX_ELEMENT = 13
_WINDOW_CERTIFICATE_GRACE = 5


def _window_certificate_upper(distances: DistanceSet) -> Optional[Fraction]:
    """Exact upper bound from the explicit window-subset state graph.

    The minimum of alpha(G(S)[m])/m over m need not be attained at any
    finite m (for {5,6,9} it stays one element above 4m/11 at every multiple
    of 11), so a stalled schedule consults the window construction, whose
    extremal cycle mean equals the ratio exactly.  Returns None when the
    window is too large; value only, witnesses still come from circulants.
    """
    if distances.max_element > WINDOW_CERTIFICATE_MAX_ELEMENT:
        return None
    from .stategraph import Independence, build_state_graph, extremal_mean_cycle

    graph = build_state_graph(distances, Independence())
    return extremal_mean_cycle(graph, "max").density


def compute_ratio(
    distances: DistanceSet,
    budget: Optional[SearchBudget] = None,
    max_rounds: int = 2000,
) -> RatioReport:
    """Interleaved two-sided search for the independence ratio of G(S).

    Schedule: at round n compute alpha of the intervals [2n-1] and [2n], and
    once n exceeds max(S) also alpha of the circulant on Z_n; stop when the
    best lower and upper bounds agree.  If the bounds have not met a few
    rounds past max(S) and the set is small, the exact window certificate is
    folded into the upper bound (interval minima alone can stay strictly
    above the ratio forever).  Budget exhaustion downgrades the result to
    certified bounds (status 'bounded'), never an error.
    """
    budget = budget or SearchBudget()
    table = AlphaTable(distances)
    s = distances.max_element
    lower = Fraction(1, s + 1)
    lower_witness = BlockList([s + 1])
    upper = Fraction(1)
    upper_n: Optional[int] = None
    circulant_rounds = 0
    certified = False
    note = None
    exact = False
    try:
        for n in range(1, max_rounds + 1):
            for m in (2 * n - 1, 2 * n):
                a = alpha_interval(distances, m, table, budget)
                r = Fraction(a, m)
                if r < upper:
                    upper, upper_n = r, m
            if lower == upper:
                exact = True
                break
            if n > s:
                circulant_rounds += 1
                size, solution = _alpha_circulant_solution(distances, n, table, budget)
                r = Fraction(size, n)
                if r > lower:
                    witness = _gaps_of_circulant_solution(solution, n)
                    verdict = verify_periodic_independent(witness, distances)
                    assert verdict.ok, "circulant witness not independent"
                    lower, lower_witness = r, witness
            if lower == upper:
                exact = True
                break
            if n == s + _WINDOW_CERTIFICATE_GRACE and not certified:
                certified = True
                cert = _window_certificate_upper(distances)
                if cert is not None and cert < upper:
                    upper, upper_n = cert, None
                    note = "upper bound certified by the window-state construction"
                    if lower == upper:
                        exact = True
                        break
    except BudgetExceeded:
        pass
    counters = {
        "nodes": budget.nodes,
        "interval_max_n": len(table.interval_alpha) - 1,
        "circulant_rounds": circulant_rounds,
        "window_certificate": certified,
    }
    if exact:
        return RatioReport(
            distances=distances,
            status="exact",
            value=lower,
            lower=lower,
            upper=upper,
            lower_witness=lower_witness,
            upper_witness_n=upper_n,
            method="search",
            counters=counters,
            note=note,
        )
    return RatioReport(
        distances=distances,
        status="bounded",
        value=None,
        lower=lower,
        upper=upper,
        lower_witness=lower_witness,
        upper_witness_n=upper_n,
        method="search",
        counters=counters,
        note=note,
    )
