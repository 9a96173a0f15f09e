"""Exact extremal mean cycles in integer-weighted digraphs.

The production path is policy iteration (Howard's algorithm) carried out
entirely in integer arithmetic: cycle means are reduced fractions (num, den)
and node biases are integers scaled by the denominator of their cycle mean,
so every comparison is an exact cross-multiplication.  The exit condition is
self-certifying: when no edge improves, every cycle's mean is bounded by the
best policy cycle (gains are monotone along edges and the bias inequalities
telescope around equal-gain cycles), so a converged run is always correct.

Termination needs care when several policy cycles share a gain, because
biases are only defined up to a constant per cycle.  Two measures handle
this: biases are kept continuous across iterations (each cycle is pinned at
its smallest node to that node's previous bias), which removes the usual
oscillation, and a hard iteration cap falls back to a strictly descending
negative-cycle search that terminates unconditionally.  Karp's recurrence is
kept as an independent oracle for small graphs.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

import numpy as np


class NoCycleError(ValueError):
    """The digraph has no directed cycle."""


_MAX_ITERATIONS = 3000
_INF = np.int64(2**62)


def _evaluate(num_nodes: int, succ_l: list, w_l: list, prev_bias: list):
    """Evaluate a policy (functional graph): per-node cycle mean and bias.

    Each policy cycle is pinned at its smallest node, whose bias keeps its
    previous value; bias[v] is scaled by lam_den[v].  Returns integer lists
    (lam_num, lam_den, bias) and the cycles as (num, den, nodes).
    """
    state = bytearray(num_nodes)  # 0 unseen, 1 on current walk, 2 done
    lam_num = [0] * num_nodes
    lam_den = [1] * num_nodes
    bias = [0] * num_nodes
    cycles = []
    for v0 in range(num_nodes):
        if state[v0]:
            continue
        path = []
        v = v0
        while state[v] == 0:
            state[v] = 1
            path.append(v)
            v = succ_l[v]
        if state[v] == 1:
            start = len(path) - 1
            while path[start] != v:
                start -= 1
            cyc = path[start:]
            total = sum(w_l[u] for u in cyc)
            length = len(cyc)
            g = gcd(total, length)
            p, q = total // g, length // g
            cycles.append((p, q, cyc))
            handle = min(cyc)
            pos = cyc.index(handle)
            cyc = cyc[pos:] + cyc[:pos]
            bias[handle] = prev_bias[handle]
            lam_num[handle] = p
            lam_den[handle] = q
            for j in range(length - 1, 0, -1):
                u = cyc[j]
                lam_num[u] = p
                lam_den[u] = q
                bias[u] = w_l[u] * q - p + bias[succ_l[u]]
            for u in cyc:
                state[u] = 2
            tail = path[:start]
        else:
            tail = path
        for u in reversed(tail):
            nxt = succ_l[u]
            q = lam_den[nxt]
            lam_num[u] = lam_num[nxt]
            lam_den[u] = q
            bias[u] = w_l[u] * q - lam_num[nxt] + bias[nxt]
            state[u] = 2
    return lam_num, lam_den, bias, cycles


def _initial_policy(indptr: np.ndarray, w: np.ndarray) -> np.ndarray:
    """Per node, the first outgoing edge of minimum weight."""
    num_nodes = len(indptr) - 1
    pol = np.empty(num_nodes, dtype=np.int64)
    wl = w.tolist()
    ip = indptr.tolist()
    for v in range(num_nodes):
        lo, hi = ip[v], ip[v + 1]
        best = lo
        bw = wl[lo]
        for e in range(lo + 1, hi):
            if wl[e] < bw:
                bw = wl[e]
                best = e
        pol[v] = best
    return pol


def _segment_argmin_switch(values: np.ndarray, src_per_edge: np.ndarray,
                           indptr: np.ndarray, current: np.ndarray,
                           pol: np.ndarray) -> bool:
    """Switch each node to its first best edge where values beat `current`.

    values is per-edge (int64, +_INF to exclude); current per-node.  Returns
    whether any switch happened.  Deterministic: first minimal edge in CSR
    order wins.
    """
    seg_min = np.minimum.reduceat(values, indptr[:-1])
    improved = seg_min < current
    if not improved.any():
        return False
    at_min = (values == seg_min[src_per_edge]) & improved[src_per_edge]
    idx = np.flatnonzero(at_min)
    segs = src_per_edge[idx]
    uniq, first = np.unique(segs, return_index=True)
    pol[uniq] = idx[first]
    return True


def min_mean_cycle_howard(indptr: np.ndarray, dst: np.ndarray, w: np.ndarray):
    """Minimum mean cycle of a digraph in CSR form; every node needs an out-edge.

    Returns (mean: Fraction, cycle_nodes: list[int], cycle_weights: list[int])
    where cycle_nodes[j] -> cycle_nodes[(j+1) % L] is the j-th cycle edge and
    cycle_weights[j] its weight.  Deterministic for a fixed CSR layout.
    """
    num_nodes = len(indptr) - 1
    if num_nodes == 0:
        raise NoCycleError("empty graph")
    deg = np.diff(indptr)
    if (deg <= 0).any():
        raise ValueError("every node must have at least one outgoing edge")
    indptr = indptr.astype(np.int64)
    dst = dst.astype(np.int64)
    w = w.astype(np.int64)
    src_per_edge = np.repeat(np.arange(num_nodes, dtype=np.int64), deg)
    pol = _initial_policy(indptr, w)
    dst_l = dst.tolist()
    w_all = w.tolist()
    prev_bias = [0] * num_nodes

    for _ in range(_MAX_ITERATIONS):
        pol_l = pol.tolist()
        succ_l = [dst_l[e] for e in pol_l]
        wsel_l = [w_all[e] for e in pol_l]
        lam_num_l, lam_den_l, bias_l, cycles = _evaluate(num_nodes, succ_l, wsel_l, prev_bias)
        prev_bias = bias_l
        # rank the few distinct gains so argmins vectorize over integers
        distinct = sorted({(p, q) for p, q in zip(lam_num_l, lam_den_l)},
                          key=lambda t: Fraction(t[0], t[1]))
        rank_of = {t: i for i, t in enumerate(distinct)}
        rank = np.array([rank_of[(p, q)] for p, q in zip(lam_num_l, lam_den_l)],
                        dtype=np.int64)
        if _segment_argmin_switch(rank[dst], src_per_edge, indptr, rank, pol):
            continue
        lam_num = np.array(lam_num_l, dtype=np.int64)
        lam_den = np.array(lam_den_l, dtype=np.int64)
        try:
            bias = np.array(bias_l, dtype=np.int64)
        except OverflowError:
            # biases are exact python ints; runaway growth across pinned
            # evaluations is pathological, so hand over to the safe path
            break
        src_num = lam_num[src_per_edge]
        src_den = lam_den[src_per_edge]
        equal = rank[dst] == rank[src_per_edge]
        cand = np.where(equal, w * src_den - src_num + bias[dst], _INF)
        if _segment_argmin_switch(cand, src_per_edge, indptr, bias, pol):
            continue
        # Bellman optimality reached: the best policy cycle is extremal.
        best = None
        for p, q, cyc in cycles:
            if best is None or p * best[1] < best[0] * q:
                best = (p, q, cyc)
        assert best is not None
        p, q, cyc = best
        weights = [wsel_l[u] for u in cyc]
        return Fraction(p, q), cyc, weights
    return _min_mean_cycle_descent(indptr, dst, w, src_per_edge)


def _cycle_from_parents(parent_edge: list, dst_l: list, src_l: list, start: int,
                        num_nodes: int):
    """Walk parent edges backwards until a node repeats; return that cycle."""
    seen = {}
    v = start
    while v not in seen:
        seen[v] = len(seen)
        e = parent_edge[v]
        if e < 0 or len(seen) > num_nodes + 1:
            raise RuntimeError("negative-cycle parent chain is broken")
        v = src_l[e]
    cycle_edges = []
    u = v
    while True:
        e = parent_edge[u]
        cycle_edges.append(e)
        u = src_l[e]
        if u == v:
            break
    cycle_edges.reverse()
    nodes = [src_l[e] for e in cycle_edges]
    return nodes, cycle_edges


def _min_mean_cycle_descent(indptr, dst, w, src_per_edge):
    """Rescue path: strict descent over cycle means via negative-cycle tests.

    Starting from any policy cycle, test with Bellman-Ford whether a cycle of
    mean strictly below the candidate exists (reduced weights w*q - p); each
    hit strictly lowers the candidate mean, and cycle means form a finite
    set, so this terminates regardless of tie structure.
    """
    num_nodes = len(indptr) - 1
    order = np.argsort(dst, kind="stable")
    dst_sorted = dst[order]
    boundaries = np.flatnonzero(np.diff(dst_sorted)) + 1
    starts = np.concatenate(([0], boundaries))
    present = dst_sorted[starts]
    src_l = src_per_edge.tolist()
    dst_l = dst.tolist()
    w_l = w.tolist()

    pol = _initial_policy(indptr, w)
    succ_l = [dst_l[e] for e in pol.tolist()]
    wsel_l = [w_l[e] for e in pol.tolist()]
    lam_num_l, lam_den_l, _, cycles = _evaluate(num_nodes, succ_l, wsel_l, [0] * num_nodes)
    best = None
    for p, q, cyc in cycles:
        if best is None or p * best[0][1] < best[0][0] * q:
            best = ((p, q), cyc, [wsel_l[u] for u in cyc])

    while True:
        (p, q), cyc, weights = best
        wr = w * q - p
        dist = np.zeros(num_nodes, dtype=np.int64)
        parent = [-1] * num_nodes
        negative_at = -1
        for _ in range(num_nodes):
            vals = dist[src_per_edge] + wr
            vals_sorted = vals[order]
            seg_min = np.minimum.reduceat(vals_sorted, starts)
            cur = dist[present]
            improved = seg_min < cur
            if not improved.any():
                negative_at = -1
                break
            at_min = (vals_sorted == seg_min[np.searchsorted(present, dst_sorted)]) \
                & improved[np.searchsorted(present, dst_sorted)]
            idx = order[np.flatnonzero(at_min)]
            # keep the first improving edge per destination, CSR order
            seen = {}
            for e in idx.tolist():
                t = dst_l[e]
                if t not in seen:
                    seen[t] = e
            for t, e in seen.items():
                nd = dist[src_l[e]] + int(wr[e])
                if nd < dist[t]:
                    dist[t] = nd
                    parent[t] = e
                    negative_at = t
        if negative_at < 0:
            return Fraction(p, q), cyc, weights
        nodes, cycle_edges = _cycle_from_parents(parent, dst_l, src_l, negative_at, num_nodes)
        total = sum(w_l[e] for e in cycle_edges)
        length = len(cycle_edges)
        assert total * q < p * length, "descent did not improve"
        g = gcd(total, length)
        best = ((total // g, length // g), nodes, [w_l[e] for e in cycle_edges])


def max_mean_cycle_howard(indptr: np.ndarray, dst: np.ndarray, w: np.ndarray):
    """Maximum mean cycle via weight negation."""
    mean, cyc, weights = min_mean_cycle_howard(indptr, dst, -np.asarray(w))
    return -mean, cyc, [-x for x in weights]


def csr_from_adjacency(adjacency: list) -> tuple:
    """Build CSR arrays from per-node [(weight, dst), ...] lists."""
    indptr = np.zeros(len(adjacency) + 1, dtype=np.int64)
    for i, lst in enumerate(adjacency):
        indptr[i + 1] = indptr[i] + len(lst)
    total = int(indptr[-1])
    dst = np.zeros(total, dtype=np.int64)
    w = np.zeros(total, dtype=np.int64)
    k = 0
    for lst in adjacency:
        for weight, j in lst:
            dst[k] = j
            w[k] = weight
            k += 1
    return indptr, dst, w


# ---------------------------------------------------------------------------
# Karp's recurrence (exact oracle for small graphs)
# ---------------------------------------------------------------------------


def _strongly_connected_components(n: int, adj: list) -> list:
    """Tarjan's algorithm, iterative."""
    index = [0] * n
    low = [0] * n
    on_stack = bytearray(n)
    visited = bytearray(n)
    stack = []
    comps = []
    counter = [1]
    for root in range(n):
        if visited[root]:
            continue
        work = [(root, 0)]
        while work:
            v, ei = work[-1]
            if ei == 0:
                visited[v] = 1
                index[v] = low[v] = counter[0]
                counter[0] += 1
                stack.append(v)
                on_stack[v] = 1
            advanced = False
            while ei < len(adj[v]):
                u = adj[v][ei][1]
                ei += 1
                if not visited[u]:
                    work[-1] = (v, ei)
                    work.append((u, 0))
                    advanced = True
                    break
                if on_stack[u]:
                    low[v] = min(low[v], index[u])
            if advanced:
                continue
            work.pop()
            if low[v] == index[v]:
                comp = []
                while True:
                    u = stack.pop()
                    on_stack[u] = 0
                    comp.append(u)
                    if u == v:
                        break
                comps.append(comp)
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
    return comps


def max_mean_cycle_karp(num_nodes: int, edges: list) -> Fraction:
    """Maximum mean cycle by Karp's recurrence, run per strongly connected
    component.  edges: list of (u, v, weight) with integer weights.

    Raises NoCycleError when the graph is acyclic.  Value only (no witness);
    intended as a test oracle.
    """
    adj = [[] for _ in range(num_nodes)]
    for u, v, weight in edges:
        adj[u].append((weight, v))
    best: Fraction | None = None
    for comp in _strongly_connected_components(num_nodes, adj):
        comp_set = set(comp)
        if len(comp) == 1:
            v = comp[0]
            loops = [weight for weight, u in adj[v] if u == v]
            if loops:
                cand = Fraction(max(loops))
                if best is None or cand > best:
                    best = cand
            continue
        local = {v: i for i, v in enumerate(comp)}
        m = len(comp)
        ledges = []
        for v in comp:
            for weight, u in adj[v]:
                if u in comp_set:
                    ledges.append((local[v], local[u], weight))
        table = [[None] * m for _ in range(m + 1)]
        for i in range(m):
            table[0][i] = 0
        for k in range(1, m + 1):
            row = table[k]
            prev = table[k - 1]
            for u, v, weight in ledges:
                pu = prev[u]
                if pu is None:
                    continue
                cand = pu + weight
                if row[v] is None or cand > row[v]:
                    row[v] = cand
        for v in range(m):
            fn = table[m][v]
            if fn is None:
                continue
            worst = None
            for k in range(m):
                fk = table[k][v]
                if fk is None:
                    continue
                ratio = Fraction(fn - fk, m - k)
                if worst is None or ratio < worst:
                    worst = ratio
            if worst is not None and (best is None or worst > best):
                best = worst
    if best is None:
        raise NoCycleError("graph has no cycle")
    return best


def min_mean_cycle_karp(num_nodes: int, edges: list) -> Fraction:
    return -max_mean_cycle_karp(num_nodes, [(u, v, -w) for u, v, w in edges])
