"""Compiled counting kernel for big runs.

Counting colorings on benchmark-size graphs takes billions of schedule steps,
so the canonical walk from coloring.py is mirrored here over flat numpy
arrays and JIT-compiled with numba.  The control flow is kept line-for-line
identical to the pure walker; the test suite asserts that both sides produce
exactly the same counters on the whole corpus.  When numba is unavailable the
pure walker runs instead, slower but byte-identical in results.

The kernel can also tally connected 2-factors per completed coloring, which
is how Hamiltonian cycles get counted without materializing colorings.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .coloring import SearchStats, normalize_prefix, prepare_arrays
from .graphs import CubicGraph
from .partition import SchedulePlan

__all__ = ["fast_count", "kernel_available"]

_PAIR_MASKS = (3, 5, 6)  # red|green, red|blue, green|blue as color bits

_kernel = None
_kernel_failed = False


def kernel_available() -> bool:
    return _get_kernel() is not None


def _get_kernel():
    global _kernel, _kernel_failed
    if _kernel is None and not _kernel_failed:
        try:
            from numba import njit
        except ImportError:
            _kernel_failed = True
            return None
        _kernel = njit(cache=True, nogil=True)(_count_loop)
    return _kernel


def _count_loop(
    n,
    m,
    kinds,
    eids,
    owners,
    fars,
    edge_u,
    edge_v,
    inc,
    prefix,
    soft_total,
    check_cycles,
):
    color = np.zeros(m, np.uint8)
    used = np.zeros(n, np.uint8)
    dec_pos = np.zeros(soft_total + 1, np.int32)
    dec_branch = np.zeros(soft_total + 1, np.uint8)
    level = -1
    nfix = len(prefix)
    pos = 0
    resume = False

    decision_nodes = np.int64(0)
    backtracks = np.int64(0)
    conflicts = np.int64(0)
    colorings = np.int64(0)
    cycles = np.int64(0)

    while True:
        need_backtrack = False
        if pos == m:
            colorings += 1
            if check_cycles:
                for pm in (3, 5, 6):
                    v = 0
                    prev_e = -1
                    steps = 0
                    while True:
                        nxt = -1
                        for k in range(3):
                            e = inc[v, k]
                            if e != prev_e and (color[e] & pm) != 0:
                                nxt = e
                                break
                        steps += 1
                        v = edge_v[nxt] if edge_u[nxt] == v else edge_u[nxt]
                        prev_e = nxt
                        if v == 0:
                            break
                    if steps == n:
                        cycles += 1
            need_backtrack = True
        else:
            kind = kinds[pos]
            if kind == 0:
                c = 1 << pos
                e = eids[pos]
                color[e] = c
                used[edge_u[e]] |= c
                used[edge_v[e]] |= c
                pos += 1
                continue
            elif kind != 2:
                c = 7 ^ np.int64(used[owners[pos]])
                if np.int64(used[fars[pos]]) & c:
                    conflicts += 1
                    need_backtrack = True
                else:
                    e = eids[pos]
                    color[e] = c
                    used[edge_u[e]] |= c
                    used[edge_v[e]] |= c
                    pos += 1
                    continue
            else:
                if resume:
                    resume = False
                    branch = 1
                    dec_branch[level] = 1
                else:
                    level += 1
                    dec_pos[level] = pos
                    branch = prefix[level] if level < nfix else 0
                    dec_branch[level] = branch
                decision_nodes += 1
                avail = 7 ^ np.int64(used[owners[pos]])
                low = avail & (-avail)
                c = low if branch == 0 else avail ^ low
                if np.int64(used[fars[pos]]) & c:
                    conflicts += 1
                    need_backtrack = True
                else:
                    e = eids[pos]
                    color[e] = c
                    used[edge_u[e]] |= c
                    used[edge_v[e]] |= c
                    pos += 1
                    continue

        if need_backtrack:
            while level >= 0 and (dec_branch[level] == 1 or level < nfix):
                level -= 1
            if level < 0:
                break
            backtracks += 1
            p = dec_pos[level]
            for t in range(pos - 1, p - 1, -1):
                e = eids[t]
                c = color[e]
                used[edge_u[e]] ^= c
                used[edge_v[e]] ^= c
                color[e] = np.uint8(0)
            pos = p
            resume = True

    return colorings, cycles, decision_nodes, backtracks, conflicts


def _python_count(g: CubicGraph, plan: SchedulePlan, prefix, check_cycles: bool) -> SearchStats:
    # Pure fallback: canonical walk plus an allocation-free factor check.
    from .coloring import _walk

    stats = SearchStats(soft_count=plan.soft_count)
    cycles_found = 0
    emit = None
    if check_cycles:
        n = g.n
        inc = g.incidence
        edges = g.edges

        def emit(colorbits: list[int]) -> bool:
            nonlocal cycles_found
            for pm in _PAIR_MASKS:
                v = 0
                prev_e = -1
                steps = 0
                while True:
                    for e in inc[v]:
                        if e != prev_e and colorbits[e] & pm:
                            break
                    steps += 1
                    a, b = edges[e]
                    v = b if a == v else a
                    prev_e = e
                    if v == 0:
                        break
                if steps == n:
                    cycles_found += 1
            return True

    _walk(g, plan, emit, None, prefix, stats)
    stats.cycles_found = cycles_found
    return stats


def fast_count(
    g: CubicGraph,
    plan: SchedulePlan,
    prefix: "str | Sequence[int] | None" = None,
    check_cycles: bool = False,
    force_python: bool = False,
) -> SearchStats:
    """Count colorings (and optionally Hamiltonian cycles) at compiled speed.

    Exactly the traversal of count_colorings; returns the same counters.
    prefix restricts the run to one branch subtree as in enumerate_prefixed.
    """
    import time

    bits = normalize_prefix(prefix, plan.soft_count)
    kernel = None if force_python else _get_kernel()
    start = time.perf_counter()
    if kernel is None:
        stats = _python_count(g, plan, bits, check_cycles)
        stats.elapsed_seconds = time.perf_counter() - start
        stats.check_invariants()
        return stats

    kinds, eids, owners, fars = prepare_arrays(g, plan)
    edge_u = np.array([u for u, _ in g.edges], np.int32)
    edge_v = np.array([v for _, v in g.edges], np.int32)
    inc = np.array(g.incidence, np.int32)
    colorings, cycles, decisions, backtracks, conflicts = kernel(
        g.n,
        g.m,
        np.array(kinds, np.int8),
        np.array(eids, np.int32),
        np.array(owners, np.int32),
        np.array(fars, np.int32),
        edge_u,
        edge_v,
        inc,
        np.array(bits, np.int8),
        plan.soft_count,
        check_cycles,
    )
    stats = SearchStats(
        soft_count=plan.soft_count,
        decision_nodes=int(decisions),
        backtracks=int(backtracks),
        conflicts=int(conflicts),
        colorings_found=int(colorings),
        cycles_found=int(cycles),
        elapsed_seconds=time.perf_counter() - start,
    )
    stats.check_invariants()
    return stats
