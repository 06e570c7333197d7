"""Naive reference enumerators for differential testing.

These deliberately share nothing with the schedule-driven pipeline beyond
the graph type: colorings come from a plain per-edge depth-first search and
Hamiltonian cycles from path extension, so agreement between the two sides
is meaningful evidence.  Hard caps keep accidental exponential runs out of
the test suite.
"""

from __future__ import annotations

from .coloring import Color, TaitColoring
from .cycles import CanonicalCycle, canonicalize_cycle
from .graphs import CubicGraph

__all__ = [
    "ORACLE_CAP",
    "brute_colorings",
    "brute_coloring_count_unnormalized",
    "brute_hamiltonian",
]

ORACLE_CAP = 16


def _check_cap(g: CubicGraph, cap: int) -> None:
    if g.n > cap:
        raise ValueError(f"oracle cap exceeded: n={g.n} > {cap}")


def _proper_assignments(g: CubicGraph):
    """Yield every proper assignment (list of Colors indexed by edge id)."""
    m = g.m
    used = [0] * g.n
    assignment: list[Color | None] = [None] * m

    def extend(e: int):
        if e == m:
            yield list(assignment)
            return
        u, v = g.edges[e]
        for color in Color:
            bit = color.bit
            if used[u] & bit or used[v] & bit:
                continue
            used[u] |= bit
            used[v] |= bit
            assignment[e] = color
            yield from extend(e + 1)
            used[u] ^= bit
            used[v] ^= bit
            assignment[e] = None

    yield from extend(0)


def brute_colorings(g: CubicGraph, cap: int = ORACLE_CAP) -> set[TaitColoring]:
    """All normalized proper colorings by exhaustive per-edge search."""
    _check_cap(g, cap)
    out = set()
    for assignment in _proper_assignments(g):
        coloring = TaitColoring(tuple(assignment))
        if coloring.is_normalized(g):
            out.add(coloring)
    return out


def brute_coloring_count_unnormalized(g: CubicGraph, cap: int = ORACLE_CAP) -> int:
    """Count of all proper colorings with no normalization filter."""
    _check_cap(g, cap)
    return sum(1 for _ in _proper_assignments(g))


def brute_hamiltonian(g: CubicGraph, cap: int = ORACLE_CAP) -> set[CanonicalCycle]:
    """All Hamiltonian cycles by path extension from vertex 0.

    Cycles are keyed by (vertex sequence, edge ids); parallel edges yield
    distinct cycles through the same vertices.
    """
    _check_cap(g, cap)
    n = g.n
    out: set[CanonicalCycle] = set()
    visited = [False] * n
    visited[0] = True
    path = [0]
    path_edges: list[int] = []

    def extend(v: int):
        if len(path) == n:
            for e in g.incidence[v]:
                if g.other_endpoint(e, v) == 0 and e not in path_edges:
                    out.add(canonicalize_cycle(list(path), path_edges + [e]))
            return
        for e in g.incidence[v]:
            w = g.other_endpoint(e, v)
            if visited[w]:
                continue
            visited[w] = True
            path.append(w)
            path_edges.append(e)
            extend(w)
            visited[w] = False
            path.pop()
            path_edges.pop()

    extend(0)
    return out
