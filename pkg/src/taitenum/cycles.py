"""Tait cycles: 2-factors of a coloring, Hamiltonicity, and the full pipeline.

Any two of the three color classes form a spanning 2-regular subgraph; a
coloring is a witness for a Hamiltonian cycle exactly when one of its three
2-factors is a single cycle.  Painting a Hamiltonian cycle alternately in two
colors and its complement matching in the third inverts the construction, so
streaming colorings and keeping the connected factors lists every Hamiltonian
cycle exactly once.

Cycles are canonicalized as vertex sequences starting at 0 and heading toward
the smaller of 0's two cycle-neighbors; edge ids ride along so parallel edges
stay distinguishable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .coloring import (
    Color,
    SearchStats,
    TaitColoring,
    Visitor,
    enumerate_colorings,
)
from .graphs import CubicGraph
from .partition import SchedulePlan, build_schedule

__all__ = [
    "TwoFactor",
    "CanonicalCycle",
    "two_factors",
    "hamiltonian_of",
    "coloring_from_cycle",
    "enumerate_hamiltonian",
]

COLOR_PAIRS = (
    (Color.RED, Color.GREEN),
    (Color.RED, Color.BLUE),
    (Color.GREEN, Color.BLUE),
)


@dataclass(frozen=True)
class TwoFactor:
    color_pair: tuple[Color, Color]
    edge_ids: frozenset[int]


@dataclass(frozen=True)
class CanonicalCycle:
    """Hamiltonian cycle as a canonical vertex sequence plus its edge ids.

    vertices starts at 0 and runs toward the smaller cycle-neighbor of 0;
    edges[i] joins vertices[i] to vertices[i+1] (cyclically).  Equality and
    hashing ignore the color annotation.
    """

    vertices: tuple[int, ...]
    edges: tuple[int, ...]
    color_pair: tuple[Color, Color] | None = field(default=None, compare=False)

    def format(self) -> str:
        path = "-".join(str(v) for v in self.vertices + (0,))
        if self.color_pair is None:
            return path
        a, b = self.color_pair
        return f"{path} ({a.label}-{b.label})"


def canonicalize_cycle(
    vertices: list[int],
    edges: list[int],
    color_pair: tuple[Color, Color] | None = None,
) -> CanonicalCycle:
    """Rotate to start at 0 and orient toward 0's smaller cycle-neighbor."""
    n = len(vertices)
    at = vertices.index(0)
    verts = vertices[at:] + vertices[:at]
    eids = edges[at:] + edges[:at]
    if verts[1] > verts[-1]:
        verts = [0] + verts[:0:-1]
        eids = eids[::-1]
    return CanonicalCycle(tuple(verts), tuple(eids), color_pair)


def two_factors(g: CubicGraph, c: TaitColoring) -> tuple[TwoFactor, TwoFactor, TwoFactor]:
    """The three color-pair subgraphs, each checked 2-regular and spanning."""
    if not c.is_proper(g):
        raise ValueError("coloring is not proper")
    factors = []
    for pair in COLOR_PAIRS:
        members = frozenset(e for e in range(g.m) if c.assignment[e] in pair)
        degree = [0] * g.n
        for e in members:
            u, v = g.edges[e]
            degree[u] += 1
            degree[v] += 1
        if len(members) != g.n or any(d != 2 for d in degree):
            raise ValueError(f"color pair {pair} does not induce a 2-factor")
        factors.append(TwoFactor(pair, members))
    return tuple(factors)


def _walk_factor(g: CubicGraph, edge_ids: frozenset[int]) -> tuple[list[int], list[int]] | None:
    """Walk the factor component through vertex 0; None unless it spans."""
    start_edges = [e for e in g.incidence[0] if e in edge_ids]
    first = min(start_edges, key=lambda e: (g.other_endpoint(e, 0), e))
    verts = [0]
    eids = [first]
    prev_edge = first
    v = g.other_endpoint(first, 0)
    while v != 0:
        verts.append(v)
        nxt = next(e for e in g.incidence[v] if e in edge_ids and e != prev_edge)
        eids.append(nxt)
        prev_edge = nxt
        v = g.other_endpoint(nxt, v)
    if len(verts) != g.n:
        return None
    return verts, eids


def hamiltonian_of(g: CubicGraph, f: TwoFactor) -> CanonicalCycle | None:
    """The factor as a canonical cycle if it is a single spanning cycle."""
    walk = _walk_factor(g, f.edge_ids)
    if walk is None:
        return None
    verts, eids = walk
    # Starting toward the smaller neighbor makes the walk canonical already.
    return CanonicalCycle(tuple(verts), tuple(eids), f.color_pair)


def coloring_from_cycle(g: CubicGraph, h: CanonicalCycle) -> TaitColoring:
    """Paint the cycle alternately in two colors, its complement in the third.

    The result is re-normalized so vertex 0's edges carry red, green, blue in
    incidence order.
    """
    n = g.n
    if sorted(h.vertices) != list(range(n)) or len(h.edges) != n:
        raise ValueError("not a Hamiltonian vertex sequence of this graph")
    assignment: list[Color | None] = [None] * g.m
    for i, e in enumerate(h.edges):
        u, v = h.vertices[i], h.vertices[(i + 1) % n]
        if set(g.edges[e]) != {u, v}:
            raise ValueError(f"edge {e} does not join {u} and {v}")
        if assignment[e] is not None:
            raise ValueError(f"edge {e} repeated in cycle")
        assignment[e] = Color.RED if i % 2 == 0 else Color.GREEN
    for e in range(g.m):
        if assignment[e] is None:
            assignment[e] = Color.BLUE
    # Renormalize: map the colors at vertex 0's edges onto red, green, blue.
    a, b, c = g.incidence[0]
    perm = {assignment[a]: Color.RED, assignment[b]: Color.GREEN, assignment[c]: Color.BLUE}
    coloring = TaitColoring(tuple(perm[col] for col in assignment))
    if not coloring.is_proper(g):
        raise ValueError("cycle does not induce a proper coloring")
    return coloring


CycleVisitor = "Callable[[CanonicalCycle], bool | None]"


def enumerate_hamiltonian(
    g: CubicGraph,
    visitor=None,
    limit: int | None = None,
    plan: SchedulePlan | None = None,
) -> SearchStats:
    """Stream every Hamiltonian cycle via the coloring pipeline.

    For each streamed coloring the connected 2-factors are emitted as
    canonical cycles; distinct cycles come from distinct colorings, so no
    deduplication state is kept.  limit caps emitted cycles.
    """
    if plan is None:
        plan = build_schedule(g)
    cycles_found = 0
    stopped = False

    def on_coloring(tc: TaitColoring) -> bool:
        nonlocal cycles_found, stopped
        for factor in two_factors(g, tc):
            cycle = hamiltonian_of(g, factor)
            if cycle is None:
                continue
            cycles_found += 1
            if visitor is not None and visitor(cycle) is False:
                stopped = True
                return False
            if limit is not None and cycles_found >= limit:
                stopped = True
                return False
        return True

    stats = enumerate_colorings(g, plan, on_coloring)
    stats.cycles_found = cycles_found
    return stats
