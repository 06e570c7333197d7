"""Second run: stream every proper 3-edge coloring by replaying the schedule.

The walk paints edges in schedule order.  Initial entries pin vertex 0 to
red, green, blue; Forced and PairSecond entries take the single color their
owner is missing; PairFirst entries are the only branch points, trying the
smaller remaining color first (branch A) and the swap second (branch B).
Colorings therefore stream in one canonical depth-first order, normalized so
vertex 0's edges are always red, green, blue.

State restoration is a linear unpaint of the schedule suffix, so recursion
depth never exceeds the soft-vertex count.
"""

from __future__ import annotations

import time
from dataclasses import dataclass
from enum import IntEnum
from typing import Callable, Iterable, Sequence

from .graphs import CubicGraph
from .partition import InternalInvariantError, Role, SchedulePlan

__all__ = [
    "Color",
    "TaitColoring",
    "SearchStats",
    "enumerate_colorings",
    "count_colorings",
    "enumerate_prefixed",
]

Visitor = Callable[["TaitColoring"], "bool | None"]

_KIND = {Role.INITIAL: 0, Role.FORCED: 1, Role.PAIR_FIRST: 2, Role.PAIR_SECOND: 3}
_BIT_TO_COLOR = {1: 0, 2: 1, 4: 2}


class Color(IntEnum):
    RED = 0
    GREEN = 1
    BLUE = 2

    @property
    def bit(self) -> int:
        return 1 << self.value

    @property
    def label(self) -> str:
        return self.name.lower()


@dataclass(frozen=True)
class TaitColoring:
    """A proper 3-edge coloring, one Color per edge id."""

    assignment: tuple[Color, ...]

    def __getitem__(self, edge_id: int) -> Color:
        return self.assignment[edge_id]

    def is_proper(self, g: CubicGraph) -> bool:
        return all(len({self.assignment[e] for e in g.incidence[v]}) == 3 for v in range(g.n))

    def is_normalized(self, g: CubicGraph) -> bool:
        a, b, c = g.incidence[0]
        return (self.assignment[a], self.assignment[b], self.assignment[c]) == (
            Color.RED,
            Color.GREEN,
            Color.BLUE,
        )


@dataclass
class SearchStats:
    soft_count: int = 0
    decision_nodes: int = 0
    backtracks: int = 0
    conflicts: int = 0
    colorings_found: int = 0
    cycles_found: int = 0
    elapsed_seconds: float = 0.0

    @property
    def bound_exponent(self) -> int:
        """Exponent of the 2**soft_count search-width bound."""
        return self.soft_count

    def merged_with(self, other: "SearchStats") -> "SearchStats":
        """Additive merge for prefix-split runs over the same plan."""
        if self.soft_count != other.soft_count:
            raise ValueError("cannot merge stats from different plans")
        return SearchStats(
            soft_count=self.soft_count,
            decision_nodes=self.decision_nodes + other.decision_nodes,
            backtracks=self.backtracks + other.backtracks,
            conflicts=self.conflicts + other.conflicts,
            colorings_found=self.colorings_found + other.colorings_found,
            cycles_found=self.cycles_found + other.cycles_found,
            elapsed_seconds=self.elapsed_seconds + other.elapsed_seconds,
        )

    def check_invariants(self) -> None:
        if self.colorings_found > 2 ** self.soft_count:
            raise InternalInvariantError(
                f"{self.colorings_found} colorings exceeds 2^{self.soft_count}"
            )
        if self.decision_nodes > 2 ** (self.soft_count + 1):
            raise InternalInvariantError(
                f"{self.decision_nodes} decision nodes exceeds 2^{self.soft_count + 1}"
            )


def prepare_arrays(
    g: CubicGraph, plan: SchedulePlan
) -> tuple[tuple[int, ...], tuple[int, ...], tuple[int, ...], tuple[int, ...]]:
    """(kinds, edge_ids, owners, fars) per schedule entry, for the walkers."""
    kinds = []
    eids = []
    owners = []
    fars = []
    for entry in plan.schedule:
        owner = entry.owner if entry.owner is not None else 0
        kinds.append(_KIND[entry.role])
        eids.append(entry.edge_id)
        owners.append(owner)
        fars.append(g.other_endpoint(entry.edge_id, owner))
    return tuple(kinds), tuple(eids), tuple(owners), tuple(fars)


def normalize_prefix(prefix: "str | Sequence[int] | None", soft_count: int) -> tuple[int, ...]:
    """Accept 'AAB'-style strings or 0/1 sequences; validate the length."""
    if prefix is None:
        return ()
    if isinstance(prefix, str):
        bits = []
        for ch in prefix.upper():
            if ch not in "AB":
                raise ValueError(f"prefix may only contain A or B, got {ch!r}")
            bits.append(0 if ch == "A" else 1)
    else:
        bits = [int(b) for b in prefix]
        if any(b not in (0, 1) for b in bits):
            raise ValueError("prefix entries must be 0 (A) or 1 (B)")
    if len(bits) > soft_count:
        raise ValueError(f"prefix length {len(bits)} exceeds soft count {soft_count}")
    return tuple(bits)


def _walk(
    g: CubicGraph,
    plan: SchedulePlan,
    emit: "Callable[[list[int]], bool] | None",
    limit: int | None,
    prefix: tuple[int, ...],
    stats: SearchStats,
) -> None:
    """Canonical depth-first schedule walk; emit gets the live bitmask array."""
    m = g.m
    kinds, eids, owners, fars = prepare_arrays(g, plan)
    edges = g.edges
    color = [0] * m
    used = [0] * g.n

    soft_total = plan.soft_count
    dec_pos = [0] * soft_total
    dec_branch = [0] * soft_total
    level = -1
    nfix = len(prefix)
    pos = 0
    resume = False  # next PairFirst encountered is a branch-B re-entry

    decision_nodes = backtracks = conflicts = colorings = 0

    while True:
        need_backtrack = False
        if pos == m:
            colorings += 1
            keep = True
            if emit is not None:
                keep = emit(color) is not False
            if not keep or (limit is not None and colorings >= limit):
                break
            need_backtrack = True
        else:
            kind = kinds[pos]
            if kind == 0:  # Initial: red, green, blue at positions 0, 1, 2
                c = 1 << pos
                e = eids[pos]
                u, v = edges[e]
                color[e] = c
                used[u] |= c
                used[v] |= c
                pos += 1
                continue
            elif kind != 2:  # Forced / PairSecond: unique color missing at owner
                c = 7 ^ used[owners[pos]]
                f = fars[pos]
                if used[f] & c:
                    conflicts += 1
                    need_backtrack = True
                else:
                    e = eids[pos]
                    u, v = edges[e]
                    color[e] = c
                    used[u] |= c
                    used[v] |= c
                    pos += 1
                    continue
            else:  # PairFirst: the only branch point
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
                avail = 7 ^ used[owners[pos]]
                low = avail & (-avail)
                c = low if branch == 0 else avail ^ low
                f = fars[pos]
                if used[f] & c:
                    conflicts += 1
                    need_backtrack = True
                else:
                    e = eids[pos]
                    u, v = edges[e]
                    color[e] = c
                    used[u] |= c
                    used[v] |= c
                    pos += 1
                    continue

        if need_backtrack:
            # Deepest decision still holding an untried branch B; prefix
            # levels are pinned and never flip.
            while level >= 0 and (dec_branch[level] == 1 or level < nfix):
                level -= 1
            if level < 0:
                break
            backtracks += 1
            p = dec_pos[level]
            for t in range(pos - 1, p - 1, -1):
                e = eids[t]
                c = color[e]
                u, v = edges[e]
                used[u] ^= c
                used[v] ^= c
                color[e] = 0
            pos = p
            resume = True

    stats.decision_nodes += decision_nodes
    stats.backtracks += backtracks
    stats.conflicts += conflicts
    stats.colorings_found += colorings


def _run(
    g: CubicGraph,
    plan: SchedulePlan,
    visitor: Visitor | None,
    limit: int | None,
    prefix: tuple[int, ...],
) -> SearchStats:
    stats = SearchStats(soft_count=plan.soft_count)
    emit = None
    if visitor is not None:

        def emit(colorbits: list[int]) -> bool:
            snapshot = TaitColoring(tuple(Color(_BIT_TO_COLOR[c]) for c in colorbits))
            return visitor(snapshot) is not False

    start = time.perf_counter()
    _walk(g, plan, emit, limit, prefix, stats)
    stats.elapsed_seconds = time.perf_counter() - start
    stats.check_invariants()
    return stats


def enumerate_colorings(
    g: CubicGraph,
    plan: SchedulePlan,
    visitor: Visitor,
    limit: int | None = None,
) -> SearchStats:
    """Stream every normalized proper coloring to the visitor in canonical order.

    The visitor receives an immutable TaitColoring per hit and may return
    False to stop early; limit caps the number of visits.  An uncolorable
    graph yields zero visits, not an error.
    """
    return _run(g, plan, visitor, limit, ())


def count_colorings(g: CubicGraph, plan: SchedulePlan) -> SearchStats:
    """Identical traversal with a counting sink and no per-coloring snapshots."""
    return _run(g, plan, None, None, ())


def enumerate_prefixed(
    g: CubicGraph,
    plan: SchedulePlan,
    prefix: "str | Sequence[int]",
    visitor: Visitor | None = None,
    limit: int | None = None,
) -> SearchStats:
    """Enumerate only the subtree where the first k soft branches are pinned.

    Subtree counts over all 2**k prefixes of length k sum to the full count,
    which is what makes prefix splitting safe for parallel runs.
    """
    bits = normalize_prefix(prefix, plan.soft_count)
    return _run(g, plan, visitor, limit, bits)
