"""First run: split vertices into rigid and soft, emit the edge schedule.

The schedule is an ordered list of all m edges with a role on each entry.
The coloring pass later replays it as a straight-line program: Initial
entries seed vertex 0, Forced entries have exactly one legal color, and only
the PairFirst entries of soft vertices are binary branch points.

The builder is deliberately deterministic: ties are always broken toward the
smallest vertex label, and the saturation scan restarts after every
promotion.  Identical graphs therefore yield bit-identical plans.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .graphs import CubicGraph, ValidationReport

__all__ = [
    "Role",
    "ScheduleEntry",
    "CoverSnapshot",
    "SchedulePlan",
    "build_schedule",
    "verify_schedule",
    "InternalInvariantError",
]


class InternalInvariantError(AssertionError):
    """A structural invariant the builder guarantees was observed broken."""


class Role(Enum):
    INITIAL = "initial"
    FORCED = "forced"
    PAIR_FIRST = "pair_first"
    PAIR_SECOND = "pair_second"


@dataclass(frozen=True)
class ScheduleEntry:
    edge_id: int
    role: Role
    owner: int | None  # None for Initial; the deciding vertex otherwise


@dataclass(frozen=True)
class CoverSnapshot:
    """Set sizes at the first moment rigid + soft + unidentified covers V."""

    soft: int
    unidentified: int
    rigid: int

    @property
    def n(self) -> int:
        return self.soft + self.unidentified + self.rigid

    @property
    def inequality_ok(self) -> bool:
        # 2*#soft <= #unidentified + #rigid, which forces #soft <= n/3 here.
        return 2 * self.soft <= self.unidentified + self.rigid


@dataclass(frozen=True)
class SchedulePlan:
    rigid: frozenset[int]
    soft: tuple[int, ...]  # discovery order
    schedule: tuple[ScheduleEntry, ...]
    snapshot: CoverSnapshot

    @property
    def soft_count(self) -> int:
        return len(self.soft)


def build_schedule(g: CubicGraph) -> SchedulePlan:
    """Classify vertices rigid/soft and order all edges for the coloring pass.

    Loop: seed vertex 0 as rigid with its three edges; then alternate
    (a) saturation - while some unidentified vertex bounds two or more
    scheduled edges, promote the smallest such to rigid and append its
    missing edge, and (b) softening - move the smallest unidentified vertex
    to soft and append its two unscheduled edges as a pair.
    """
    n = g.n
    rigid: set[int] = set()
    soft: list[int] = []
    unidentified: set[int] = set()
    seen = [False] * n
    scheduled = [False] * g.m
    sched_count = [0] * n  # scheduled edges incident to each vertex
    entries: list[ScheduleEntry] = []
    snapshot: CoverSnapshot | None = None
    seen_total = 0

    def mark_seen(v: int) -> None:
        nonlocal seen_total, snapshot
        if not seen[v]:
            seen[v] = True
            seen_total += 1
            if snapshot is None and seen_total == n:
                snapshot = CoverSnapshot(len(soft), len(unidentified), len(rigid))

    def append(eid: int, role: Role, owner: int | None) -> None:
        scheduled[eid] = True
        u, v = g.edges[eid]
        sched_count[u] += 1
        sched_count[v] += 1
        entries.append(ScheduleEntry(eid, role, owner))

    def reach(v: int) -> None:
        if not seen[v]:
            unidentified.add(v)
            mark_seen(v)

    # Seed: vertex 0 is rigid, its edges open the schedule.
    rigid.add(0)
    mark_seen(0)
    for eid in g.incidence[0]:
        append(eid, Role.INITIAL, None)
    for eid in g.incidence[0]:
        reach(g.other_endpoint(eid, 0))

    def saturate() -> None:
        while True:
            ready = [v for v in unidentified if sched_count[v] >= 2]
            if not ready:
                return
            v = min(ready)
            unidentified.remove(v)
            rigid.add(v)
            missing = [eid for eid in g.incidence[v] if not scheduled[eid]]
            if missing:
                (eid,) = missing
                append(eid, Role.FORCED, v)
                reach(g.other_endpoint(eid, v))

    saturate()
    while unidentified:
        v = min(unidentified)
        unidentified.remove(v)
        soft.append(v)
        pair = [eid for eid in g.incidence[v] if not scheduled[eid]]
        if len(pair) != 2:
            raise InternalInvariantError(f"soft vertex {v} has {len(pair)} unscheduled edges, expected 2")
        append(pair[0], Role.PAIR_FIRST, v)
        append(pair[1], Role.PAIR_SECOND, v)
        for eid in pair:
            reach(g.other_endpoint(eid, v))
        saturate()

    if len(entries) != g.m:
        raise InternalInvariantError(f"schedule covers {len(entries)} of {g.m} edges (graph not connected?)")
    if snapshot is None:
        raise InternalInvariantError("cover snapshot never taken")
    return SchedulePlan(
        rigid=frozenset(rigid),
        soft=tuple(soft),
        schedule=tuple(entries),
        snapshot=snapshot,
    )


def verify_schedule(g: CubicGraph, plan: SchedulePlan) -> ValidationReport:
    """Re-check every SchedulePlan invariant without re-running the builder.

    The graph-shape fields of the report describe g; plan violations are
    appended to the violations list.
    """
    violations: list[str] = []

    if plan.rigid & set(plan.soft):
        violations.append("rigid and soft overlap")
    if plan.rigid | set(plan.soft) != set(range(g.n)):
        violations.append("rigid and soft do not partition the vertex set")
    if len(set(plan.soft)) != len(plan.soft):
        violations.append("soft sequence repeats a vertex")

    ids = [e.edge_id for e in plan.schedule]
    if sorted(ids) != list(range(g.m)):
        violations.append("schedule is not a permutation of all edge ids")

    expected_seed = g.incidence[0]
    head = tuple(e.edge_id for e in plan.schedule[:3])
    if head != expected_seed or any(e.role is not Role.INITIAL for e in plan.schedule[:3]):
        violations.append("entries 0..2 are not vertex 0's edges in incidence order as Initial")
    if any(e.role is Role.INITIAL for e in plan.schedule[3:]):
        violations.append("Initial entry outside the seed prefix")

    soft_set = set(plan.soft)
    seen_edges: set[int] = set()
    for idx, entry in enumerate(plan.schedule):
        owner = entry.owner
        if entry.role is Role.FORCED:
            if owner is None or owner not in plan.rigid:
                violations.append(f"entry {idx}: Forced owner {owner} is not a rigid vertex")
            elif owner not in g.edges[entry.edge_id]:
                violations.append(f"entry {idx}: owner {owner} not an endpoint of edge {entry.edge_id}")
            else:
                others = [e for e in g.incidence[owner] if e != entry.edge_id]
                if not all(e in seen_edges for e in others):
                    violations.append(f"entry {idx}: Forced edge precedes its owner's other edges")
        elif entry.role is Role.PAIR_FIRST:
            if owner is None or owner not in soft_set:
                violations.append(f"entry {idx}: PairFirst owner {owner} is not a soft vertex")
            else:
                known = [e for e in g.incidence[owner] if e in seen_edges]
                if len(known) != 1:
                    violations.append(f"entry {idx}: soft owner {owner} has {len(known)} earlier edges, expected 1")
            nxt = plan.schedule[idx + 1] if idx + 1 < len(plan.schedule) else None
            if nxt is None or nxt.role is not Role.PAIR_SECOND or nxt.owner != owner:
                violations.append(f"entry {idx}: PairFirst not followed by its PairSecond")
        elif entry.role is Role.PAIR_SECOND:
            prv = plan.schedule[idx - 1] if idx > 0 else None
            if prv is None or prv.role is not Role.PAIR_FIRST or prv.owner != owner:
                violations.append(f"entry {idx}: PairSecond not preceded by its PairFirst")
        seen_edges.add(entry.edge_id)

    pair_first_owners = [e.owner for e in plan.schedule if e.role is Role.PAIR_FIRST]
    if pair_first_owners != list(plan.soft):
        violations.append("pair entries do not follow soft discovery order")

    return ValidationReport(
        is_cubic=True,
        is_connected=True,
        has_loop=False,
        girth=g.girth,
        violations=violations,
    )
