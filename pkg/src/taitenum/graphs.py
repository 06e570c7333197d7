"""Cubic multigraph representation, parsing, validation and generators.

A cubic graph here is a connected 3-regular multigraph: parallel edges are
allowed, loops are not.  Vertices are labeled 0..n-1 and every edge gets a
dense edge id 0..m-1; all downstream code keys on edge ids, never on endpoint
pairs, so parallel edges stay distinguishable.
"""

from __future__ import annotations

import random
from collections import deque
from dataclasses import dataclass, field
from importlib import resources

__all__ = [
    "CubicGraph",
    "ValidationReport",
    "EdgeListSyntaxError",
    "InvalidGraphError",
    "GenerationError",
    "parse_edge_list",
    "serialize_edge_list",
    "builtin",
    "builtin_names",
    "girth",
    "is_bipartite",
    "random_cubic",
    "random_cubic_with_girth",
]

RANDOM_RETRY_CAP = 1000


class EdgeListSyntaxError(ValueError):
    """Malformed EDGE LIST text; carries the 1-based line and column."""

    def __init__(self, line: int, column: int, message: str):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


class InvalidGraphError(ValueError):
    """Structurally well-formed input that is not an acceptable cubic graph."""

    def __init__(self, report: "ValidationReport"):
        super().__init__("; ".join(report.violations) or "invalid graph")
        self.report = report


class GenerationError(RuntimeError):
    """Random generation failed to produce a valid graph within the retry cap."""


@dataclass(frozen=True)
class ValidationReport:
    is_cubic: bool
    is_connected: bool
    has_loop: bool
    girth: int
    violations: list[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


@dataclass(frozen=True)
class CubicGraph:
    """Immutable validated cubic multigraph.

    edges[e] = (u, v) with u < v, sorted by (u, v, occurrence).
    incidence[v] lists the 3 incident edge ids ordered by far-endpoint label
    ascending, ties between parallel edges broken by ascending edge id.
    """

    n: int
    edges: tuple[tuple[int, int], ...]
    incidence: tuple[tuple[int, int, int], ...]
    girth: int

    @property
    def m(self) -> int:
        return len(self.edges)

    def other_endpoint(self, edge_id: int, v: int) -> int:
        u, w = self.edges[edge_id]
        return w if v == u else u

    def neighbors(self, v: int) -> tuple[int, ...]:
        return tuple(self.other_endpoint(e, v) for e in self.incidence[v])

    def is_simple(self) -> bool:
        return len(set(self.edges)) == self.m

    def degree_of_pair(self, u: int, v: int) -> int:
        a, b = min(u, v), max(u, v)
        return sum(1 for e in self.edges if e == (a, b))


def _build_incidence(n: int, edges: list[tuple[int, int]]) -> list[list[int]]:
    inc: list[list[tuple[int, int]]] = [[] for _ in range(n)]
    for eid, (u, v) in enumerate(edges):
        inc[u].append((v, eid))
        inc[v].append((u, eid))
    return [[eid for _, eid in sorted(pairs)] for pairs in inc]


def _connected(n: int, incidence: list[list[int]], edges: list[tuple[int, int]]) -> bool:
    if n == 0:
        return False
    seen = [False] * n
    seen[0] = True
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for eid in incidence[v]:
            u, w = edges[eid]
            far = w if v == u else u
            if not seen[far]:
                seen[far] = True
                queue.append(far)
    return all(seen)


def validate(n: int, raw_edges: list[tuple[int, int]]) -> ValidationReport:
    """Check the cubic-multigraph invariants without building a CubicGraph."""
    violations: list[str] = []
    has_loop = any(u == v for u, v in raw_edges)
    if has_loop:
        loops = sorted({u for u, v in raw_edges if u == v})
        violations.append(f"loop at vertex {loops[0]}")
    if n < 4:
        violations.append(f"vertex count {n} below minimum 4")
    if n % 2:
        violations.append(f"vertex count {n} is odd (cubic graphs have even order)")

    degrees = [0] * n
    out_of_range = False
    for u, v in raw_edges:
        for x in (u, v):
            if 0 <= x < n:
                degrees[x] += 1
            else:
                out_of_range = True
    if out_of_range:
        violations.append("edge endpoint outside 0..n-1")
    bad = [v for v in range(n) if degrees[v] != 3]
    is_cubic = not bad and not has_loop and not out_of_range
    if bad:
        violations.append(f"vertex {bad[0]} has degree {degrees[bad[0]]}, expected 3")

    is_connected = False
    g = 0
    if is_cubic and not has_loop and n >= 4:
        edges = sorted((min(u, v), max(u, v)) for u, v in raw_edges)
        inc = _build_incidence(n, edges)
        is_connected = _connected(n, inc, edges)
        if not is_connected:
            violations.append("graph is not connected")
        else:
            g = _girth(n, edges, inc)
    return ValidationReport(is_cubic, is_connected, has_loop, g, violations)


def _from_raw(n: int, raw_edges: list[tuple[int, int]]) -> CubicGraph:
    report = validate(n, raw_edges)
    if not report.ok:
        raise InvalidGraphError(report)
    edges = sorted((min(u, v), max(u, v)) for u, v in raw_edges)
    inc = _build_incidence(n, edges)
    return CubicGraph(
        n=n,
        edges=tuple(edges),
        incidence=tuple((a, b, c) for a, b, c in inc),
        girth=report.girth,
    )


# ---------------------------------------------------------------------------
# EDGE LIST format
#
#   line 1: `n m`
#   next m lines: `u v`, 0 <= u,v < n, u != v; repeated lines encode
#   parallel edges.  '#' begins a comment line; blank lines are ignored.
# ---------------------------------------------------------------------------

def parse_edge_list(text: str) -> CubicGraph:
    """Parse and validate the EDGE LIST text format."""
    header: tuple[int, int] | None = None
    raw_edges: list[tuple[int, int]] = []
    for lineno, line in enumerate(text.splitlines(), start=1):
        stripped = line.strip()
        if not stripped or stripped.startswith("#"):
            continue
        parts = stripped.split()
        if len(parts) != 2:
            raise EdgeListSyntaxError(lineno, 1, f"expected two integers, got {stripped!r}")
        values = []
        for token in parts:
            try:
                values.append(int(token))
            except ValueError:
                col = line.index(token) + 1
                raise EdgeListSyntaxError(lineno, col, f"not an integer: {token!r}") from None
        a, b = values
        if header is None:
            header = (a, b)
            continue
        n, m = header
        if len(raw_edges) == m:
            raise EdgeListSyntaxError(lineno, 1, f"more than the announced {m} edge lines")
        if not (0 <= a < n) or not (0 <= b < n):
            raise EdgeListSyntaxError(lineno, 1, f"endpoint out of range 0..{n - 1}: {stripped!r}")
        raw_edges.append((a, b))
    if header is None:
        raise EdgeListSyntaxError(1, 1, "missing `n m` header line")
    n, m = header
    if len(raw_edges) != m:
        raise EdgeListSyntaxError(1, 1, f"header announces {m} edges, found {len(raw_edges)}")
    return _from_raw(n, raw_edges)


def serialize_edge_list(g: CubicGraph, comment: str | None = None) -> str:
    lines = []
    if comment:
        lines.append(f"# {comment}")
    lines.append(f"{g.n} {g.m}")
    lines.extend(f"{u} {v}" for u, v in g.edges)
    return "\n".join(lines) + "\n"


def from_edge_pairs(n: int, pairs: list[tuple[int, int]]) -> CubicGraph:
    """Build a validated graph from in-memory endpoint pairs."""
    return _from_raw(n, list(pairs))


# ---------------------------------------------------------------------------
# Girth
# ---------------------------------------------------------------------------

def _girth(n: int, edges: list[tuple[int, int]], incidence: list[list[int]]) -> int:
    # A parallel pair is a 2-cycle and beats anything BFS could find.
    if len(set(edges)) != len(edges):
        return 2
    best = n + 1
    adj = [[] for _ in range(n)]
    for u, v in edges:
        adj[u].append(v)
        adj[v].append(u)
    for s in range(n):
        dist = [-1] * n
        parent = [-1] * n
        dist[s] = 0
        queue = deque([s])
        while queue:
            v = queue.popleft()
            # Any cycle still discoverable from v has length >= 2*dist[v].
            if 2 * dist[v] >= best:
                break
            for w in adj[v]:
                if dist[w] < 0:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif w != parent[v] and v != parent[w]:
                    # Non-tree edge closes a cycle through s of this length
                    # (exact once minimized over all start vertices).
                    best = min(best, dist[v] + dist[w] + 1)
    return best


def girth(g: CubicGraph) -> int:
    """Length of the shortest cycle; 2 for a graph with a parallel pair."""
    return g.girth


def is_bipartite(g: CubicGraph) -> bool:
    side = [-1] * g.n
    side[0] = 0
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in g.neighbors(v):
            if side[w] < 0:
                side[w] = 1 - side[v]
                queue.append(w)
            elif side[w] == side[v]:
                return False
    return True


# ---------------------------------------------------------------------------
# Built-in graphs
# ---------------------------------------------------------------------------

_CUBE_EDGES = [
    (0, 1), (0, 3), (0, 7), (1, 2), (1, 6), (2, 3),
    (2, 5), (3, 4), (4, 5), (4, 7), (5, 6), (6, 7),
]

_K4_EDGES = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]

_K33_EDGES = [(u, v) for u in range(3) for v in range(3, 6)]

_PRISM_EDGES = [(0, 1), (0, 2), (1, 2), (3, 4), (3, 5), (4, 5), (0, 3), (1, 4), (2, 5)]

_PETERSEN_EDGES = [
    (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
    (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
    (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
]


def _load_horton() -> CubicGraph:
    text = resources.files("taitenum.data").joinpath("horton.edges").read_text()
    return parse_edge_list(text)


_BUILTINS = {
    "cube": lambda: from_edge_pairs(8, _CUBE_EDGES),
    "k4": lambda: from_edge_pairs(4, _K4_EDGES),
    "k33": lambda: from_edge_pairs(6, _K33_EDGES),
    "prism": lambda: from_edge_pairs(6, _PRISM_EDGES),
    "petersen": lambda: from_edge_pairs(10, _PETERSEN_EDGES),
    "horton": _load_horton,
}


def builtin_names() -> tuple[str, ...]:
    return tuple(sorted(_BUILTINS))


def builtin(name: str) -> CubicGraph:
    """Return a named fixture graph with its canonical labeling."""
    try:
        factory = _BUILTINS[name]
    except KeyError:
        raise ValueError(f"unknown builtin graph {name!r}; known: {', '.join(builtin_names())}") from None
    return factory()


# ---------------------------------------------------------------------------
# Random generation (configuration model)
# ---------------------------------------------------------------------------

def random_cubic(n: int, seed: int) -> CubicGraph:
    """Seeded configuration-model draw of a connected loop-free cubic multigraph.

    Pairs 3n stubs uniformly and rejects draws with loops or a disconnected
    result; parallel edges are kept.  Identical (n, seed) always yields the
    identical graph.
    """
    if n < 4 or n % 2:
        raise ValueError(f"n must be an even integer >= 4, got {n}")
    rng = random.Random(seed)
    for _ in range(RANDOM_RETRY_CAP):
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        pairs = [(stubs[i], stubs[i + 1]) for i in range(0, 3 * n, 2)]
        if any(u == v for u, v in pairs):
            continue
        if validate(n, pairs).ok:
            return _from_raw(n, pairs)
    raise GenerationError(f"no valid cubic graph on {n} vertices after {RANDOM_RETRY_CAP} draws (seed {seed})")


def random_cubic_with_girth(n: int, seed: int, min_girth: int = 4) -> CubicGraph:
    """Configuration-model draw rejecting any graph of girth below min_girth.

    min_girth >= 3 forces a simple graph; the default 4 additionally rejects
    triangles.  Used to build the triangle-free test corpus.
    """
    if n < 6 and min_girth >= 4:
        raise ValueError("no triangle-free cubic graph below 6 vertices")
    rng = random.Random(seed)
    for _ in range(RANDOM_RETRY_CAP):
        stubs = [v for v in range(n) for _ in range(3)]
        rng.shuffle(stubs)
        pairs = [(stubs[i], stubs[i + 1]) for i in range(0, 3 * n, 2)]
        if any(u == v for u, v in pairs):
            continue
        report = validate(n, pairs)
        if report.ok and report.girth >= min_girth:
            return _from_raw(n, pairs)
    raise GenerationError(f"no cubic graph of girth >= {min_girth} on {n} vertices after {RANDOM_RETRY_CAP} draws (seed {seed})")
