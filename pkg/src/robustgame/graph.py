"""Undirected simple graph with stable vertex labels and a removal ledger."""

from __future__ import annotations

import math
from collections import deque
from dataclasses import dataclass
from typing import Iterable, Iterator

INF = math.inf


class GraphError(ValueError):
    """Raised when an operation references a dead or unknown vertex."""


class EdgeListParseError(ValueError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


def edge_key(u: int, v: int) -> tuple[int, int]:
    return (u, v) if u < v else (v, u)


@dataclass(frozen=True, order=True)
class ComponentRef:
    """A vertex (``kind == "V"``) or an unordered edge (``kind == "E"``)."""

    kind: str
    id: int | tuple[int, int]

    @classmethod
    def vertex(cls, v: int) -> "ComponentRef":
        return cls("V", v)

    @classmethod
    def edge(cls, u: int, v: int) -> "ComponentRef":
        return cls("E", edge_key(u, v))

    def __str__(self) -> str:
        if self.kind == "V":
            return str(self.id)
        u, v = self.id
        return f"{u}-{v}"


class Graph:
    """Mutable simple undirected graph.

    Vertices keep their integer labels for life. ``remove_vertex`` moves a
    vertex and the edges it had at removal time into ``removed``, from where
    the repair code can bring them back.
    """

    def __init__(self, n: int = 0):
        self.adj: dict[int, set[int]] = {}
        self.removed: dict[int, frozenset[int]] = {}
        self._next_id = 0
        self.m = 0
        for _ in range(n):
            self.add_vertex()

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        g = cls(n)
        for u, v in edges:
            g.add_edge(u, v)
        return g

    @property
    def n(self) -> int:
        return len(self.adj)

    def vertices(self) -> list[int]:
        return sorted(self.adj)

    def edges(self) -> list[tuple[int, int]]:
        return sorted((u, v) for u, nbrs in self.adj.items() for v in nbrs if u < v)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.adj))

    def __contains__(self, v: object) -> bool:
        return v in self.adj

    def degree(self, v: int) -> int:
        return len(self.adj[v])

    def neighbors(self, v: int) -> set[int]:
        self._check(v)
        return self.adj[v]

    def has_edge(self, u: int, v: int) -> bool:
        return u in self.adj and v in self.adj[u]

    def copy(self) -> "Graph":
        g = Graph()
        g.adj = {v: set(nb) for v, nb in self.adj.items()}
        g.removed = dict(self.removed)
        g._next_id = self._next_id
        g.m = self.m
        return g

    def _check(self, v: int) -> None:
        if v not in self.adj:
            state = "removed" if v in self.removed else "unknown"
            raise GraphError(f"vertex {v} is {state}")

    # -- mutation -----------------------------------------------------------

    def add_vertex(self) -> int:
        v = self._next_id
        self._next_id += 1
        self.adj[v] = set()
        return v

    def add_edge(self, u: int, v: int) -> bool:
        self._check(u)
        self._check(v)
        if u == v:
            raise GraphError(f"self-loop on vertex {u}")
        if v in self.adj[u]:
            return False
        self.adj[u].add(v)
        self.adj[v].add(u)
        self.m += 1
        return True

    def remove_edge(self, u: int, v: int) -> None:
        self._check(u)
        self._check(v)
        if v not in self.adj[u]:
            raise GraphError(f"no edge {u}-{v}")
        self.adj[u].discard(v)
        self.adj[v].discard(u)
        self.m -= 1

    def remove_vertex(self, v: int) -> None:
        self._check(v)
        nbrs = self.adj.pop(v)
        for u in nbrs:
            self.adj[u].discard(v)
        self.m -= len(nbrs)
        self.removed[v] = frozenset(nbrs)

    def restore_vertex(self, v: int) -> frozenset[int]:
        """Bring ``v`` back with no edges; returns its ledgered neighbors."""
        if v not in self.removed:
            raise GraphError(f"vertex {v} is not in the removal ledger")
        nbrs = self.removed.pop(v)
        self.adj[v] = set()
        return nbrs

    def remove(self, ref: ComponentRef) -> None:
        if ref.kind == "V":
            self.remove_vertex(ref.id)
        else:
            self.remove_edge(*ref.id)

    def canonical_key(self) -> tuple:
        """Hashable state key: alive vertices plus alive edges (labels are stable)."""
        return (tuple(sorted(self.adj)), tuple(self.edges()))

    def check_invariants(self) -> None:
        total = 0
        for v, nbrs in self.adj.items():
            assert v not in nbrs, f"self-loop at {v}"
            for u in nbrs:
                assert u in self.adj and v in self.adj[u], f"asymmetric edge {v}-{u}"
            total += len(nbrs)
        assert total == 2 * self.m, "edge count out of sync"
        assert not (self.removed.keys() & self.adj.keys())

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.adj == other.adj and self.removed == other.removed

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m}, removed={len(self.removed)})"


# -- connectivity and distances -------------------------------------------


def bfs_distances(g: Graph, source: int) -> dict[int, float]:
    """Hop counts from ``source``; unreachable vertices map to ``INF``."""
    g._check(source)
    dist: dict[int, float] = {v: INF for v in g.adj}
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        du = dist[u] + 1
        for w in g.adj[u]:
            if dist[w] == INF:
                dist[w] = du
                queue.append(w)
    return dist


def _reach(g: Graph, source: int) -> set[int]:
    seen = {source}
    queue = deque([source])
    while queue:
        u = queue.popleft()
        for w in g.adj[u]:
            if w not in seen:
                seen.add(w)
                queue.append(w)
    return seen


def is_connected(g: Graph) -> bool:
    # One alive vertex counts as connected; so does the empty graph.
    if g.n <= 1:
        return True
    return len(_reach(g, next(iter(g.adj)))) == g.n


def connected_components(g: Graph) -> list[set[int]]:
    """Components ordered by their smallest vertex."""
    comps = []
    seen: set[int] = set()
    for v in sorted(g.adj):
        if v not in seen:
            comp = _reach(g, v)
            seen |= comp
            comps.append(comp)
    return comps


def largest_component(g: Graph) -> set[int]:
    comps = connected_components(g)
    if not comps:
        return set()
    # comps is ordered by min vertex, so max() keeps the earliest on ties
    return max(comps, key=len)


def induced_subgraph(g: Graph, keep: Iterable[int]) -> Graph:
    keep = set(keep)
    sub = Graph()
    sub._next_id = g._next_id
    for v in keep:
        g._check(v)
        sub.adj[v] = g.adj[v] & keep
    sub.m = sum(len(nb) for nb in sub.adj.values()) // 2
    return sub


def induced_subgraph_by_radius(g: Graph, root: int, pl: int) -> Graph:
    """Subgraph induced on every vertex within ``pl`` hops of ``root``."""
    if pl < 0:
        raise ValueError("pl must be >= 0")
    dist = bfs_distances(g, root)
    return induced_subgraph(g, (v for v, d in dist.items() if d <= pl))


# -- edge-list format -------------------------------------------------------


def format_edge_list(g: Graph, comments: Iterable[str] = ()) -> str:
    """Serialize alive vertices and edges.

    Labels are compacted to 0..n-1 in sorted order when the graph has
    removed vertices, so the header count always matches.
    """
    verts = g.vertices()
    index = {v: i for i, v in enumerate(verts)}
    lines = [f"# {c}" for c in comments]
    edges = g.edges()
    lines.append(f"{len(verts)} {len(edges)}")
    lines.extend(f"{index[u]} {index[v]}" for u, v in edges)
    return "\n".join(lines) + "\n"


def parse_edge_list(text: str) -> Graph:
    header = None
    g = None
    count = 0
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2:
            raise EdgeListParseError(lineno, f"expected two integers, got {raw.strip()!r}")
        try:
            a, b = int(parts[0]), int(parts[1])
        except ValueError:
            raise EdgeListParseError(lineno, f"non-integer token in {raw.strip()!r}") from None
        if header is None:
            if a < 0 or b < 0:
                raise EdgeListParseError(lineno, "negative header count")
            header = (a, b)
            g = Graph(a)
            continue
        if not (0 <= a < header[0] and 0 <= b < header[0]):
            raise EdgeListParseError(lineno, f"vertex out of range 0..{header[0] - 1}")
        if a == b:
            raise EdgeListParseError(lineno, f"self-loop on vertex {a}")
        if not g.add_edge(a, b):
            raise EdgeListParseError(lineno, f"duplicate edge {a}-{b}")
        count += 1
    if header is None:
        raise EdgeListParseError(0, "missing 'n m' header")
    if count != header[1]:
        raise EdgeListParseError(0, f"header declares {header[1]} edges, found {count}")
    return g


def read_edge_list(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return parse_edge_list(fh.read())


def write_edge_list(g: Graph, path, comments: Iterable[str] = ()) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_edge_list(g, comments))
