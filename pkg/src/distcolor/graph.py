"""Simple undirected graphs, edge-list I/O and distance/sparsity analytics.

Vertices are integer ids.  Graphs read from disk use the dense ids
``0..n-1``; subgraphs produced by :meth:`Graph.without` keep the ids of
the host graph so colorings can be merged back without relabelling.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Mapping


class EdgeListError(ValueError):
    """Malformed edge-list input; ``line`` is 1-based."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


class Graph:
    """Immutable simple undirected graph.

    ``adjacency`` maps every vertex to its neighbours.  Self-loops and
    asymmetric adjacency are rejected; duplicate neighbours collapse.
    """

    __slots__ = ("_adj", "_m")

    def __init__(self, adjacency: Mapping[int, Iterable[int]]):
        adj: dict[int, tuple[int, ...]] = {}
        for v, nbrs in adjacency.items():
            ns = tuple(sorted(set(nbrs)))
            if v in ns:
                raise ValueError(f"self-loop at vertex {v}")
            adj[v] = ns
        half = 0
        for v, ns in adj.items():
            for w in ns:
                if w not in adj or v not in adj[w]:
                    raise ValueError(f"adjacency is not symmetric on edge {v}-{w}")
            half += len(ns)
        self._adj = dict(sorted(adj.items()))
        self._m = half // 2

    @classmethod
    def from_edges(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Graph":
        adj: dict[int, set[int]] = {v: set() for v in range(n)}
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            adj[u].add(v)
            adj[v].add(u)
        return cls(adj)

    @property
    def n(self) -> int:
        return len(self._adj)

    @property
    def edge_count(self) -> int:
        return self._m

    def vertices(self) -> tuple[int, ...]:
        return tuple(self._adj)

    def neighbors(self, v: int) -> tuple[int, ...]:
        try:
            return self._adj[v]
        except KeyError:
            raise IndexError(f"vertex {v} is not in the graph") from None

    def degree(self, v: int) -> int:
        return len(self.neighbors(v))

    @property
    def max_degree(self) -> int:
        return max((len(ns) for ns in self._adj.values()), default=0)

    def edges(self) -> Iterator[tuple[int, int]]:
        for v, ns in self._adj.items():
            for w in ns:
                if v < w:
                    yield v, w

    def has_edge(self, u: int, v: int) -> bool:
        return u in self._adj and v in self._adj[u]

    def without(self, removed: Iterable[int]) -> "Graph":
        """Subgraph induced by all vertices except ``removed`` (ids kept)."""
        gone = set(removed)
        return Graph({v: [w for w in ns if w not in gone]
                      for v, ns in self._adj.items() if v not in gone})

    def induced(self, keep: Iterable[int]) -> "Graph":
        kept = set(keep)
        return Graph({v: [w for w in self._adj[v] if w in kept] for v in kept})

    def __contains__(self, v: object) -> bool:
        return v in self._adj

    def __len__(self) -> int:
        return len(self._adj)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Graph) and self._adj == other._adj

    def __hash__(self) -> int:
        return hash(tuple(self._adj.items()))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.edge_count})"


@dataclass(frozen=True)
class DistanceProfile:
    vertex: int
    two_distance_neighbors: frozenset[int]

    @property
    def d_star(self) -> int:
        return len(self.two_distance_neighbors)


def parse_edge_list(text: bytes | str) -> Graph:
    """Parse ``u v`` lines; ``#`` comments, blank lines and an optional
    ``n <count>`` header are allowed.  Without a header, n is one more than
    the largest id mentioned (ids are never compacted)."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    declared: int | None = None
    edges: list[tuple[int, int]] = []
    top = -1
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        tokens = line.split()
        if tokens[0] == "n":
            if len(tokens) != 2 or declared is not None:
                raise EdgeListError(lineno, f"bad header {raw.strip()!r}")
            declared = _parse_id(tokens[1], lineno)
            continue
        if len(tokens) != 2:
            raise EdgeListError(lineno, f"expected two vertex ids, got {raw.strip()!r}")
        u, v = (_parse_id(t, lineno) for t in tokens)
        if u == v:
            raise EdgeListError(lineno, f"self-loop at vertex {u}")
        edges.append((u, v))
        top = max(top, u, v)
    n = top + 1
    if declared is not None:
        if declared < n:
            raise EdgeListError(1, f"header declares n={declared} but id {top} appears")
        n = declared
    return Graph.from_edges(n, edges)


def _parse_id(token: str, lineno: int) -> int:
    if not token.isdigit():
        raise EdgeListError(lineno, f"malformed vertex id {token!r}")
    return int(token)


def format_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines) + "\n"


def format_fraction(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


def bfs_distances(g: Graph, source: int, limit: int | None = None) -> dict[int, int]:
    dist = {source: 0}
    queue = deque([source])
    while queue:
        v = queue.popleft()
        if limit is not None and dist[v] >= limit:
            continue
        for w in g.neighbors(v):
            if w not in dist:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def two_distance_neighbors(g: Graph, v: int) -> set[int]:
    seen = set(g.neighbors(v))
    for w in g.neighbors(v):
        seen.update(g.neighbors(w))
    seen.discard(v)
    return seen


def two_distance_profile(g: Graph, v: int) -> DistanceProfile:
    if v not in g:
        raise IndexError(f"vertex {v} is not in the graph")
    return DistanceProfile(v, frozenset(two_distance_neighbors(g, v)))


def square_graph(g: Graph) -> Graph:
    """Same vertices; u~v iff 0 < dist(u, v) <= 2."""
    return Graph({v: two_distance_neighbors(g, v) for v in g.vertices()})


def girth(g: Graph) -> int | None:
    """Length of a shortest cycle, or None for forests."""
    best: int | None = None
    for root in g.vertices():
        dist = {root: 0}
        parent = {root: -1}
        queue = deque([root])
        while queue:
            v = queue.popleft()
            if best is not None and 2 * dist[v] + 1 >= best:
                break
            for w in g.neighbors(v):
                if w not in dist:
                    dist[w] = dist[v] + 1
                    parent[w] = v
                    queue.append(w)
                elif w != parent[v]:
                    length = dist[v] + dist[w] + 1
                    if best is None or length < best:
                        best = length
    return best


def average_degree(g: Graph) -> Fraction:
    if g.n == 0:
        raise ValueError("average degree of the empty graph is undefined")
    return Fraction(2 * g.edge_count, g.n)


def connected_components(g: Graph) -> list[frozenset[int]]:
    seen: set[int] = set()
    parts = []
    for v in g.vertices():
        if v in seen:
            continue
        comp = set(bfs_distances(g, v))
        seen |= comp
        parts.append(frozenset(comp))
    return parts
