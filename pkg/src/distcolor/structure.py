"""Path classes, vertex signatures, reducible configurations and sponsors.

Terminology used throughout:

* a *leg* of a vertex v is the walk that leaves v through one neighbour and
  continues through degree-2 vertices until it reaches a vertex of another
  degree (its *far end*);
* a *k-path* is a maximal chain of k degree-2 vertices whose two ends have
  degree at least 3;
* a *(k1,...,kd)-vertex* has degree d and legs carrying k1..kd internal
  vertices;
* a *D-vertex* has degree exactly D, where D is the maximum degree of the
  graph the whole computation started from (not of the current subgraph).
"""

from __future__ import annotations

import enum
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterator

from .graph import Graph
from .regimes import Regime


@dataclass(frozen=True)
class Leg:
    start: int
    internals: tuple[int, ...]
    far: int

    @property
    def k(self) -> int:
        return len(self.internals)

    @property
    def neighbor(self) -> int:
        return self.internals[0] if self.internals else self.far

    @property
    def second(self) -> int:
        """The vertex at distance two from ``start`` along the leg."""
        return self.internals[1] if self.k >= 2 else self.far


def walk(g: Graph, start: int, first: int) -> Leg:
    prev, cur = start, first
    internals = []
    while g.degree(cur) == 2 and cur != start:
        internals.append(cur)
        a, b = g.neighbors(cur)
        prev, cur = cur, (b if a == prev else a)
    return Leg(start, tuple(internals), cur)


@dataclass(frozen=True)
class KPath:
    """Chain of degree-2 ``internals`` between ``endpoints``.

    Pendant chains (an end of degree at most 1) are kept so that every
    degree-2 vertex is accounted for; ``is_pendant`` separates them from
    proper k-paths whose ends both have degree >= 3.
    """

    endpoints: tuple[int, int]
    internals: tuple[int, ...]
    is_pendant: bool = False

    @property
    def k(self) -> int:
        return len(self.internals)

    @property
    def is_loop(self) -> bool:
        return self.endpoints[0] == self.endpoints[1]

    @classmethod
    def canonical(cls, a: int, internals: tuple[int, ...], b: int, pendant: bool = False) -> "KPath":
        if (b, internals[::-1]) < (a, internals):
            a, b, internals = b, a, internals[::-1]
        return cls((a, b), internals, pendant)

    def oriented_from(self, end: int) -> tuple[int, ...]:
        return self.internals if end == self.endpoints[0] else self.internals[::-1]


@dataclass(frozen=True)
class PathSplit:
    paths: tuple[KPath, ...]
    bare_cycles: tuple[tuple[int, ...], ...]


def classify_paths(g: Graph) -> PathSplit:
    """Every degree-2 vertex lands in exactly one chain or one bare cycle."""
    seen: set[int] = set()
    paths = []
    starts = [v for v in g.vertices() if g.degree(v) >= 3] + \
             [v for v in g.vertices() if g.degree(v) == 1]
    for v in starts:
        for w in g.neighbors(v):
            if g.degree(w) != 2 or w in seen:
                continue
            leg = walk(g, v, w)
            seen.update(leg.internals)
            pendant = min(g.degree(v), g.degree(leg.far)) < 3
            paths.append(KPath.canonical(v, leg.internals, leg.far, pendant))
    cycles = []
    for v in g.vertices():
        if g.degree(v) == 2 and v not in seen:
            cyc = (v,) + walk(g, v, g.neighbors(v)[0]).internals
            seen.update(cyc)
            cycles.append(cyc)
    paths.sort(key=lambda p: (p.endpoints, p.internals))
    return PathSplit(tuple(paths), tuple(cycles))


@dataclass(frozen=True)
class VertexSignature:
    vertex: int
    ks: tuple[int, ...]


def vertex_signature(g: Graph, v: int) -> VertexSignature:
    if g.degree(v) < 3:
        raise ValueError(f"signatures are defined for degree >= 3 (vertex {v} has degree {g.degree(v)})")
    ks = sorted((walk(g, v, w).k for w in g.neighbors(v)), reverse=True)
    return VertexSignature(v, tuple(ks))


class Kind(enum.IntEnum):
    """Reducible configurations in detection priority order."""

    LowDegree = 0
    LongPath = 1
    TwoPathLoop = 2
    TwoPathWeakEnd = 3
    TwoPathCycle = 4
    TripleCoincident = 5
    TripleWeakEnd = 6
    TripleCycle = 7
    Deg3TwoOnesWeakEnd = 8
    WeirdDeltaVertex = 9
    Deg3OneOneWeakEnd_B = 10
    QuadOnesTwoWeakEnds_B = 11
    # whole component that is a cycle of degree-2 vertices; produced only by
    # the colorer, never by find_configurations
    BareCycle = 12


@dataclass(frozen=True)
class Configuration:
    kind: Kind
    witness: tuple[int, ...]
    deletable: frozenset[int]

    def to_json(self) -> dict:
        return {"kind": self.kind.name, "witness": list(self.witness),
                "deletable": sorted(self.deletable)}


class Scan:
    """Per-graph caches shared by the detectors."""

    def __init__(self, g: Graph, D: int):
        self.g = g
        self.D = D
        self.deg = {v: g.degree(v) for v in g.vertices()}
        self._legs: dict[int, tuple[Leg, ...]] = {}

    def legs(self, v: int) -> tuple[Leg, ...]:
        if v not in self._legs:
            self._legs[v] = tuple(walk(self.g, v, w) for w in self.g.neighbors(v))
        return self._legs[v]

    def proper(self, leg: Leg) -> bool:
        return self.deg[leg.far] >= 3

    def is_one_path(self, leg: Leg) -> bool:
        return leg.k == 1 and self.proper(leg)

    def is_triple(self, v: int) -> bool:
        """(1,1,1)-vertex: degree 3, three 1-paths."""
        return self.deg[v] == 3 and all(self.is_one_path(l) for l in self.legs(v))

    def triple_fars(self, v: int) -> tuple[int, ...]:
        return tuple(l.far for l in self.legs(v))

    @cached_property
    def split(self) -> PathSplit:
        return classify_paths(self.g)

    @cached_property
    def proper_paths(self) -> list[KPath]:
        return [p for p in self.split.paths if not p.is_pendant]

    @cached_property
    def vertices_by_degree(self) -> dict[int, list[int]]:
        out: dict[int, list[int]] = {}
        for v, d in self.deg.items():
            out.setdefault(d, []).append(v)
        return out

    def of_degree(self, d: int) -> list[int]:
        return self.vertices_by_degree.get(d, [])


def _config(kind: Kind, witness, deletable) -> Configuration:
    return Configuration(kind, tuple(witness), frozenset(deletable))


def _low_degree(s: Scan) -> Iterator[Configuration]:
    for v in s.of_degree(0) + s.of_degree(1):
        yield _config(Kind.LowDegree, (v,), (v,))


def _long_path(s: Scan) -> Iterator[Configuration]:
    for p in s.proper_paths:
        if p.k >= 3:
            v0 = p.endpoints[0]
            i = p.internals
            v4 = i[3] if p.k >= 4 else p.endpoints[1]
            yield _config(Kind.LongPath, (v0, i[0], i[1], i[2], v4), i[:3])


def _two_paths(s: Scan) -> list[KPath]:
    return [p for p in s.proper_paths if p.k == 2]


def _two_path_loop(s: Scan) -> Iterator[Configuration]:
    for p in _two_paths(s):
        if p.is_loop:
            yield _config(Kind.TwoPathLoop, (p.endpoints[0],) + p.internals, p.internals)


def _two_path_weak_end(s: Scan) -> Iterator[Configuration]:
    for p in _two_paths(s):
        a, b = p.endpoints
        if a == b or min(s.deg[a], s.deg[b]) >= s.D:
            continue
        if s.deg[b] >= s.D:
            a, b = b, a
        v1, v2 = p.oriented_from(a)
        yield _config(Kind.TwoPathWeakEnd, (a, v1, v2, b), (v1, v2))


class _Forest:
    """Union-find plus explicit tree adjacency, used to close cycles."""

    def __init__(self):
        self.parent: dict[int, int] = {}
        self.adj: dict[int, list[tuple[int, tuple[int, ...]]]] = {}

    def find(self, x: int) -> int:
        self.parent.setdefault(x, x)
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def add(self, a: int, b: int, via: tuple[int, ...]) -> list | None:
        """Add edge a-b labelled ``via``; on a cycle return the tree route
        from b back to a as [(node, via-from-previous), ...] instead."""
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return self._route(b, a)
        self.parent[ra] = rb
        self.adj.setdefault(a, []).append((b, via))
        self.adj.setdefault(b, []).append((a, tuple(reversed(via))))
        return None

    def _route(self, src: int, dst: int) -> list:
        prev: dict[int, tuple[int, tuple[int, ...]] | None] = {src: None}
        queue = deque([src])
        while queue:
            x = queue.popleft()
            if x == dst:
                break
            for y, via in self.adj.get(x, []):
                if y not in prev:
                    prev[y] = (x, via)
                    queue.append(y)
        route = []
        x = dst
        while prev[x] is not None:
            px, via = prev[x]
            route.append((x, via))
            x = px
        route.reverse()
        return route  # steps src -> ... -> dst


def _two_path_cycle(s: Scan) -> Iterator[Configuration]:
    forest = _Forest()
    for p in _two_paths(s):
        a, b = p.endpoints
        if a == b:
            continue
        route = forest.add(a, b, p.oriented_from(a))
        if route is None:
            continue
        witness = [a, *p.oriented_from(a), b]
        for node, via in route:
            witness.extend(via)
            if node != a:
                witness.append(node)
        inner = [x for i, x in enumerate(witness) if i % 3]
        yield _config(Kind.TwoPathCycle, witness, inner)


def _triple_legs(s: Scan, u: int) -> tuple[Leg, Leg, Leg]:
    return tuple(s.legs(u))  # type: ignore[return-value]


def _triple_coincident(s: Scan) -> Iterator[Configuration]:
    for u in s.of_degree(3):
        if not s.is_triple(u):
            continue
        legs = _triple_legs(s, u)
        fars = [l.far for l in legs]
        if len(set(fars)) == 3:
            continue
        i, j = next((i, j) for i in range(3) for j in range(i + 1, 3) if fars[i] == fars[j])
        (r,) = {0, 1, 2} - {i, j}
        order = (legs[i], legs[j], legs[r])
        yield _config(Kind.TripleCoincident,
                      (u, *(l.neighbor for l in order), *(l.far for l in order)),
                      (u, *(l.neighbor for l in order)))


def _triple_weak_end(s: Scan) -> Iterator[Configuration]:
    for u in s.of_degree(3):
        if not s.is_triple(u):
            continue
        legs = _triple_legs(s, u)
        if len({l.far for l in legs}) < 3:
            continue
        weak = [l for l in legs if s.deg[l.far] < s.D]
        if not weak:
            continue
        order = [weak[0]] + [l for l in legs if l is not weak[0]]
        yield _config(Kind.TripleWeakEnd,
                      (u, *(l.neighbor for l in order), *(l.far for l in order)),
                      (u, *(l.neighbor for l in order)))


def sponsorable_triples(s: Scan) -> list[int]:
    """(1,1,1)-vertices whose three far ends are distinct D-vertices."""
    if s.D <= 3:
        return []
    out = []
    for u in s.of_degree(3):
        if s.is_triple(u):
            fars = s.triple_fars(u)
            if len(set(fars)) == 3 and all(s.deg[f] == s.D for f in fars):
                out.append(u)
    return out


def _triple_cycle(s: Scan) -> Iterator[Configuration]:
    forest = _Forest()
    for w in sponsorable_triples(s):
        for leg in s.legs(w):
            a = leg.far
            route = forest.add(a, w, (leg.neighbor,))
            if route is None:
                continue
            # cycle: a -x- w, then tree route w -> ... -> a
            witness = [a, leg.neighbor, w]
            for node, via in route:
                witness.extend(via)
                if node != a:
                    witness.append(node)
            deletable = [x for i, x in enumerate(witness) if i % 4]
            yield _config(Kind.TripleCycle, witness, deletable)


def _deg3_two_ones_weak_end(s: Scan) -> Iterator[Configuration]:
    for u in s.of_degree(3):
        legs = s.legs(u)
        ones = [l for l in legs if s.is_one_path(l)]
        zeros = [l for l in legs if l.k == 0]
        if len(ones) != 2 or len(zeros) != 1:
            continue
        w = zeros[0].far
        if not 3 <= s.deg[w] <= s.D - 3:
            continue
        weak = [l for l in ones if s.deg[l.far] < s.D]
        if not weak:
            continue
        u1 = weak[0]
        u2 = ones[1] if u1 is ones[0] else ones[0]
        yield _config(Kind.Deg3TwoOnesWeakEnd,
                      (u, u1.neighbor, u2.neighbor, w, u1.far, u2.far),
                      (u, u1.neighbor, u2.neighbor))


def _weird_delta_vertex(s: Scan) -> Iterator[Configuration]:
    if s.D < 2:
        return
    for u in s.of_degree(s.D):
        legs = s.legs(u)
        if any(l.k == 0 or s.deg[l.second] > 3 for l in legs):
            continue
        two = next((l for l in legs
                    if l.k == 2 and l.far != u and s.deg[l.far] == s.D), None)
        triple = next((l for l in legs
                       if s.is_one_path(l) and s.is_triple(l.far)
                       and len(set(s.triple_fars(l.far))) == 3), None)
        if two is None or triple is None:
            continue
        others = [l.neighbor for l in legs if l is not two and l is not triple]
        witness = (u, triple.neighbor, triple.far, two.internals[0], two.internals[1],
                   two.far, *others)
        deletable = (u, *s.g.neighbors(u), two.internals[1])
        yield _config(Kind.WeirdDeltaVertex, witness, deletable)


def _deg3_one_one_weak_end_b(s: Scan) -> Iterator[Configuration]:
    for u in s.of_degree(3):
        legs = s.legs(u)
        ones = [l for l in legs if s.is_one_path(l)]
        zeros = [l for l in legs if l.k == 0]
        if len(ones) != 1 or len(zeros) != 2:
            continue
        if not all(3 <= s.deg[z.far] <= 4 for z in zeros):
            continue
        leg = ones[0]
        if s.deg[leg.far] >= s.D:
            continue
        yield _config(Kind.Deg3OneOneWeakEnd_B,
                      (u, leg.neighbor, leg.far, zeros[0].far, zeros[1].far),
                      (leg.neighbor,))


def _quad_ones_two_weak_ends_b(s: Scan) -> Iterator[Configuration]:
    for u in s.of_degree(4):
        legs = s.legs(u)
        if not all(s.is_one_path(l) for l in legs):
            continue
        weak = [l for l in legs if s.deg[l.far] <= s.D - 2]
        if len(weak) < 2:
            continue
        order = weak[:2] + [l for l in legs if l is not weak[0] and l is not weak[1]]
        yield _config(Kind.QuadOnesTwoWeakEnds_B,
                      (u, *(l.neighbor for l in order), *(l.far for l in order)),
                      (u, *(l.neighbor for l in order)))


_DETECTORS: list[tuple[Kind, Callable[[Scan], Iterator[Configuration]]]] = [
    (Kind.LowDegree, _low_degree),
    (Kind.LongPath, _long_path),
    (Kind.TwoPathLoop, _two_path_loop),
    (Kind.TwoPathWeakEnd, _two_path_weak_end),
    (Kind.TwoPathCycle, _two_path_cycle),
    (Kind.TripleCoincident, _triple_coincident),
    (Kind.TripleWeakEnd, _triple_weak_end),
    (Kind.TripleCycle, _triple_cycle),
    (Kind.Deg3TwoOnesWeakEnd, _deg3_two_ones_weak_end),
    (Kind.WeirdDeltaVertex, _weird_delta_vertex),
    (Kind.Deg3OneOneWeakEnd_B, _deg3_one_one_weak_end_b),
    (Kind.QuadOnesTwoWeakEnds_B, _quad_ones_two_weak_ends_b),
]

REGIME_B_ONLY = frozenset({Kind.Deg3OneOneWeakEnd_B, Kind.QuadOnesTwoWeakEnds_B})
FOREST_BLOCKERS = (Kind.TwoPathLoop, Kind.TwoPathWeakEnd, Kind.TwoPathCycle,
                   Kind.TripleCoincident, Kind.TripleWeakEnd, Kind.TripleCycle)


def iter_configurations(g: Graph, regime: Regime, D: int,
                        kinds: tuple[Kind, ...] | None = None) -> Iterator[Configuration]:
    """Configurations in priority order, lazily."""
    s = Scan(g, D)
    for kind, detect in _DETECTORS:
        if kind in REGIME_B_ONLY and regime is not Regime.B:
            continue
        if kinds is not None and kind not in kinds:
            continue
        yield from detect(s)


def find_configurations(g: Graph, regime: Regime, D: int) -> list[Configuration]:
    return list(iter_configurations(g, regime, D))


class SponsorshipError(ValueError):
    def __init__(self, config: Configuration):
        super().__init__(f"sponsor forests need a graph free of {config.kind.name} "
                         f"(witness {list(config.witness)})")
        self.config = config


@dataclass
class SponsorAssignment:
    D: int
    two_path_roots: dict[int, int] = field(default_factory=dict)
    two_path_sponsor: dict[tuple[int, ...], int] = field(default_factory=dict)
    triple_roots: dict[int, int] = field(default_factory=dict)
    triple_sponsors: dict[int, tuple[int, int]] = field(default_factory=dict)

    def sponsor_of(self, path: KPath) -> int | None:
        return self.two_path_sponsor.get(path.internals)

    def to_json(self) -> dict:
        return {
            "D": self.D,
            "two_path_roots": [self.two_path_roots[t] for t in sorted(self.two_path_roots)],
            "two_path_sponsors": [{"internals": list(k), "sponsor": v}
                                  for k, v in sorted(self.two_path_sponsor.items())],
            "triple_roots": [self.triple_roots[t] for t in sorted(self.triple_roots)],
            "triple_sponsors": [{"vertex": k, "sponsors": list(v)}
                                for k, v in sorted(self.triple_sponsors.items())],
        }


def build_sponsorship(g: Graph, D: int, strict: bool = True) -> SponsorAssignment:
    """Root every tree of 2-paths and of (1,1,1)-paths at its smallest
    D-vertex; a 2-path is sponsored by its end farther from the root and a
    (1,1,1)-vertex by the two far ends that are its grandchildren.

    With ``strict=False`` malformed paths are skipped and cycle-closing
    paths are sponsored by their deeper end, so charges can still be
    computed on graphs that contain reducible configurations.
    """
    s = Scan(g, D)
    if strict:
        blocker = next(iter_configurations(g, Regime.A, D, kinds=FOREST_BLOCKERS), None)
        if blocker is not None:
            raise SponsorshipError(blocker)
    out = SponsorAssignment(D)
    _sponsor_two_paths(s, out)
    _sponsor_triples(s, out)
    return out


def _sponsor_two_paths(s: Scan, out: SponsorAssignment) -> None:
    incident: dict[int, list[KPath]] = {}
    for p in _two_paths(s):
        a, b = p.endpoints
        if a != b and s.deg[a] == s.D and s.deg[b] == s.D:
            incident.setdefault(a, []).append(p)
            incident.setdefault(b, []).append(p)
    depth: dict[int, int] = {}
    for root in sorted(incident):
        if root in depth:
            continue
        out.two_path_roots[len(out.two_path_roots)] = root
        depth[root] = 0
        queue = deque([root])
        while queue:
            x = queue.popleft()
            for p in incident[x]:
                if p.internals in out.two_path_sponsor:
                    continue
                y = p.endpoints[1] if p.endpoints[0] == x else p.endpoints[0]
                if y not in depth:
                    depth[y] = depth[x] + 1
                    queue.append(y)
                    out.two_path_sponsor[p.internals] = y
                else:
                    out.two_path_sponsor[p.internals] = max((depth[x], x), (depth[y], y))[1]


def _sponsor_triples(s: Scan, out: SponsorAssignment) -> None:
    triples = sponsorable_triples(s)
    at: dict[int, list[int]] = {}
    for w in triples:
        for f in s.triple_fars(w):
            at.setdefault(f, []).append(w)
    seen_d: set[int] = set()
    seen_w: set[int] = set()
    for root in sorted(at):
        if root in seen_d:
            continue
        out.triple_roots[len(out.triple_roots)] = root
        seen_d.add(root)
        queue = deque([root])
        while queue:
            a = queue.popleft()
            for w in at[a]:
                if w in seen_w:
                    continue
                seen_w.add(w)
                kids = sorted(f for f in s.triple_fars(w) if f != a)
                out.triple_sponsors[w] = (kids[0], kids[1])
                for f in kids:
                    if f not in seen_d:
                        seen_d.add(f)
                        queue.append(f)
