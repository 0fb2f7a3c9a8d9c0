"""Independent reference implementations and fixture builders for tests.

Nothing here calls the library's search code: chromatic numbers come from
naive backtracking, girth from explicit cycle enumeration.
"""

from __future__ import annotations

import itertools
import random
from typing import Iterable

from distcolor.graph import Graph


def random_graph(n: int, p: float, rng: random.Random) -> Graph:
    return Graph.from_edges(n, [(u, v) for u, v in itertools.combinations(range(n), 2)
                                if rng.random() < p])


def distance2_pairs(g: Graph) -> set[tuple[int, int]]:
    """Pairs at distance 1 or 2, straight from the definition."""
    pairs = set()
    for u, v in g.edges():
        pairs.add((u, v))
    for w in g.vertices():
        for a, b in itertools.combinations(g.neighbors(w), 2):
            pairs.add((min(a, b), max(a, b)))
    return pairs


def chromatic_number_bruteforce(vertices: list[int], pairs: set[tuple[int, int]]) -> int:
    """Smallest k with a proper k-coloring, trying k = 1, 2, ... by backtracking."""
    if not vertices:
        return 0
    nbrs: dict[int, set[int]] = {v: set() for v in vertices}
    for a, b in pairs:
        nbrs[a].add(b)
        nbrs[b].add(a)

    def colorable(k: int) -> bool:
        color: dict[int, int] = {}

        def go(i: int) -> bool:
            if i == len(vertices):
                return True
            v = vertices[i]
            for c in range(k):
                if all(color.get(w) != c for w in nbrs[v]):
                    color[v] = c
                    if go(i + 1):
                        return True
                    del color[v]
            return False

        return go(0)

    k = 1
    while not colorable(k):
        k += 1
    return k


def chi2_bruteforce(g: Graph) -> int:
    return chromatic_number_bruteforce(list(g.vertices()), distance2_pairs(g))


def girth_bruteforce(g: Graph) -> int | None:
    """Shortest simple cycle by depth-first enumeration from each start."""
    best: int | None = None

    def dfs(start: int, v: int, depth: int, seen: set[int]) -> None:
        nonlocal best
        for w in g.neighbors(v):
            if w == start and depth >= 3:
                if best is None or depth < best:
                    best = depth
            elif w > start and w not in seen:
                if best is not None and depth + 1 >= best:
                    continue
                seen.add(w)
                dfs(start, w, depth + 1, seen)
                seen.discard(w)

    for s in g.vertices():
        dfs(s, s, 1, {s})
    return best


def mad_by_subsets(g: Graph):
    """max 2|E(S)|/|S| over every subset, with plain Python loops."""
    from fractions import Fraction
    verts = list(g.vertices())
    edges = list(g.edges())
    best = Fraction(0)
    for r in range(1, len(verts) + 1):
        for sub in itertools.combinations(verts, r):
            s = set(sub)
            e = sum(1 for u, v in edges if u in s and v in s)
            best = max(best, Fraction(2 * e, r))
    return best


class Builder:
    """Edge-list builder with fresh ids and leaf padding."""

    def __init__(self) -> None:
        self.edges: list[tuple[int, int]] = []
        self.n = 0
        self.deg: dict[int, int] = {}

    def new(self, count: int = 1) -> list[int]:
        ids = list(range(self.n, self.n + count))
        self.n += count
        for v in ids:
            self.deg[v] = 0
        return ids

    def one(self) -> int:
        return self.new()[0]

    def edge(self, u: int, v: int) -> None:
        self.edges.append((u, v))
        self.deg[u] += 1
        self.deg[v] += 1

    def chain(self, a: int, b: int, k: int) -> list[int]:
        """Join a and b by a path with k fresh internal vertices."""
        inner = self.new(k)
        seq = [a, *inner, b]
        for x, y in zip(seq, seq[1:]):
            self.edge(x, y)
        return inner

    def pad(self, v: int, degree: int) -> None:
        while self.deg[v] < degree:
            self.edge(v, self.one())

    def pad_all(self, vs: Iterable[int], degree: int) -> None:
        for v in vs:
            self.pad(v, degree)

    def graph(self) -> Graph:
        return Graph.from_edges(self.n, self.edges)


def random_partial_coloring(g: Graph, k: int, rng: random.Random, tries: int = 50) -> dict[int, int]:
    """A random valid k-coloring of g (random order, random available color)."""
    from distcolor.coloring import available_colors
    for _ in range(tries):
        order = list(g.vertices())
        rng.shuffle(order)
        colors: dict[int, int] = {}
        for v in order:
            avail = available_colors(g, colors, v, k)
            if not avail:
                break
            colors[v] = rng.choice(avail)
        else:
            return colors
    raise RuntimeError("could not sample a coloring")


def gadget_graph(D: int, hubs: int, rng: random.Random, weights: dict[str, float]) -> Graph:
    """Hubs meant to reach degree D, joined by gadgets.

    Gadget kinds: ``edge`` (two hubs adjacent), ``one`` (1-path), ``two``
    (2-path), and ``c<legs>`` for a 3- or 4-vertex center whose legs (0 for a
    direct edge, 1 through a 2-vertex) go to distinct hubs, e.g. ``c110``.
    """
    b = Builder()
    hub_ids = b.new(hubs)
    slots = {h: D for h in hub_ids}
    adjacent: set[tuple[int, int]] = set()
    kinds = list(weights)
    probs = [weights[k] for k in kinds]
    for _ in range(hubs * D * 2):
        kind = rng.choices(kinds, probs)[0]
        need = 2 if kind in ("edge", "one", "two") else len(kind) - 1
        free = [h for h in hub_ids if slots[h] > 0]
        if len(free) < need:
            break
        pick = rng.sample(free, need)
        if kind == "edge":
            key = (min(pick), max(pick))
            if key in adjacent:
                continue
            adjacent.add(key)
            b.edge(*pick)
        elif kind == "one":
            b.chain(pick[0], pick[1], 1)
        elif kind == "two":
            b.chain(pick[0], pick[1], 2)
        else:
            center = b.one()
            for h, leg in zip(pick, kind[1:]):
                b.chain(center, h, int(leg))
        for h in pick:
            slots[h] -= 1
    return b.graph()
