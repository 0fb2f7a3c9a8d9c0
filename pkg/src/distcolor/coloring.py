"""2-distance colorings: verification, greedy, exact optimum, even-cycle lists."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .graph import Graph, square_graph, two_distance_neighbors


@dataclass
class Coloring:
    """``assignment`` maps colored vertices to 0..k-1; absent means uncolored."""

    assignment: dict[int, int]
    k: int

    def colors_used(self) -> int:
        return len(set(self.assignment.values()))

    def is_total(self, g: Graph) -> bool:
        return all(v in self.assignment for v in g.vertices())


def verify_coloring(g: Graph, c: Coloring, partial: bool = False) -> list[tuple[int, int, int]]:
    """All (u, v, color) with u < v at distance <= 2 sharing a color."""
    for v, col in c.assignment.items():
        if v not in g:
            raise ValueError(f"colored vertex {v} is not in the graph")
        if not 0 <= col < c.k:
            raise ValueError(f"vertex {v} has color {col} outside 0..{c.k - 1}")
    if not partial:
        missing = [v for v in g.vertices() if v not in c.assignment]
        if missing:
            raise ValueError(f"uncolored vertices: {missing[:10]}")
    bad = []
    for u, cu in sorted(c.assignment.items()):
        for v in sorted(two_distance_neighbors(g, u)):
            if v > u and c.assignment.get(v) == cu:
                bad.append((u, v, cu))
    return bad


def available_colors(g: Graph, colors: dict[int, int], v: int, k: int) -> list[int]:
    used = {colors[w] for w in two_distance_neighbors(g, v) if w in colors}
    return [c for c in range(k) if c not in used]


def greedy_color(g: Graph, k: int, order: Sequence[int] | None = None) -> Coloring | None:
    """First-fit on the square graph; None when some vertex sees all k colors."""
    colors: dict[int, int] = {}
    for v in (order if order is not None else g.vertices()):
        avail = available_colors(g, colors, v, k)
        if not avail:
            return None
        colors[v] = avail[0]
    return Coloring(colors, k)


class BudgetExceeded(RuntimeError):
    """Branch-and-bound gave up; ``lower``/``upper`` bracket the optimum."""

    def __init__(self, lower: int, upper: int, best: Coloring):
        super().__init__(f"node budget exhausted with {lower} <= chi2 <= {upper}")
        self.lower = lower
        self.upper = upper
        self.best = best


class _Dsatur:
    """Bitset DSATUR branch and bound over a fixed adjacency."""

    def __init__(self, adj: list[int], budget: int):
        self.adj = adj
        self.n = len(adj)
        self.budget = budget
        self.nodes = 0

    def greedy_clique(self) -> list[int]:
        best: list[int] = []
        for start in range(self.n):
            clique = [start]
            cand = self.adj[start]
            while cand:
                pick = max(_bits(cand), key=lambda x: ((self.adj[x] & cand).bit_count(), -x))
                clique.append(pick)
                cand &= self.adj[pick]
            if len(clique) > len(best):
                best = clique
        return best

    def greedy(self) -> list[int]:
        color = [-1] * self.n
        sat = [0] * self.n
        for _ in range(self.n):
            v = max((i for i in range(self.n) if color[i] < 0),
                    key=lambda i: (sat[i].bit_count(), self.adj[i].bit_count(), -i))
            c = _lowest_zero(sat[v])
            color[v] = c
            for w in _bits(self.adj[v]):
                sat[w] |= 1 << c
        return color

    def solve(self, clique: list[int], upper: list[int]) -> list[int]:
        self.best = list(upper)
        self.best_k = max(upper) + 1
        self.lower = len(clique)
        color = [-1] * self.n
        # count[v][c]: neighbours of v holding colour c
        self.count = [[0] * self.best_k for _ in range(self.n)]
        self.sat = [0] * self.n
        for c, v in enumerate(clique):
            self._assign(color, v, c)
        self._branch(color, len(clique), self.n - len(clique))
        return self.best

    def _assign(self, color: list[int], v: int, c: int) -> None:
        color[v] = c
        for w in _bits(self.adj[v]):
            self.count[w][c] += 1
            self.sat[w] |= 1 << c

    def _unassign(self, color: list[int], v: int) -> None:
        c = color[v]
        color[v] = -1
        for w in _bits(self.adj[v]):
            self.count[w][c] -= 1
            if self.count[w][c] == 0:
                self.sat[w] &= ~(1 << c)

    def _branch(self, color: list[int], used: int, left: int) -> None:
        self.nodes += 1
        if self.nodes > self.budget:
            raise _OutOfBudget
        if left == 0:
            self.best = list(color)
            self.best_k = used
            return
        v = max((i for i in range(self.n) if color[i] < 0),
                key=lambda i: (self.sat[i].bit_count(), self.adj[i].bit_count(), -i))
        for c in range(min(used + 1, self.best_k - 1)):
            if self.sat[v] >> c & 1:
                continue
            self._assign(color, v, c)
            self._branch(color, max(used, c + 1), left - 1)
            self._unassign(color, v)
            if self.best_k <= self.lower:
                return


class _OutOfBudget(Exception):
    pass


def _bits(mask: int) -> Iterable[int]:
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def _lowest_zero(mask: int) -> int:
    return (~mask & (mask + 1)).bit_length() - 1


def exact_chi2(g: Graph, node_budget: int = 10**7) -> tuple[int, Coloring]:
    """Exact 2-distance chromatic number with an optimal coloring.

    Raises :class:`BudgetExceeded` (carrying the bracket and the best
    coloring found) when more than ``node_budget`` search nodes are needed.
    """
    verts = g.vertices()
    if not verts:
        return 0, Coloring({}, 0)
    index = {v: i for i, v in enumerate(verts)}
    sq = square_graph(g)
    adj = [sum(1 << index[w] for w in sq.neighbors(v)) for v in verts]
    solver = _Dsatur(adj, node_budget)
    clique = solver.greedy_clique()
    upper = solver.greedy()
    ub = max(upper) + 1

    def pack(col: list[int], k: int) -> Coloring:
        return Coloring({v: col[i] for i, v in enumerate(verts)}, k)

    if ub == len(clique):
        return ub, pack(upper, ub)
    try:
        best = solver.solve(clique, upper)
    except _OutOfBudget:
        raise BudgetExceeded(len(clique), solver.best_k, pack(solver.best, solver.best_k)) from None
    k = max(best) + 1
    return k, pack(best, k)


@dataclass
class ListInstance:
    """Even cycle ``cycle`` (consecutive entries adjacent, last to first) with
    per-vertex lists aligned to it."""

    cycle: tuple[int, ...]
    lists: tuple[frozenset[int], ...]

    def __post_init__(self) -> None:
        self.cycle = tuple(self.cycle)
        self.lists = tuple(frozenset(x) for x in self.lists)
        n = len(self.cycle)
        if n < 4 or n % 2:
            raise ValueError(f"cycle length must be even and >= 4 (got {n})")
        if len(set(self.cycle)) != n:
            raise ValueError("cycle repeats a vertex")
        if len(self.lists) != n:
            raise ValueError("one list per cycle vertex is required")
        for v, lst in zip(self.cycle, self.lists):
            if len(lst) < 2:
                raise ValueError(f"list of vertex {v} has fewer than 2 colors")


def color_even_cycle_lists(inst: ListInstance) -> dict[int, int]:
    """Proper coloring of an even cycle from lists of size >= 2."""
    n = len(inst.cycle)
    lists = [tuple(sorted(lst)[:2]) for lst in inst.lists]
    out = [-1] * n
    pivot = next((i for i in range(n) if set(lists[i]) != set(lists[(i + 1) % n])), None)
    if pivot is None:
        a, b = lists[0]
        return {v: (a if i % 2 == 0 else b) for i, v in enumerate(inst.cycle)}
    # pivot's colour is missing from its successor's list, so the successor,
    # coloured last, only has to dodge one already coloured neighbour
    out[pivot] = next(c for c in lists[pivot] if c not in lists[(pivot + 1) % n])
    for step in range(1, n):
        i = (pivot - step) % n
        out[i] = next(c for c in lists[i] if c != out[(i + 1) % n] and c != out[(i - 1) % n])
    return {v: out[i] for i, v in enumerate(inst.cycle)}


def format_coloring(c: Coloring) -> str:
    return "".join(f"{v} {col}\n" for v, col in sorted(c.assignment.items()))


def parse_coloring(text: str, k: int | None = None) -> Coloring:
    """Read ``v c`` lines; k defaults to one more than the largest color."""
    assignment: dict[int, int] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            raise ValueError(f"line {lineno}: expected 'vertex color', got {raw.strip()!r}")
        v, col = int(parts[0]), int(parts[1])
        if v in assignment:
            raise ValueError(f"line {lineno}: vertex {v} colored twice")
        assignment[v] = col
    if k is None:
        k = max(assignment.values(), default=-1) + 1
    return Coloring(assignment, k)
