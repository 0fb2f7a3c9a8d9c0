"""Named extremal graphs and seeded sparse random instances.

Extremal constructions with a triangle-free variant use hubs ``x=0, y=1,
z=2`` and three groups of 2-vertices, each group joined to two hubs:

* group xy has floor(D/2)-1 members, group zx has ceil(D/2), group yz has
  floor(D/2);
* ``wegner_girth3`` also joins x and y, which puts every vertex except the
  pair (z, xy-member) within distance 2, so chi2 = floor(3D/2)+1;
* ``wegner_girth4`` omits that edge; each hub then reuses a color of the
  group opposite to it and chi2 = floor(3D/2)-1.
"""

from __future__ import annotations

import random
from dataclasses import asdict, dataclass
from fractions import Fraction

from .density import mad_below
from .graph import Graph

KINDS = ("moore_2_2", "moore_3_2", "moore_7_2", "wegner_girth3", "wegner_girth4", "random_sparse")
REJECTION_LIMIT = 200


class GenerationError(RuntimeError):
    pass


@dataclass(frozen=True)
class GeneratorSpec:
    kind: str
    delta: int | None = None
    n: int | None = None
    mad_cap: Fraction | None = None
    delta_target: int | None = None
    seed: int = 0

    def __post_init__(self) -> None:
        if self.kind not in KINDS:
            raise ValueError(f"unknown generator kind {self.kind!r}; choose from {', '.join(KINDS)}")
        if self.kind.startswith("wegner") and self.delta is None:
            raise ValueError(f"{self.kind} needs delta")
        if self.kind == "random_sparse" and None in (self.n, self.mad_cap, self.delta_target):
            raise ValueError("random_sparse needs n, mad_cap and delta_target")
        if self.mad_cap is not None:
            object.__setattr__(self, "mad_cap", Fraction(self.mad_cap))

    def to_json(self) -> dict:
        out = {k: v for k, v in asdict(self).items() if v is not None}
        if self.mad_cap is not None:
            out["mad_cap"] = f"{self.mad_cap.numerator}/{self.mad_cap.denominator}"
        return out

    @classmethod
    def from_json(cls, data: dict) -> "GeneratorSpec":
        data = dict(data)
        if data.get("mad_cap") is not None:
            data["mad_cap"] = Fraction(str(data["mad_cap"]))
        return cls(**data)


def generate(spec: GeneratorSpec) -> Graph:
    if spec.kind == "moore_2_2":
        return cycle_graph(5)
    if spec.kind == "moore_3_2":
        return petersen()
    if spec.kind == "moore_7_2":
        return hoffman_singleton()
    if spec.kind == "wegner_girth3":
        return wegner_girth3(spec.delta)
    if spec.kind == "wegner_girth4":
        return wegner_girth4(spec.delta)
    return random_sparse(spec.n, spec.mad_cap, spec.delta_target, spec.seed)


def cycle_graph(n: int) -> Graph:
    if n < 3:
        raise ValueError("a cycle needs at least 3 vertices")
    return Graph.from_edges(n, [(i, (i + 1) % n) for i in range(n)])


def path_graph(n: int) -> Graph:
    return Graph.from_edges(n, [(i, i + 1) for i in range(n - 1)])


def star(leaves: int) -> Graph:
    return Graph.from_edges(leaves + 1, [(0, i) for i in range(1, leaves + 1)])


def spider(legs: int, length: int) -> Graph:
    """Center 0 with ``legs`` disjoint paths of ``length`` edges."""
    edges = []
    nxt = 1
    for _ in range(legs):
        prev = 0
        for _ in range(length):
            edges.append((prev, nxt))
            prev, nxt = nxt, nxt + 1
    return Graph.from_edges(nxt, edges)


def subdivide(g: Graph, times: int = 1) -> Graph:
    """Replace every edge by a path with ``times`` new internal vertices."""
    nxt = max(g.vertices(), default=-1) + 1
    edges = []
    for u, v in g.edges():
        chain = [u] + list(range(nxt, nxt + times)) + [v]
        nxt += times
        edges.extend(zip(chain, chain[1:]))
    return Graph.from_edges(nxt, edges)


def petersen() -> Graph:
    edges = [(i, (i + 1) % 5) for i in range(5)]
    edges += [(i, i + 5) for i in range(5)]
    edges += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph.from_edges(10, edges)


def hoffman_singleton() -> Graph:
    """Pentagons P_h (j ~ j+1) and pentagrams Q_i (j ~ j+2), with P_h,j
    joined to Q_i,(h*i + j) mod 5."""
    def p(h: int, j: int) -> int:
        return 5 * h + j

    def q(i: int, j: int) -> int:
        return 25 + 5 * i + j

    edges = []
    for a in range(5):
        for j in range(5):
            edges.append((p(a, j), p(a, (j + 1) % 5)))
            edges.append((q(a, j), q(a, (j + 2) % 5)))
    for h in range(5):
        for j in range(5):
            for i in range(5):
                edges.append((p(h, j), q(i, (h * i + j) % 5)))
    return Graph.from_edges(50, edges)


def _wegner(delta: int, hub_edge: bool) -> Graph:
    sizes = (delta // 2 - 1, (delta + 1) // 2, delta // 2)
    hubs = ((0, 1), (2, 0), (1, 2))
    edges = [(0, 1)] if hub_edge else []
    nxt = 3
    for size, (a, b) in zip(sizes, hubs):
        for _ in range(size):
            edges += [(a, nxt), (b, nxt)]
            nxt += 1
    return Graph.from_edges(nxt, edges)


def wegner_girth3(delta: int) -> Graph:
    if delta < 8:
        raise ValueError("wegner_girth3 needs delta >= 8")
    return _wegner(delta, True)


def wegner_girth4(delta: int) -> Graph:
    # the xy group needs two members for a 4-cycle
    if delta < 6:
        raise ValueError("wegner_girth4 needs delta >= 6")
    return _wegner(delta, False)


def random_sparse(n: int, mad_cap: Fraction, delta_target: int, seed: int,
                  rejection_limit: int = REJECTION_LIMIT) -> Graph:
    """Connected graph on n vertices with max degree ``delta_target`` and
    mad strictly below ``mad_cap``.

    A hub of degree ``delta_target`` seeds a random recursive tree under the
    degree cap; extra edges (mostly between leaves) are kept only while the
    mad stays below the cap.
    """
    mad_cap = Fraction(mad_cap)
    if n < delta_target + 1:
        raise GenerationError(f"n={n} is too small for a vertex of degree {delta_target}")
    if mad_cap <= 2 - Fraction(2, n):
        raise GenerationError(f"mad_cap {mad_cap} is below the mad of any tree on {n} vertices")
    rng = random.Random(seed)
    for _ in range(rejection_limit):
        g = _grow(n, mad_cap, delta_target, rng)
        if g is not None and g.max_degree == delta_target:
            return g
    raise GenerationError(f"no graph accepted after {rejection_limit} attempts; "
                          f"try a larger n, a larger mad_cap or a smaller delta_target")


def _grow(n: int, cap: Fraction, delta: int, rng: random.Random) -> Graph | None:
    adj: dict[int, set[int]] = {v: set() for v in range(n)}
    for v in range(1, delta + 1):
        adj[0].add(v)
        adj[v].add(0)
    for v in range(delta + 1, n):
        u = rng.choice([w for w in range(v) if len(adj[w]) < delta])
        adj[u].add(v)
        adj[v].add(u)
    for _ in range(2 * n):
        leaves = [v for v in range(n) if len(adj[v]) == 1]
        a, b = (rng.choice(leaves) if leaves and rng.random() < 0.8 else rng.randrange(n)
                for _ in range(2))
        if a == b or b in adj[a] or len(adj[a]) >= delta or len(adj[b]) >= delta:
            continue
        adj[a].add(b)
        adj[b].add(a)
        if not mad_below(Graph(adj), cap):
            adj[a].discard(b)
            adj[b].discard(a)
    g = Graph(adj)
    return g if mad_below(g, cap) else None
