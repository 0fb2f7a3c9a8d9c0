"""Exact maximum average degree.

The densest subgraph is located with a parametric max-flow search: for a
threshold ``p/q`` the network

    source -> edge-node  (capacity q)
    edge-node -> both endpoints  (capacity q, never binding)
    vertex -> sink  (capacity p)

has max-flow below ``q*m`` exactly when some vertex set S satisfies
``|E(S)| / |S| > p/q``.  All capacities are integers, so every answer is
exact.  Thresholds are searched on the grid ``j / n**2``; once the bracket
is narrower than the smallest possible gap between two fractions with
denominator at most n, the density is the unique such fraction in it.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np
from scipy.sparse import csr_array
from scipy.sparse.csgraph import maximum_flow

from .graph import Graph

BRUTEFORCE_LIMIT = 20


class _DensityNetwork:
    """Flow network reused across thresholds; only capacities change."""

    def __init__(self, g: Graph):
        self.vertices = g.vertices()
        self.index = {v: i for i, v in enumerate(self.vertices)}
        self.edges = list(g.edges())
        n, m = len(self.vertices), len(self.edges)
        self.source, self.sink = 0, 1 + m + n
        self.size = n + m + 2
        rows, cols, kinds = [], [], []
        for e, (u, v) in enumerate(self.edges):
            node = 1 + e
            rows += [self.source, node, node]
            cols += [node, 1 + m + self.index[u], 1 + m + self.index[v]]
            kinds += [0, 0, 0]
        for i in range(n):
            rows.append(1 + m + i)
            cols.append(self.sink)
            kinds.append(1)
        self.rows = np.array(rows, dtype=np.int64)
        self.cols = np.array(cols, dtype=np.int64)
        self.to_sink = np.array(kinds, dtype=bool)

    def _solve(self, p: int, q: int):
        caps = np.where(self.to_sink, p, q).astype(np.int32)
        net = csr_array((caps, (self.rows, self.cols)), shape=(self.size, self.size))
        return net, maximum_flow(net, self.source, self.sink, method="dinic")

    def exceeds(self, p: int, q: int) -> bool:
        """True iff some vertex set has density strictly above p/q."""
        _, res = self._solve(p, q)
        return res.flow_value < q * len(self.edges)

    def witness(self, p: int, q: int) -> frozenset[int]:
        """Vertices on the source side of a minimum cut at threshold p/q."""
        net, res = self._solve(p, q)
        residual = (net - res.flow).tocsr()
        seen = {self.source}
        stack = [self.source]
        while stack:
            x = stack.pop()
            lo, hi = residual.indptr[x], residual.indptr[x + 1]
            for y, cap in zip(residual.indices[lo:hi], residual.data[lo:hi]):
                if cap > 0 and y not in seen:
                    seen.add(int(y))
                    stack.append(int(y))
        m = len(self.edges)
        return frozenset(self.vertices[i - 1 - m] for i in seen if 1 + m <= i < 1 + m + len(self.vertices))


def _search(g: Graph) -> tuple[Fraction, int, int, "_DensityNetwork"]:
    n, m = g.n, g.edge_count
    net = _DensityNetwork(g)
    scale = n * n
    lo, hi = 0, m * scale          # density lies in (lo/scale, hi/scale]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if net.exceeds(mid, scale):
            lo = mid
        else:
            hi = mid
    low, high = Fraction(lo, scale), Fraction(hi, scale)
    for den in range(1, n + 1):
        num = (high.numerator * den) // high.denominator
        if Fraction(num, den) > low:
            return Fraction(num, den), lo, scale, net
    raise AssertionError("no density candidate in the final bracket")


def max_density(g: Graph) -> Fraction:
    """max |E(H)| / |V(H)| over nonempty subgraphs; 0 when there are no edges."""
    if g.edge_count == 0:
        return Fraction(0)
    return _search(g)[0]


def densest_subgraph(g: Graph) -> frozenset[int]:
    """A vertex set attaining the maximum density (empty for edgeless graphs)."""
    if g.edge_count == 0:
        return frozenset()
    _, lo, scale, net = _search(g)
    return net.witness(lo, scale)


def mad_exact(g: Graph) -> Fraction:
    return 2 * max_density(g)


def mad_below(g: Graph, bound: Fraction) -> bool:
    """Single-flow test of ``mad(g) < bound``.

    Densities are fractions with denominator at most n, so ``mad >= bound``
    iff the density exceeds ``bound/2 - 1/(2 q n)`` where q is the
    denominator of ``bound/2``.
    """
    if g.edge_count == 0:
        return bound > 0
    half = Fraction(bound) / 2
    probe = half - Fraction(1, 2 * half.denominator * g.n)
    if probe < 0:
        return False
    return not _DensityNetwork(g).exceeds(probe.numerator, probe.denominator)


def mad_bruteforce(g: Graph) -> Fraction:
    """max over all nonempty vertex subsets S of 2|E(G[S])|/|S|."""
    n = g.n
    if n > BRUTEFORCE_LIMIT:
        raise ValueError(f"brute-force mad is limited to n <= {BRUTEFORCE_LIMIT} (got {n})")
    if g.edge_count == 0:
        return Fraction(0)
    index = {v: i for i, v in enumerate(g.vertices())}
    masks = np.arange(1 << n, dtype=np.int64)
    sizes = np.zeros(1 << n, dtype=np.int64)
    for i in range(n):
        sizes += (masks >> i) & 1
    inside = np.zeros(1 << n, dtype=np.int64)
    for u, v in g.edges():
        inside += ((masks >> index[u]) & 1) & ((masks >> index[v]) & 1)
    best = Fraction(0)
    for k in range(1, n + 1):
        top = int(inside[sizes == k].max())
        best = max(best, Fraction(2 * top, k))
    return best
