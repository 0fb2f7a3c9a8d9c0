"""Constructive (D+2)-coloring by reducing configurations and extending back.

Each configuration kind has a scripted extension: optionally uncolor some
vertices, then color the deleted vertices in a fixed order.  Before any
color is chosen, every vertex's list (colors not used within distance 2)
is measured against the lower bound the reducibility argument guarantees;
a shortfall raises :class:`ExtensionError` instead of silently continuing.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .coloring import Coloring, ListInstance, available_colors, color_even_cycle_lists
from .density import mad_exact
from .graph import Graph, format_fraction
from .regimes import Regime
from .structure import Configuration, Kind, classify_paths, iter_configurations


class IrreducibleError(RuntimeError):
    """No configuration applies; carries diagnostics about the stuck graph."""

    def __init__(self, g: Graph, regime: Regime, D: int):
        self.remaining = g.n
        self.max_degree = g.max_degree
        self.mad: Fraction = mad_exact(g)
        self.D = D
        self.regime = regime
        failed = []
        if self.mad >= regime.mad_bound:
            failed.append(f"mad {format_fraction(self.mad)} >= {format_fraction(regime.mad_bound)}")
        if D < regime.delta_min:
            failed.append(f"D {D} < {regime.delta_min}")
        self.failed_hypotheses = failed
        why = "; ".join(failed) if failed else "hypotheses hold (implementation bug)"
        super().__init__(f"no reducible configuration in a {g.n}-vertex subgraph "
                         f"(regime {regime}, D {D}, max degree {self.max_degree}, "
                         f"mad {format_fraction(self.mad)}): {why}")


class ExtensionError(RuntimeError):
    """A list was smaller than the bound its extension step relies on."""

    def __init__(self, kind: Kind, vertex: int, bound: int, observed: int, stage: str):
        super().__init__(f"{kind.name}: vertex {vertex} has {observed} available colors "
                         f"{stage}, expected at least {bound}")
        self.kind = kind
        self.vertex = vertex
        self.bound = bound
        self.observed = observed
        self.stage = stage


@dataclass(frozen=True)
class ExtensionStep:
    kind: Kind
    vertex: int
    bound: int
    listed: int
    available: int
    color: int


def reduce_once(g: Graph, regime: Regime, D: int) -> tuple[Configuration, Graph]:
    """Highest-priority configuration and the graph without its deletable set.

    A component that is a bare cycle of 2-vertices is removed whole as a last
    resort, since no listed configuration covers it.
    """
    cfg = next(iter_configurations(g, regime, D), None)
    if cfg is None:
        bare = classify_paths(g).bare_cycles
        if not bare:
            raise IrreducibleError(g, regime, D)
        cycle = bare[0]
        cfg = Configuration(Kind.BareCycle, cycle, frozenset(cycle))
    return cfg, g.without(cfg.deletable)


class _Extender:
    def __init__(self, g: Graph, cfg: Configuration, colors: dict[int, int], k: int,
                 trace: list[ExtensionStep] | None):
        self.g = g
        self.cfg = cfg
        self.colors = colors
        self.k = k
        self.D = k - 2
        self.trace = trace
        self.listed: dict[int, int] = {}

    def avail(self, v: int) -> list[int]:
        return available_colors(self.g, self.colors, v, self.k)

    def check(self, bounds: list[tuple[int, int]]) -> None:
        """Measure lists against their bounds on the current partial coloring."""
        for v, bound in bounds:
            size = len(self.avail(v))
            self.listed[v] = size
            if size < bound:
                raise ExtensionError(self.cfg.kind, v, bound, size, "after reduction")

    def put(self, v: int, bound: int, choices: list[int] | None = None) -> None:
        options = self.avail(v) if choices is None else choices
        if not options:
            raise ExtensionError(self.cfg.kind, v, 1, 0, "at its turn")
        self.colors[v] = options[0]
        if self.trace is not None:
            self.trace.append(ExtensionStep(self.cfg.kind, v, bound, self.listed.get(v, -1),
                                            len(options), options[0]))

    def greedy(self, steps: list[tuple[int, int]]) -> None:
        self.check(steps)
        for v, bound in steps:
            self.put(v, bound)


def extend(g: Graph, cfg: Configuration, partial: Coloring,
           trace: list[ExtensionStep] | None = None) -> Coloring:
    """Color ``cfg.deletable`` on top of a valid coloring of the rest of g."""
    colors = dict(partial.assignment)
    ex = _Extender(g, cfg, colors, partial.k, trace)
    D, w = ex.D, cfg.witness
    kind = cfg.kind
    if kind is Kind.LowDegree:
        ex.greedy([(w[0], 2)])
    elif kind is Kind.LongPath:
        ex.greedy([(w[1], 2), (w[3], 2), (w[2], D)])
    elif kind is Kind.TwoPathLoop:
        ex.greedy([(w[1], 3), (w[2], 3)])
    elif kind is Kind.TwoPathWeakEnd:
        ex.greedy([(w[1], 1), (w[2], 2)])
    elif kind is Kind.TwoPathCycle:
        inner = [x for i, x in enumerate(w) if i % 3]
        _cycle_lists(ex, inner)
    elif kind is Kind.TripleCoincident:
        u, u1, u2, u3 = w[:4]
        ex.greedy([(u3, 2), (u1, 3), (u2, 3), (u, D)])
    elif kind is Kind.TripleWeakEnd:
        u, u1, u2, u3 = w[:4]
        ex.greedy([(u3, 2), (u2, 2), (u1, 3), (u, D - 1)])
    elif kind is Kind.TripleCycle:
        _triple_cycle(ex, w)
    elif kind is Kind.Deg3TwoOnesWeakEnd:
        u, u1, u2 = w[:3]
        ex.greedy([(u2, 1), (u1, 2), (u, 3)])
    elif kind is Kind.WeirdDeltaVertex:
        _weird_delta(ex, w)
    elif kind is Kind.Deg3OneOneWeakEnd_B:
        u, v = w[:2]
        del colors[u]
        ex.greedy([(v, 1), (u, D - 7)])
    elif kind is Kind.QuadOnesTwoWeakEnds_B:
        u, u1, u2, u3, u4 = w[:5]
        ex.greedy([(u3, 2), (u4, 2), (u1, 4), (u2, 4), (u, D - 2)])
    elif kind is Kind.BareCycle:
        ex.greedy([(v, D + 2) for v in w])
    else:  # pragma: no cover
        raise ValueError(f"unknown configuration kind {kind}")
    return Coloring(colors, partial.k)


def _cycle_lists(ex: _Extender, inner: list[int]) -> None:
    ex.check([(x, 2) for x in inner])
    inst = ListInstance(tuple(inner), tuple(ex.avail(x) for x in inner))
    chosen = color_even_cycle_lists(inst)
    for x in inner:
        ex.put(x, 2, [chosen[x]])


def _triple_cycle(ex: _Extender, w: tuple[int, ...]) -> None:
    xs = [x for i, x in enumerate(w) if i % 2]
    centers = [x for i, x in enumerate(w) if i % 4 == 2]
    _cycle_lists(ex, xs)
    ex.check([(c, ex.D - 4) for c in centers])
    for c in centers:
        ex.put(c, ex.D - 4)


def _weird_delta(ex: _Extender, w: tuple[int, ...]) -> None:
    u, u_tail, v_tail, u_top, u_top2, _v_top = w[:6]
    others = list(w[6:])
    D = ex.D
    del ex.colors[v_tail]
    ex.check([(u, 4), (u_top2, 2), (v_tail, D - 2), *((x, D - 1) for x in others),
              (u_tail, D), (u_top, D + 1)])
    reserved = ex.avail(u_top2)[:2]
    ex.put(u, 4, [c for c in ex.avail(u) if c not in reserved])
    for x in others:
        ex.put(x, D - 1)
    ex.put(u_tail, D)
    ex.put(u_top, D + 1)
    ex.put(v_tail, D - 2)
    ex.put(u_top2, 2, [c for c in reserved if c in ex.avail(u_top2)])


def constructive_color(g: Graph, regime: Regime, delta: int | None = None,
                       trace: list[ExtensionStep] | None = None) -> Coloring:
    """(D+2)-coloring of g at distance 2, D defaulting to the maximum degree."""
    D = g.max_degree if delta is None else delta
    if D < g.max_degree:
        raise ValueError(f"D={D} is below the maximum degree {g.max_degree}")
    k = D + 2
    stack: list[tuple[Graph, Configuration]] = []
    h = g
    while h.n:
        cfg, rest = reduce_once(h, regime, D)
        stack.append((h, cfg))
        h = rest
    coloring = Coloring({}, k)
    for host, cfg in reversed(stack):
        coloring = extend(host, cfg, coloring, trace)
    return coloring
