"""Charge assignment, the two rule sets and the audit of final charges.

Every rule firing is determined from the graph, D and the sponsor
assignment before any charge moves, so the order of rules cannot matter.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass, field
from fractions import Fraction

from .density import mad_exact
from .graph import Graph, format_fraction
from .regimes import Regime
from .structure import (Configuration, KPath, SponsorAssignment, SponsorshipError,
                        Scan, build_sponsorship, classify_paths, find_configurations)

HALF = Fraction(1, 2)

RULE_AMOUNTS = {
    Regime.A: frozenset({Fraction(1), Fraction(3, 2), Fraction(2), HALF}),
    Regime.B: frozenset({Fraction(2), Fraction(7, 2), Fraction(4), HALF, Fraction(1),
                         Fraction(3), Fraction(3, 2), Fraction(2, 3)}),
}


@dataclass(frozen=True)
class Transfer:
    rule: str
    source: int
    target: int
    amount: Fraction


@dataclass
class ChargeState:
    charges: dict[int, Fraction]
    transfers: list[Transfer] = field(default_factory=list)

    def total(self) -> Fraction:
        return sum(self.charges.values(), Fraction(0))

    def negative(self) -> list[tuple[int, Fraction]]:
        return [(v, c) for v, c in self.charges.items() if c < 0]


def charge(d: int, r: Regime) -> Fraction:
    a, b = r.charge_coeffs
    return Fraction(a * d - b)


def initial_charge(g: Graph, r: Regime) -> ChargeState:
    return ChargeState({v: charge(g.degree(v), r) for v in g.vertices()})


def _leg_ks(s: Scan, w: int) -> tuple[int, ...] | None:
    """Signature of w counting only proper paths; None if a leg is pendant."""
    legs = s.legs(w)
    if any(not s.proper(l) for l in legs):
        return None
    return tuple(sorted((l.k for l in legs), reverse=True))


def rule_transfers(g: Graph, r: Regime, D: int, s: SponsorAssignment) -> list[Transfer]:
    """All firings of the regime's rules, one per witnessing path."""
    scan = Scan(g, D)
    deg = scan.deg
    out: list[Transfer] = []

    def give(rule: str, u: int, w: int, amount: Fraction) -> None:
        out.append(Transfer(rule, u, w, amount))

    for u in g.vertices():
        du = deg[u]
        if du < 3:
            continue
        for leg in scan.legs(u):
            if not scan.proper(leg):
                continue
            w = leg.far
            if leg.k == 1:
                give("R0", u, leg.neighbor, Fraction(1) if r is Regime.A else Fraction(2))
                if du == D and deg[w] >= 3:
                    _r3_delta(r, scan, s, u, w, give)
                if r is Regime.B and du >= 9 and deg[w] == 4:
                    give("R3(iv)", u, w, Fraction(2, 3))
            elif leg.k == 2:
                key = KPath.canonical(u, leg.internals, w).internals
                first, second = leg.internals
                if w != u and s.two_path_sponsor.get(key) == u:
                    give("R1(ii)", u, first, Fraction(2) if r is Regime.A else Fraction(4))
                    give("R1(ii)", u, second, HALF)
                else:
                    give("R1(i)", u, first, Fraction(3, 2) if r is Regime.A else Fraction(7, 2))
            elif leg.k == 0 and deg[w] == 3:
                if r is Regime.A:
                    if du >= 4:
                        give("R2", u, w, Fraction(1))
                elif 5 <= du <= 7:
                    give("R2(i)", u, w, Fraction(1))
                elif du >= 8:
                    give("R2(ii)", u, w, Fraction(3))
    return out


def _r3_delta(r: Regime, scan: Scan, s: SponsorAssignment, u: int, w: int, give) -> None:
    ks = _leg_ks(scan, w)
    triple = scan.is_triple(w)
    sponsor = u in s.triple_sponsors.get(w, ())
    if r is Regime.A:
        if triple and sponsor:
            give("R3(i)", u, w, Fraction(1))
        elif ks == (1, 1, 0):
            give("R3(ii)", u, w, HALF)
    else:
        if triple:
            if sponsor:
                give("R3(i)", u, w, Fraction(2))
            else:
                give("R3(ii)", u, w, Fraction(1))
        elif ks in ((1, 1, 0), (1, 0, 0)):
            give("R3(iii)", u, w, Fraction(3, 2))


def apply_rules(g: Graph, r: Regime, D: int, s: SponsorAssignment | None = None) -> ChargeState:
    """Final charges; builds a strict sponsor assignment when none is given."""
    if s is None:
        s = build_sponsorship(g, D)
    state = initial_charge(g, r)
    state.transfers = rule_transfers(g, r, D, s)
    for t in state.transfers:
        state.charges[t.source] -= t.amount
        state.charges[t.target] += t.amount
    return state


@dataclass
class AuditReport:
    regime: Regime
    D: int
    max_degree: int
    mad: Fraction
    sum_initial: Fraction
    sum_final: Fraction
    final: dict[int, Fraction]
    transfers: list[Transfer]
    configurations: list[Configuration]
    bare_cycles: list[tuple[int, ...]]
    sponsorship_strict: bool
    contradiction_flags: list[str] = field(default_factory=list)
    notes: list[str] = field(default_factory=list)

    @property
    def conserved(self) -> bool:
        return self.sum_initial == self.sum_final

    @property
    def negative_vertices(self) -> list[tuple[int, Fraction]]:
        return [(v, c) for v, c in self.final.items() if c < 0]

    @property
    def hypotheses_hold(self) -> bool:
        return self.max_degree == self.D >= self.regime.delta_min

    def to_json(self) -> dict:
        return {
            "regime": self.regime.label,
            "D": self.D,
            "max_degree": self.max_degree,
            "mad": format_fraction(self.mad),
            "sum_initial": format_fraction(self.sum_initial),
            "sum_final": format_fraction(self.sum_final),
            "sum_initial_negative": self.sum_initial < 0,
            "conserved": self.conserved,
            "negative_vertices": [{"v": v, "charge": format_fraction(c)}
                                  for v, c in self.negative_vertices],
            "configurations": [c.to_json() for c in self.configurations],
            "bare_cycles": [list(c) for c in self.bare_cycles],
            "sponsorship": "strict" if self.sponsorship_strict else "lenient",
            "contradiction_flags": list(self.contradiction_flags),
            "notes": list(self.notes),
        }


def audit(g: Graph, r: Regime, D: int | None = None) -> AuditReport:
    """Run detection, rules and the charge checks on one concrete graph.

    Impossibilities (a negative final charge on a configuration-free graph
    meeting the degree hypothesis, a nonnegative initial sum under the mad
    bound, broken conservation) become ``contradiction_flags``.
    """
    if D is None:
        D = g.max_degree
    configs = find_configurations(g, r, D)
    bare = list(classify_paths(g).bare_cycles)
    try:
        sponsors, strict = build_sponsorship(g, D, strict=True), True
    except SponsorshipError:
        sponsors, strict = build_sponsorship(g, D, strict=False), False
    initial = initial_charge(g, r)
    state = apply_rules(g, r, D, sponsors)
    mad = mad_exact(g)
    report = AuditReport(r, D, g.max_degree, mad, initial.total(), state.total(),
                         state.charges, state.transfers, configs, bare, strict)

    if not report.conserved:
        report.contradiction_flags.append(
            f"conservation broken: {report.sum_initial} != {report.sum_final}")
    below = mad < r.mad_bound
    if below and report.sum_initial >= 0:
        report.contradiction_flags.append(
            f"mad {format_fraction(mad)} < {format_fraction(r.mad_bound)} but initial sum is "
            f"{format_fraction(report.sum_initial)}")
    if not configs and report.hypotheses_hold and report.negative_vertices:
        worst = min(report.negative_vertices, key=lambda vc: vc[1])
        report.contradiction_flags.append(
            f"configuration-free graph with negative final charge at vertex {worst[0]} "
            f"({format_fraction(worst[1])})")
    if (below and not configs and not bare and g.edge_count > 0
            and g.max_degree <= D and D >= r.delta_min):
        report.contradiction_flags.append("no reducible configuration in a graph below the mad bound")

    if bare:
        report.notes.append(f"{len(bare)} component(s) are bare cycles of 2-vertices")
    if not report.hypotheses_hold:
        report.notes.append(f"degree hypothesis fails: max degree {g.max_degree}, D {D}, "
                            f"regime minimum {r.delta_min}")
    if mad == r.mad_bound:
        report.notes.append("mad equals the regime bound (boundary case)")
    if not strict:
        report.notes.append("sponsor forests built leniently because the graph has reducible 2-path or "
                            "(1,1,1) configurations")
    return report


def transfers_csv(transfers: list[Transfer]) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(["rule", "from", "to", "amount"])
    for t in transfers:
        writer.writerow([t.rule, t.source, t.target, format_fraction(t.amount)])
    return buf.getvalue()
