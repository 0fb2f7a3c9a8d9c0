"""End-to-end acceptance checks, one test per criterion.

Each test records a PASS/FAIL line (shown in the terminal summary) before
asserting, so a failing criterion is still reported alongside the others.
"""

from __future__ import annotations

import itertools
import random
import time
from fractions import Fraction

import pytest

from distcolor.coloring import ListInstance, color_even_cycle_lists, exact_chi2, verify_coloring
from distcolor.density import mad_bruteforce, mad_exact
from distcolor.discharging import apply_rules, audit
from distcolor.generators import (GeneratorSpec, cycle_graph, generate, path_graph, random_sparse,
                                  spider, star, subdivide, wegner_girth3, wegner_girth4)
from distcolor.graph import Graph, girth
from distcolor.reduction import ExtensionError, IrreducibleError, constructive_color
from distcolor.regimes import Regime
from oracles import Builder, chi2_bruteforce, girth_bruteforce, random_graph


def verdict(report_line, number: int, ok: bool, detail: str) -> None:
    report_line(f"criterion {number}: {'PASS' if ok else 'FAIL'} - {detail}")
    assert ok, detail


def suite(regime: Regime, count: int, n_max: int, deltas: tuple[int, int], seed: int) -> list[Graph]:
    rng = random.Random(seed)
    graphs = []
    for _ in range(count):
        delta = rng.randint(*deltas)
        n = rng.randint(max(20, delta + 4), n_max)
        graphs.append(random_sparse(n, regime.mad_bound, delta, rng.randrange(2**32)))
    return graphs


@pytest.fixture(scope="module")
def suite_a():
    start = time.perf_counter()
    graphs = suite(Regime.A, 200, 60, (6, 8), seed=1)
    return graphs, time.perf_counter() - start


@pytest.fixture(scope="module")
def suite_b():
    start = time.perf_counter()
    graphs = suite(Regime.B, 100, 80, (10, 12), seed=2)
    return graphs, time.perf_counter() - start


def test_criterion_1_moore_graphs(report_line):
    start = time.perf_counter()
    got = [exact_chi2(generate(GeneratorSpec(k)))[0] for k in ("moore_2_2", "moore_3_2", "moore_7_2")]
    elapsed = time.perf_counter() - start
    verdict(report_line, 1, got == [5, 10, 50] and elapsed < 5,
            f"chi2 of C5, Petersen, Hoffman-Singleton = {got} in {elapsed:.2f}s")


def test_criterion_2_wegner_girth3(report_line):
    start = time.perf_counter()
    k, c = exact_chi2(wegner_girth3(8))
    elapsed = time.perf_counter() - start
    ok = k == 13 == 3 * 8 // 2 + 1 and not verify_coloring(wegner_girth3(8), c) and elapsed < 60
    verdict(report_line, 2, ok, f"chi2(wegner_girth3(8)) = {k} in {elapsed:.2f}s")


def _color_suite(regime: Regime, graphs: list[Graph], deltas: tuple[int, int], n_max: int):
    failures = []
    for i, g in enumerate(graphs):
        if not (g.n <= n_max and deltas[0] <= g.max_degree <= deltas[1] and mad_exact(g) < regime.mad_bound):
            failures.append(f"instance {i} violates the suite hypotheses")
            continue
        try:
            c = constructive_color(g, regime)
        except (IrreducibleError, ExtensionError) as exc:
            failures.append(f"instance {i}: {exc}")
            continue
        if c.k != g.max_degree + 2 or verify_coloring(g, c):
            failures.append(f"instance {i}: invalid coloring")
    return failures


def test_criterion_3_regime_a_suite(report_line, suite_a):
    graphs, gen_time = suite_a
    start = time.perf_counter()
    failures = _color_suite(Regime.A, graphs, (6, 8), 60)
    elapsed = gen_time + time.perf_counter() - start
    verdict(report_line, 3, not failures and len(graphs) == 200 and elapsed < 120,
            f"{len(graphs) - len(failures)}/{len(graphs)} regime-A instances colored validly "
            f"in {elapsed:.1f}s {failures[:3]}")


def test_criterion_4_regime_b_suite(report_line, suite_b):
    graphs, gen_time = suite_b
    start = time.perf_counter()
    failures = _color_suite(Regime.B, graphs, (10, 12), 80)
    elapsed = gen_time + time.perf_counter() - start
    verdict(report_line, 4, not failures and len(graphs) == 100 and elapsed < 120,
            f"{len(graphs) - len(failures)}/{len(graphs)} regime-B instances colored validly "
            f"in {elapsed:.1f}s {failures[:3]}")


def test_criterion_5_discharging_exactness(report_line, suite_a, suite_b):
    problems = []
    total = 0
    for regime, (graphs, _) in ((Regime.A, suite_a), (Regime.B, suite_b)):
        for i, g in enumerate(graphs):
            total += 1
            rep = audit(g, regime)
            if rep.sum_final != rep.sum_initial:
                problems.append(f"{regime}{i}: conservation")
            if not rep.sum_initial < 0:
                problems.append(f"{regime}{i}: initial sum {rep.sum_initial}")
            if not rep.configurations:
                problems.append(f"{regime}{i}: no configuration")
            if rep.contradiction_flags:
                problems.append(f"{regime}{i}: {rep.contradiction_flags}")
    verdict(report_line, 5, not problems,
            f"{total - len(problems)}/{total} audits conserve charge, start negative and find a "
            f"configuration {problems[:3]}")


def _balances() -> dict[str, Fraction]:
    out = {}
    for regime, D in ((Regime.A, 6), (Regime.B, 10)):
        b = Builder()
        u, v = b.new(2)
        (x,) = b.chain(u, v, 1)
        b.pad_all([u, v], D)
        out[f"{regime} 1-path internal"] = apply_rules(b.graph(), regime, D).charges[x]

        b = Builder()
        u, v = b.new(2)
        a, c = b.chain(u, v, 2)
        b.pad_all([u, v], D)
        charges = apply_rules(b.graph(), regime, D).charges
        out[f"{regime} 2-path first internal"] = charges[a]
        out[f"{regime} 2-path second internal"] = charges[c]

        b = Builder()
        hubs = b.new(3)
        w = b.one()
        legs = [b.chain(w, h, 1)[0] for h in hubs]
        b.pad_all(hubs, D)
        charges = apply_rules(b.graph(), regime, D).charges
        out[f"{regime} sponsored (1,1,1)-vertex"] = charges[w]
        for i, x in enumerate(legs):
            out[f"{regime} (1,1,1) leg {i}"] = charges[x]
    return out


def test_criterion_6_hand_computed_balances(report_line):
    balances = _balances()
    bad = {k: v for k, v in balances.items() if v != 0}
    verdict(report_line, 6, not bad and len(balances) == 14,
            f"{len(balances) - len(bad)}/{len(balances)} fixture vertices end at exactly 0 {bad}")


def test_criterion_7_oracle_equivalences(report_line):
    rng = random.Random(7)
    start = time.perf_counter()
    mad_bad = chi_bad = girth_bad = 0
    for _ in range(500):
        g = random_graph(rng.randint(1, 14), rng.uniform(0.05, 0.6), rng)
        mad_bad += mad_exact(g) != mad_bruteforce(g)
    for _ in range(200):
        g = random_graph(rng.randint(1, 12), rng.uniform(0.05, 0.35), rng)
        chi_bad += exact_chi2(g)[0] != chi2_bruteforce(g)
    for _ in range(300):
        g = random_graph(rng.randint(1, 12), rng.uniform(0.05, 0.5), rng)
        girth_bad += girth(g) != girth_bruteforce(g)
    elapsed = time.perf_counter() - start
    ok = mad_bad == chi_bad == girth_bad == 0 and elapsed < 180
    verdict(report_line, 7, ok, f"mismatches mad {mad_bad}/500, chi2 {chi_bad}/200, girth "
                                f"{girth_bad}/300 in {elapsed:.1f}s")


def test_criterion_8_even_cycle_choosability(report_line):
    pairs = [frozenset(p) for p in itertools.combinations(range(4), 2)]
    rng = random.Random(8)
    cases = failures = 0

    def check(lists) -> bool:
        n = len(lists)
        got = color_even_cycle_lists(ListInstance(tuple(range(n)), lists))
        return all(got[i] in lists[i] and got[i] != got[(i + 1) % n] for i in range(n))

    for length in (4, 6):
        for lists in itertools.product(pairs, repeat=length):
            cases += 1
            failures += not check(lists)
    for _ in range(1000):
        cases += 1
        failures += not check([rng.choice(pairs) for _ in range(8)])
    verdict(report_line, 8, failures == 0 and cases == 6**4 + 6**6 + 1000,
            f"{cases - failures}/{cases} list assignments colored properly from their lists")


def test_criterion_9_planar_mad_girth(report_line):
    fixtures = {
        **{f"C{n}": cycle_graph(n) for n in (3, 4, 5, 8, 13)},
        "path P7": path_graph(7), "star K1,6": star(6), "spider 6x3": spider(6, 3),
        "subdivided star K1,5 twice": subdivide(star(5), 2), "subdivided star K1,8": subdivide(star(8), 1),
        "wegner_girth3(8)": wegner_girth3(8), "wegner_girth4(8)": wegner_girth4(8),
    }
    bad = []
    for name, g in fixtures.items():
        mad, gi = mad_exact(g), girth(g)
        # forests: girth is infinite and mad < 2, so the product is negative
        holds = mad < 2 if gi is None else (mad - 2) * (gi - 2) < 4
        if not holds:
            bad.append(name)
    verdict(report_line, 9, not bad,
            f"(mad-2)(girth-2) < 4 on {len(fixtures) - len(bad)}/{len(fixtures)} planar fixtures {bad}")
