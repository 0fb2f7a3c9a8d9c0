"""Command-line interface.

Exit codes: 0 success, 1 parse or usage error, 2 invalid coloring,
3 irreducible graph, 4 exact-solver budget exceeded.
"""

from __future__ import annotations

import argparse
import json
import random
import sys
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import TextIO

from .coloring import BudgetExceeded, exact_chi2, format_coloring, parse_coloring, verify_coloring
from .density import mad_exact
from .discharging import audit, transfers_csv
from .generators import KINDS, GenerationError, GeneratorSpec, generate, random_sparse
from .graph import EdgeListError, Graph, average_degree, format_edge_list, format_fraction, girth, parse_edge_list
from .reduction import ExtensionError, IrreducibleError, constructive_color
from .regimes import Regime
from .structure import find_configurations

EXIT_OK, EXIT_USAGE, EXIT_INVALID, EXIT_IRREDUCIBLE, EXIT_BUDGET = 0, 1, 2, 3, 4


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message: str):  # argparse would exit with status 2
        raise _UsageError(message)


@dataclass
class CommandConfig:
    subcommand: str
    args: argparse.Namespace
    out: TextIO


def _read_graph(path: str) -> Graph:
    try:
        data = Path(path).read_bytes()
    except OSError as exc:
        raise _UsageError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return parse_edge_list(data)
    except EdgeListError as exc:
        raise _UsageError(f"{path}: {exc}") from None


def _regime_for(g: Graph, flag: str | None) -> tuple[Regime, str]:
    """Explicit flag, else inferred from mad and max degree, else a fallback."""
    if flag:
        return Regime.parse(flag), "given"
    inferred = Regime.infer(mad_exact(g), g.max_degree)
    if inferred is not None:
        return inferred, "inferred"
    return (Regime.B if g.max_degree >= Regime.B.delta_min else Regime.A), "fallback"


def _emit(cfg: CommandConfig, payload: dict, text: str) -> None:
    if cfg.args.json:
        cfg.out.write(json.dumps(payload, indent=2) + "\n")
    else:
        cfg.out.write(text.rstrip("\n") + "\n")


def _write_out(path: str | None, content: str) -> None:
    if path:
        Path(path).write_text(content)


def analysis_report(g: Graph) -> dict:
    mad = mad_exact(g)
    regime = Regime.infer(mad, g.max_degree)
    return {
        "n": g.n,
        "m": g.edge_count,
        "max_degree": g.max_degree,
        "average_degree": format_fraction(average_degree(g)) if g.n else None,
        "mad": format_fraction(mad),
        "girth": girth(g),
        "regime": regime.label if regime else None,
        "mad_at_regime_boundary": [r.label for r in Regime if mad == r.mad_bound],
    }


def _cmd_analyze(cfg: CommandConfig) -> int:
    g = _read_graph(cfg.args.graph)
    rep = analysis_report(g)
    lines = [f"{key}: {value}" for key, value in rep.items()]
    _emit(cfg, rep, "\n".join(lines))
    return EXIT_OK


def _cmd_detect(cfg: CommandConfig) -> int:
    g = _read_graph(cfg.args.graph)
    regime, how = _regime_for(g, cfg.args.regime)
    D = cfg.args.delta if cfg.args.delta is not None else g.max_degree
    configs = find_configurations(g, regime, D)
    payload = [c.to_json() for c in configs]
    lines = [f"regime {regime} ({how}), D {D}: {len(configs)} configuration(s)"]
    lines += [f"{c.kind.name} witness={list(c.witness)} deletable={sorted(c.deletable)}"
              for c in configs]
    _emit(cfg, payload, "\n".join(lines))  # type: ignore[arg-type]
    return EXIT_OK


def _cmd_discharge(cfg: CommandConfig) -> int:
    g = _read_graph(cfg.args.graph)
    regime, how = _regime_for(g, cfg.args.regime)
    rep = audit(g, regime, cfg.args.delta)
    _write_out(cfg.args.out, transfers_csv(rep.transfers))
    data = rep.to_json()
    lines = [
        f"regime {regime} ({how}), D {rep.D}",
        f"sum of initial charges: {data['sum_initial']} ({'negative' if rep.sum_initial < 0 else 'nonnegative'})",
        f"sum of final charges: {data['sum_final']}",
        f"conservation: {'ok' if rep.conserved else 'BROKEN'}",
        f"configurations: {len(rep.configurations)}",
        f"negative vertices: {len(rep.negative_vertices)}",
    ]
    lines += [f"contradiction: {f}" for f in rep.contradiction_flags]
    lines += [f"note: {n}" for n in rep.notes]
    _emit(cfg, data, "\n".join(lines))
    return EXIT_OK


def _cmd_color(cfg: CommandConfig) -> int:
    g = _read_graph(cfg.args.graph)
    regime, how = _regime_for(g, cfg.args.regime)
    try:
        c = constructive_color(g, regime, cfg.args.delta)
    except IrreducibleError as exc:
        _emit(cfg, {"error": "irreducible", "message": str(exc)}, f"irreducible: {exc}")
        return EXIT_IRREDUCIBLE
    except ExtensionError as exc:
        _emit(cfg, {"error": "extension", "message": str(exc)}, f"extension failed: {exc}")
        return EXIT_IRREDUCIBLE
    except ValueError as exc:
        raise _UsageError(str(exc)) from None
    bad = verify_coloring(g, c)
    _write_out(cfg.args.out, format_coloring(c))
    payload = {"regime": regime.label, "k": c.k, "colors_used": c.colors_used(),
               "valid": not bad, "coloring": {str(v): col for v, col in sorted(c.assignment.items())}}
    text = f"regime {regime} ({how}): {c.colors_used()} colors used of {c.k}, " \
           f"{'valid' if not bad else 'INVALID'}"
    if not cfg.args.out and not cfg.args.json:
        text += "\n" + format_coloring(c)
    _emit(cfg, payload, text)
    return EXIT_INVALID if bad else EXIT_OK


def _cmd_verify(cfg: CommandConfig) -> int:
    g = _read_graph(cfg.args.graph)
    try:
        c = parse_coloring(Path(cfg.args.coloring).read_text(), cfg.args.k)
        bad = verify_coloring(g, c)
    except OSError as exc:
        raise _UsageError(f"cannot read {cfg.args.coloring}: {exc.strerror}") from None
    except ValueError as exc:
        _emit(cfg, {"valid": False, "error": str(exc)}, f"invalid: {exc}")
        return EXIT_INVALID
    payload = {"valid": not bad, "violations": [list(t) for t in bad]}
    text = "valid" if not bad else "\n".join(
        [f"invalid: {len(bad)} violation(s)"] + [f"{u} {v} share color {col}" for u, v, col in bad])
    _emit(cfg, payload, text)
    return EXIT_OK if not bad else EXIT_INVALID


def _cmd_exact(cfg: CommandConfig) -> int:
    g = _read_graph(cfg.args.graph)
    try:
        k, c = exact_chi2(g, cfg.args.budget)
    except BudgetExceeded as exc:
        _emit(cfg, {"exact": False, "lower": exc.lower, "upper": exc.upper},
              f"budget exceeded: {exc.lower} <= chi2 <= {exc.upper}")
        return EXIT_BUDGET
    _write_out(cfg.args.out, format_coloring(c))
    _emit(cfg, {"exact": True, "chi2": k}, f"chi2 = {k}")
    return EXIT_OK


def _cmd_generate(cfg: CommandConfig) -> int:
    a = cfg.args
    try:
        if a.spec:
            spec = GeneratorSpec.from_json(json.loads(Path(a.spec).read_text()))
        else:
            spec = GeneratorSpec(a.kind, delta=a.delta, n=a.n,
                                 mad_cap=Fraction(a.mad_cap) if a.mad_cap else None,
                                 delta_target=a.delta_target, seed=a.seed)
        g = generate(spec)
    except (ValueError, TypeError, OSError, GenerationError) as exc:
        raise _UsageError(str(exc)) from None
    text = format_edge_list(g)
    if a.out:
        _write_out(a.out, text)
        cfg.out.write(f"wrote {a.out}: n={g.n} m={g.edge_count} max_degree={g.max_degree}\n")
    else:
        cfg.out.write(text)
    return EXIT_OK


def _cmd_corpus(cfg: CommandConfig) -> int:
    a = cfg.args
    regime = Regime.parse(a.regime)
    rng = random.Random(a.seed)
    lo, hi = a.delta_range or ((6, 8) if regime is Regime.A else (10, 12))
    rows = []
    for i in range(a.count):
        delta = rng.randint(lo, hi)
        n = rng.randint(delta + 2, a.n)
        try:
            g = random_sparse(n, regime.mad_bound, delta, rng.randrange(2**32))
        except GenerationError as exc:
            raise _UsageError(str(exc)) from None
        row = {"instance": i, "n": g.n, "max_degree": g.max_degree, "ok": False,
               "colors_used": None, "irreducible": False}
        try:
            c = constructive_color(g, regime)
            row["ok"] = not verify_coloring(g, c)
            row["colors_used"] = c.colors_used()
        except (IrreducibleError, ExtensionError):
            row["irreducible"] = True
        rows.append(row)
    summary = {
        "regime": regime.label,
        "instances": len(rows),
        "successes": sum(r["ok"] for r in rows),
        "max_colors_used": max((r["colors_used"] or 0 for r in rows), default=0),
        "irreducible": sum(r["irreducible"] for r in rows),
    }
    text = "\n".join(f"{key:>16}  {value}" for key, value in summary.items())
    _emit(cfg, {"summary": summary, "instances": rows}, text)
    if summary["irreducible"]:
        return EXIT_IRREDUCIBLE
    return EXIT_OK if summary["successes"] == summary["instances"] else EXIT_INVALID


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="distcolor", description="2-distance coloring toolkit for sparse graphs")
    sub = p.add_subparsers(dest="subcommand", required=True, parser_class=_Parser)

    def common(sp: argparse.ArgumentParser, graph: bool = True) -> None:
        if graph:
            sp.add_argument("graph", help="edge-list file")
        sp.add_argument("--json", action="store_true", help="JSON output")
        sp.add_argument("--out", help="output file")

    def regime(sp: argparse.ArgumentParser) -> None:
        sp.add_argument("--regime", choices=["A", "B", "a", "b"], help="sparsity regime (default: inferred)")
        sp.add_argument("--delta", type=int, help="override D (default: max degree)")

    common(sub.add_parser("analyze", help="size, degrees, mad and girth"))
    for name, text in (("detect", "list reducible configurations"),
                       ("discharge", "audit charges; --out writes the transfer log CSV"),
                       ("color", "constructive (D+2)-coloring; --out writes the coloring")):
        sp = sub.add_parser(name, help=text)
        common(sp)
        regime(sp)
    sp = sub.add_parser("verify", help="check a coloring file")
    common(sp)
    sp.add_argument("coloring", help="coloring file with 'vertex color' lines")
    sp.add_argument("--k", type=int, help="palette size (default: largest color + 1)")
    sp = sub.add_parser("exact", help="exact 2-distance chromatic number")
    common(sp)
    sp.add_argument("--budget", type=int, default=10**7, help="branch-and-bound node budget")
    sp = sub.add_parser("generate", help="write a named or random graph")
    common(sp, graph=False)
    sp.add_argument("kind", nargs="?", choices=KINDS)
    sp.add_argument("--spec", help="JSON generator spec instead of flags")
    sp.add_argument("--delta", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--mad-cap", help="rational such as 8/3")
    sp.add_argument("--delta-target", type=int)
    sp.add_argument("--seed", type=int, default=0)
    sp = sub.add_parser("corpus", help="color a seeded random corpus and summarize")
    common(sp, graph=False)
    sp.add_argument("--regime", choices=["A", "B", "a", "b"], default="A")
    sp.add_argument("--count", type=int, default=20)
    sp.add_argument("--n", type=int, default=40, help="maximum instance size")
    sp.add_argument("--delta-range", type=int, nargs=2, metavar=("LO", "HI"))
    sp.add_argument("--seed", type=int, default=0)
    return p


_COMMANDS = {
    "analyze": _cmd_analyze, "detect": _cmd_detect, "discharge": _cmd_discharge,
    "color": _cmd_color, "verify": _cmd_verify, "exact": _cmd_exact,
    "generate": _cmd_generate, "corpus": _cmd_corpus,
}


def run(argv: list[str], out: TextIO, err: TextIO) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.subcommand == "generate" and not (args.kind or args.spec):
            raise _UsageError("generate needs a kind or --spec")
        return _COMMANDS[args.subcommand](CommandConfig(args.subcommand, args, out))
    except _UsageError as exc:
        err.write(f"distcolor: error: {exc}\n")
        return EXIT_USAGE


def main(argv: list[str] | None = None) -> int:
    return run(sys.argv[1:] if argv is None else argv, sys.stdout, sys.stderr)
