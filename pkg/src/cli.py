#!/usr/bin/env python
"""Command-line entry point.

Usage:
    python -m src.cli tune scan --max-p 20 --max-n 30 --max-u 10
    python -m src.cli tune scale --p 7 --n 10
    python -m src.cli harmony solve --n 10 --q 7 --delta 1
    python -m src.cli harmony chords --system acoustic
    python -m src.cli tonnetz build --system wide --dot wide.dot --json wide.json
    python -m src.cli tonnetz table --n 12 --q 7 --t 4 --s 3
    python -m src.cli tonnetz walk --system tritone --start M8 --word "L R (P R)^4 L R (P R)^4"
    python -m src.cli tonnetz analyze --n 10 --q 7 --t 4 --s 3 --json out.json
    python -m src.cli config check --system wide
    python -m src.cli census cyclic-103 --json census.json
    python -m src.cli systems list

Exit codes: 0 success, 2 invalid arguments, 3 degenerate system.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path
from typing import Callable, Optional

import graphviz
import networkx as nx
from pydantic import BaseModel

PROJECT_ROOT = Path(__file__).resolve().parents[1]
if str(PROJECT_ROOT) not in sys.path:
    sys.path.insert(0, str(PROJECT_ROOT))

from src import analysis
from src.env_config import load_project_env
from src.errors import (
    DegenerateChordError,
    DegenerateScaleError,
    DegenerateSystemError,
    DomainError,
    UnsupportedSizeError,
)
from src.harmony import HarmonicSystem, Vertex, chord_at, pitch_name
from src.logger import log_execution
from src.schemas import dump_report
from src.system_catalog import SystemCatalog
from src.tonnetz import build_functional_tonnetz, build_set_level_tonnetz, connection_table, word_cycle
from src.tuning import build_scale, format_interval_table

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_DEGENERATE = 3

Outcome = tuple[dict, list[str]]


# =============================================================================
# output helpers
# =============================================================================

def info(message: str) -> None:
    print(f"[INFO] {message}", file=sys.stderr)


def tonnetz_to_dot(graph: nx.Graph, name: str = "tonnetz") -> str:
    """DOT source with vertices D0.., M0.. and P/L/R edge labels."""

    def label_of(v) -> str:
        return v.name if isinstance(v, Vertex) else str(v)

    dot = graphviz.Graph(name=name)
    for v in sorted(graph):
        dot.node(label_of(v))
    for u, v in sorted(tuple(sorted(edge)) for edge in graph.edges()):
        label = graph.edges[u, v].get("label")
        if label:
            dot.edge(label_of(u), label_of(v), label=label)
        else:
            dot.edge(label_of(u), label_of(v))
    return dot.source


def _write(path: str, text: str, outputs: list[str]) -> None:
    target = Path(path)
    if target.parent and not target.parent.exists():
        target.parent.mkdir(parents=True, exist_ok=True)
    target.write_text(text, encoding="utf-8")
    outputs.append(str(target))
    info(f"wrote {target}")


def _emit(report: BaseModel, json_path: Optional[str], lines: list[str], outputs: list[str]) -> None:
    """Write the JSON report to a file, or print the text table to stdout."""
    if json_path == "-":
        sys.stdout.write(dump_report(report))
    elif json_path:
        _write(json_path, dump_report(report), outputs)
    else:
        for line in lines:
            print(line)


# =============================================================================
# system resolution
# =============================================================================

def _catalog(args: argparse.Namespace) -> SystemCatalog:
    return SystemCatalog(Path(args.catalog) if args.catalog else None)


def _resolve_system(args: argparse.Namespace) -> HarmonicSystem:
    if args.system:
        return _catalog(args).get(args.system)
    values = [args.n, args.q, args.t, args.s]
    if any(v is None for v in values):
        args.parser.error("give --system NAME or all of --n, --q, --t, --s")
    return HarmonicSystem(n=args.n, q=args.q, t=args.t, s=args.s)


# =============================================================================
# handlers
# =============================================================================

def cmd_tune_scan(args) -> Outcome:
    report = analysis.scan_report(args.max_p, args.max_n, args.max_u, progress=args.progress)
    lines = [f"{'rank':>4}  {'p':>3}  {'u':>3}  {'n':>3}  {'generator':>9}  comma"]
    for rank, row in enumerate(report.rows[: args.limit], start=1):
        lines.append(f"{rank:>4}  {row.p:>3}  {row.u:>3}  {row.n:>3}  {row.generator:>9}  {row.comma[:14]}")
    outputs: list[str] = []
    _emit(report, args.json, lines, outputs)
    best = report.rows[0] if report.rows else None
    return {"rows": len(report.rows), "best": f"({best.p},{best.u},{best.n})" if best else None}, outputs


def cmd_tune_scale(args) -> Outcome:
    report = analysis.scale_report(args.p, args.n, args.lowest_power)
    lines = [format_interval_table(build_scale(args.p, args.n, args.lowest_power))]
    outputs: list[str] = []
    _emit(report, args.json, lines, outputs)
    return {"generator_label": report.generator_label}, outputs


def cmd_harmony_solve(args) -> Outcome:
    report = analysis.solve_report(args.n, args.q, args.delta, _catalog(args))
    lines = [f"{'delta':>5}  {'t':>3}  {'s':>3}  {'trivial':<7}  named"]
    for row in report.solutions:
        lines.append(f"{row.delta:>5}  {row.t:>3}  {row.s:>3}  {str(row.trivial):<7}  {row.named or ''}")
    if not report.solutions:
        info(f"no (t, s) solves t + s = {report.q}, t - s = {report.delta} in Z_{report.n}")
    if not report.q_generators:
        print(f"[WARN] q={report.q} is not the generator label of any harmonic generator in {args.n}-TET", file=sys.stderr)
    outputs: list[str] = []
    _emit(report, args.json, lines, outputs)
    return {"solutions": len(report.solutions)}, outputs


def cmd_harmony_chords(args) -> Outcome:
    system = _resolve_system(args)
    report = analysis.chords_report(system)
    lines = [f"system {system.label} delta={system.delta}"]
    for row in report.chords:
        names = " ".join(pitch_name(p, system.n) for p in row.pitches)
        lines.append(f"{row.name:<4} {{{names}}}  intervals={tuple(row.interval_vector)}")
    outputs: list[str] = []
    _emit(report, args.json, lines, outputs)
    return {"chords": len(report.chords)}, outputs


def cmd_tonnetz_build(args) -> Outcome:
    system = _resolve_system(args)
    graph = build_set_level_tonnetz(system) if args.set_level else build_functional_tonnetz(system)
    report = analysis.build_report(system, graph)
    lines = [
        f"{report.kind} Tonnetz {system.label}: {len(report.vertices)} vertices, {report.edge_count} edges",
        "offsets: " + ", ".join(f"{label}={k}" for label, k in report.offsets.items()),
    ]
    outputs: list[str] = []
    if args.dot:
        _write(args.dot, tonnetz_to_dot(graph), outputs)
    _emit(report, args.json, lines, outputs)
    return {"kind": report.kind, "edges": report.edge_count}, outputs


def cmd_tonnetz_table(args) -> Outcome:
    system = _resolve_system(args)
    for row in connection_table(system):
        moves = "  ".join(f"{op.value}->{other.name}" for op, other in row.neighbors)
        print(f"{row.chord.name:<4} {moves}")
    return {"rows": 2 * system.n}, []


def cmd_tonnetz_walk(args) -> Outcome:
    system = _resolve_system(args)
    start = chord_at(system, Vertex.parse(args.start))
    walk = word_cycle(system, start, args.word)
    print(" -> ".join(chord.name for chord in walk.path))
    print(f"closes={walk.closes} hamiltonian={walk.hamiltonian} first_return={walk.first_return}")
    return {"closes": walk.closes, "hamiltonian": walk.hamiltonian}, []


def cmd_tonnetz_analyze(args) -> Outcome:
    system = _resolve_system(args)
    report = analysis.analyze_system(system)
    f = report.functional
    lines = [
        f"system {system.label} delta={system.delta}",
        f"offsets {report.offset_labels}",
        f"modal degeneracy: {'sigma=' + str(report.degeneracy.sigma) if report.degeneracy.degenerate else 'none'}",
        f"set-level: {report.set_level.components} component(s), sizes {report.set_level.component_sizes}",
        f"functional: order {f.order}, degree {f.regular_degree}, girth {f.girth}, bipartite {f.bipartite}",
        f"hamiltonian: {f.hamiltonian}; 4-cycle classes: {f.four_cycle_classes}",
        f"shortest cycles: {f.shortest_cycle_count} in {f.shortest_cycle_classes} class(es), {f.chiral_cycle_classes} chiral",
        f"automorphisms: {f.aut_order}" + ("" if f.dihedral is None else f", dihedral {f.dihedral}"),
        f"circulant Ci{2 * system.n}({','.join(map(str, report.circulant.jumps))}): verified {report.circulant.verified}",
        f"n3 configuration: {report.configuration.is_n3} (self-dual {report.configuration.self_dual}, "
        f"cyclic {report.configuration.cyclic})",
    ]
    outputs: list[str] = []
    if args.dot:
        _write(args.dot, tonnetz_to_dot(build_functional_tonnetz(system)), outputs)
    _emit(report, args.json, lines, outputs)
    return {"girth": f.girth, "aut_order": f.aut_order, "is_n3": report.configuration.is_n3}, outputs


def cmd_config_check(args) -> Outcome:
    system = _resolve_system(args)
    report = analysis.config_report(system)
    lines = [
        f"system {system.label}: is_n3={report.is_n3} self_dual={report.self_dual} cyclic={report.cyclic}",
        f"reasons: {', '.join(report.reasons) or 'none'}",
        f"circulant jumps: {report.circulant_jumps}",
        f"desargues: {report.desargues}",
    ]
    outputs: list[str] = []
    _emit(report, args.json, lines, outputs)
    return {"is_n3": report.is_n3}, outputs


def cmd_census(args) -> Outcome:
    report = analysis.census_report(_catalog(args))
    lines = [
        f"surviving triples: {len(report.members)} of {len(report.members) + len(report.rejected)}",
        f"isomorphism classes: {len(report.classes)}",
        f"canonical forms: {report.canonical_forms}",
        f"wide triple: {report.wide_member} (class {report.wide_class})",
        f"desargues classes: {report.desargues_classes or 'none'}",
    ]
    outputs: list[str] = []
    _emit(report, args.json, lines, outputs)
    return {"members": len(report.members), "classes": len(report.classes)}, outputs


def cmd_systems_list(args) -> Outcome:
    catalog = _catalog(args)
    for line in catalog.list_systems():
        print(line)
    return {"systems": len(catalog.names())}, []


# =============================================================================
# parser
# =============================================================================

def _add_system_args(parser: argparse.ArgumentParser) -> None:
    parser.add_argument("--system", help="named system (see `systems list`)")
    parser.add_argument("--n", type=int, help="steps per octave")
    parser.add_argument("--q", type=int, help="fifth")
    parser.add_argument("--t", type=int, help="major third")
    parser.add_argument("--s", type=int, help="minor third")


def _leaf(group, name: str, handler: Callable, command: str, help_text: str) -> argparse.ArgumentParser:
    parser = group.add_parser(name, help=help_text, description=help_text)
    parser.set_defaults(handler=handler, command=command, parser=parser)
    return parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="tonnetz-lab",
        description="Pythagorean tunings, harmonic systems and Tonnetz graph analysis.",
    )
    parser.add_argument("--catalog", help="override file for named systems (default: config/harmonic_systems.json)")
    groups = parser.add_subparsers(dest="group", required=True)

    # tune
    tune = groups.add_parser("tune", help="tuning systems").add_subparsers(dest="action", required=True)
    p = _leaf(tune, "scan", cmd_tune_scan, "tune scan", "rank (p, u, n) by comma")
    p.add_argument("--max-p", type=int, default=20, help="exclusive bound on p (default: 20)")
    p.add_argument("--max-n", type=int, default=30)
    p.add_argument("--max-u", type=int, default=10)
    p.add_argument("--limit", type=int, default=10, help="rows printed in the text table")
    p.add_argument("--progress", action="store_true", help="show a progress bar on stderr")
    p.add_argument("--json", help="report file ('-' for stdout)")

    p = _leaf(tune, "scale", cmd_tune_scale, "tune scale", "interval table of one scale")
    p.add_argument("--p", type=int, required=True)
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--lowest-power", type=int, default=None)
    p.add_argument("--json", help="report file ('-' for stdout)")

    # harmony
    harmony = groups.add_parser("harmony", help="harmonic systems").add_subparsers(dest="action", required=True)
    p = _leaf(harmony, "solve", cmd_harmony_solve, "harmony solve", "solve t + s = q, t - s = delta")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--delta", type=int, default=None, help="omit to list every branch")
    p.add_argument("--json", help="report file ('-' for stdout)")

    p = _leaf(harmony, "chords", cmd_harmony_chords, "harmony chords", "list every chord of a system")
    _add_system_args(p)
    p.add_argument("--json", help="report file ('-' for stdout)")

    # tonnetz
    tonnetz = groups.add_parser("tonnetz", help="Tonnetz graphs").add_subparsers(dest="action", required=True)
    p = _leaf(tonnetz, "build", cmd_tonnetz_build, "tonnetz build", "build a Tonnetz graph")
    _add_system_args(p)
    p.add_argument("--set-level", action="store_true", help="keep only two-common-tone offsets")
    p.add_argument("--dot", help="DOT output file")
    p.add_argument("--json", help="report file ('-' for stdout)")

    p = _leaf(tonnetz, "table", cmd_tonnetz_table, "tonnetz table", "P/L/R neighbours of every chord")
    _add_system_args(p)

    p = _leaf(tonnetz, "walk", cmd_tonnetz_walk, "tonnetz walk", "apply a P/L/R word from a chord")
    _add_system_args(p)
    p.add_argument("--start", required=True, help="start chord, e.g. D0 or M8")
    p.add_argument("--word", required=True, help="word such as 'PR' or 'L R (P R)^4'")

    p = _leaf(tonnetz, "analyze", cmd_tonnetz_analyze, "tonnetz analyze", "full invariant report")
    _add_system_args(p)
    p.add_argument("--dot", help="DOT output file of the functional graph")
    p.add_argument("--json", help="report file ('-' for stdout)")

    # config
    config = groups.add_parser("config", help="configuration checks").add_subparsers(dest="action", required=True)
    p = _leaf(config, "check", cmd_config_check, "config check", "n_3 configuration verdict")
    _add_system_args(p)
    p.add_argument("--json", help="report file ('-' for stdout)")

    # census
    census = groups.add_parser("census", help="configuration census").add_subparsers(dest="action", required=True)
    p = _leaf(census, "cyclic-103", cmd_census, "census cyclic-103", "brute-force cyclic 10_3 census")
    p.add_argument("--json", help="report file ('-' for stdout)")

    # systems
    systems = groups.add_parser("systems", help="named systems").add_subparsers(dest="action", required=True)
    _leaf(systems, "list", cmd_systems_list, "systems list", "list named systems")

    return parser


def _parameters(args: argparse.Namespace) -> dict:
    skip = {"handler", "parser", "command", "group", "action"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def run(argv: Optional[list[str]] = None) -> int:
    load_project_env()
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as e:
        return e.code if isinstance(e.code, int) else EXIT_USAGE

    command = args.command
    parameters = _parameters(args)
    try:
        summary, outputs = args.handler(args)
    except SystemExit as e:
        code = e.code if isinstance(e.code, int) else EXIT_USAGE
        log_execution(command, parameters, {}, [], error=f"usage error (exit {code})")
        return code
    except (DegenerateSystemError, DegenerateChordError, DegenerateScaleError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        log_execution(command, parameters, {}, [], error=str(e))
        return EXIT_DEGENERATE
    except (DomainError, UnsupportedSizeError) as e:
        print(f"[ERROR] {e}", file=sys.stderr)
        log_execution(command, parameters, {}, [], error=str(e))
        return EXIT_USAGE

    log_execution(command, parameters, summary, outputs)
    return EXIT_OK


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
