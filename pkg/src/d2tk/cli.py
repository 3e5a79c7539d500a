"""Command-line front end: analyze, detect, discharge, color, falsify, gen."""

from __future__ import annotations

import argparse
import json
import os
import sys
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

from . import catalog, color, discharge, gen
from .analysis import GraphAnalysis
from .errors import D2Error, PaletteExceeded, UnsupportedDelta
from .planegraph import PlaneGraph, dump_rotg, parse_rotg

EXIT_OK, EXIT_VIOLATION, EXIT_USAGE = 0, 1, 2
DEFAULT_FINDINGS = "findings"


class UsageError(D2Error):
    pass


def _load(path: str) -> PlaneGraph:
    if path == "-":
        return parse_rotg(sys.stdin.read())
    try:
        text = Path(path).read_text(encoding="utf-8")
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    return parse_rotg(text)


def _delta(g: PlaneGraph, choice: str) -> int:
    delta = g.max_degree if choice == "auto" else int(choice)
    if delta not in catalog.CATALOG:
        raise UnsupportedDelta(f"Δ={delta} is outside 6..8")
    return delta


# subcommands


def cmd_analyze(args: argparse.Namespace) -> int:
    g = _load(args.file)
    delta = None if args.delta == "auto" else int(args.delta)
    a = GraphAnalysis(g, delta)
    print("vertex degree m3 m4 t d2 class")
    for v in g.vertices:
        print(a.profile(v).line())
    return EXIT_OK


def cmd_detect(args: argparse.Namespace) -> int:
    g = _load(args.file)
    found = catalog.detect(g, _delta(g, args.delta))
    if args.json:
        print(json.dumps([c.as_dict() for c in found], indent=1))
    else:
        for c in found:
            print(c.line())
    return EXIT_OK


def cmd_discharge(args: argparse.Namespace) -> int:
    g = _load(args.file)
    ledger = discharge.apply_rules(g, discharge.rule_set(_delta(g, args.delta)))
    fmt = discharge.format_charge
    print("kind id initial final")
    for (kind, ident), start in sorted(ledger.initial.items()):
        print(f"{kind} {ident} {fmt(start)} {fmt(ledger.final[(kind, ident)])}")
    if args.transfers:
        print("rule source target amount")
        for t in ledger.transfers:
            print(f"{t.rule} {t.source[0]}{t.source[1]} {t.target[0]}{t.target[1]} {fmt(t.amount)}")
    print(f"total initial={fmt(ledger.total_initial())} final={fmt(ledger.total_final())}")
    return EXIT_OK


def cmd_color(args: argparse.Namespace) -> int:
    g = _load(args.file)
    try:
        if args.method == "constructive":
            cert = color.color_constructive(g)
        elif args.method == "exact":
            cert = color.exact_chi2(g)[1]
        else:
            cert = color.greedy(g, args.order)
    except PaletteExceeded as exc:
        print(f"error: {exc}", file=sys.stderr)
        for step in exc.trace:
            print(step.line(), file=sys.stderr)
        return EXIT_VIOLATION
    for v, c in cert.assignment.items():
        print(f"{v} {c}")
    print(f"palette={cert.palette_size} bound={2 * g.max_degree + 7} method={cert.method}")
    if args.trace:
        for step in cert.trace:
            print(f"trace {step.line()}")
    return EXIT_OK if cert.valid else EXIT_VIOLATION


# falsify


@dataclass
class GraphRecord:
    graph_id: int
    n: int
    m: int
    delta: int
    detections: int
    certificates_passed: int
    negative: int
    palette: int
    failures: list[str] = field(default_factory=list)
    rotg: str = ""

    def line(self) -> str:
        status = "ok" if not self.failures else "FAIL " + "; ".join(self.failures)
        return (f"graph {self.graph_id} n={self.n} m={self.m} delta={self.delta} "
                f"detections={self.detections} certified={self.certificates_passed}/{self.detections} "
                f"negative={self.negative} palette={self.palette}/{2 * self.delta + 7} {status}")


@dataclass
class RunReport:
    seed: int
    records: list[GraphRecord]

    @property
    def failed(self) -> list[GraphRecord]:
        return [r for r in self.records if r.failures]

    @property
    def exit_status(self) -> int:
        return EXIT_VIOLATION if self.failed else EXIT_OK

    def text(self) -> str:
        lines = [r.line() for r in sorted(self.records, key=lambda r: r.graph_id)]
        total = len(self.records)
        lines.append(f"summary seed={self.seed} graphs={total} passed={total - len(self.failed)} "
                     f"failed={len(self.failed)}")
        return "\n".join(lines) + "\n"


def check_graph(graph_id: int, g: PlaneGraph) -> GraphRecord:
    """Run every falsification check on one graph."""
    delta = g.max_degree
    failures: list[str] = []
    ledger = discharge.apply_rules(g, discharge.rule_set(delta))
    if not ledger.total_initial() == ledger.total_final() == -8:
        failures.append(f"charge total {ledger.total_initial()} -> {ledger.total_final()}")
    negative = len(discharge.negativity_report(ledger))
    found = catalog.detect(g, delta)
    if not found:
        failures.append("no configuration" + (" despite negative charge" if negative else ""))
    passed = 0
    for c in found:
        cert = catalog.certify(g, c)
        if cert.passed:
            passed += 1
        else:
            failures.append(f"certificate {c.id}@{c.center} {cert}")
    palette = 0
    try:
        cc = color.color_constructive(g)
        palette = cc.palette_size
        if not cc.valid:
            failures.append("invalid colouring")
    except PaletteExceeded as exc:
        failures.append(f"palette exceeded: {exc}")
    return GraphRecord(graph_id, g.n, g.m, delta, len(found), passed, negative, palette,
                       failures, dump_rotg(g) if failures else "")


def _check_job(job: tuple[int, str]) -> GraphRecord:
    graph_id, text = job
    return check_graph(graph_id, parse_rotg(text))


def falsify(seed: int, count: int, n: int, keep: float, workers: int = 1) -> RunReport:
    spec = gen.GenSpec(seed, n, "subsampled" if keep < 1 else "triangulation",
                       frozenset(catalog.CATALOG), keep, balance=True)
    jobs = [(i, dump_rotg(g)) for i, g in enumerate(gen.stream(spec, count))]
    if workers > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            records = list(pool.map(_check_job, jobs))
    else:
        records = [_check_job(job) for job in jobs]
    return RunReport(seed, sorted(records, key=lambda r: r.graph_id))


def write_findings(report: RunReport, directory: Path) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    written = []
    for r in report.failed:
        stem = directory / f"seed{report.seed}-graph{r.graph_id}"
        stem.with_suffix(".rotg").write_text(r.rotg, encoding="utf-8")
        stem.with_suffix(".txt").write_text(r.line() + "\n", encoding="utf-8")
        written.append(stem.with_suffix(".rotg"))
    return written


def cmd_falsify(args: argparse.Namespace) -> int:
    start = time.perf_counter()
    report = falsify(args.seed, args.count, args.n, args.keep, args.workers)
    sys.stdout.write(report.text())
    if report.failed:
        where = Path(os.environ.get("D2TK_FINDINGS_DIR", DEFAULT_FINDINGS))
        for path in write_findings(report, where):
            print(f"finding {path}", file=sys.stderr)
    if args.timing:
        print(f"elapsed {time.perf_counter() - start:.2f}s", file=sys.stderr)
    return report.exit_status


def cmd_gen(args: argparse.Namespace) -> int:
    deltas = frozenset(int(d) for d in args.delta.split(",")) if args.delta else None
    spec = gen.GenSpec(args.seed, args.n, args.mode, deltas, args.keep, balance=args.balance)
    for i, g in enumerate(gen.stream(spec, args.count)):
        if args.count > 1:
            print(f"# graph {i}")
        sys.stdout.write(dump_rotg(g))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="d2tk", description="2-distance colouring toolkit for plane graphs")
    sub = parser.add_subparsers(dest="command", required=True)
    delta_choices = ["auto", "6", "7", "8"]

    p = sub.add_parser("analyze", help="per-vertex profile table")
    p.add_argument("file")
    p.add_argument("--delta", default="auto", choices=delta_choices)
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("detect", help="list reducible configurations")
    p.add_argument("file")
    p.add_argument("--delta", default="auto", choices=delta_choices)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_detect)

    p = sub.add_parser("discharge", help="apply a discharging rule set")
    p.add_argument("file")
    p.add_argument("--delta", default="auto", choices=delta_choices)
    p.add_argument("--transfers", action="store_true")
    p.set_defaults(func=cmd_discharge)

    p = sub.add_parser("color", help="2-distance colouring")
    p.add_argument("file")
    p.add_argument("--method", default="constructive", choices=["constructive", "exact", "greedy"])
    p.add_argument("--order", default="degeneracy", choices=list(color.GREEDY_ORDERS))
    p.add_argument("--trace", action="store_true")
    p.set_defaults(func=cmd_color)

    p = sub.add_parser("falsify", help="check every invariant on generated graphs")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--n", type=int, default=60)
    p.add_argument("--keep", type=float, default=0.85)
    p.add_argument("--workers", type=int, default=1)
    p.add_argument("--timing", action="store_true")
    p.set_defaults(func=cmd_falsify)

    p = sub.add_parser("gen", help="generate graphs as ROTG")
    p.add_argument("--seed", type=int, default=1)
    p.add_argument("--n", type=int, default=30)
    p.add_argument("--mode", default="triangulation")
    p.add_argument("--keep", type=float, default=1.0)
    p.add_argument("--delta", default="", help="comma-separated acceptable Δ values")
    p.add_argument("--count", type=int, default=1)
    p.add_argument("--balance", action="store_true")
    p.set_defaults(func=cmd_gen)
    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except D2Error as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
