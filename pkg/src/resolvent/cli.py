"""Command-line front end: ``resolvent solve|scan|verify``.

The report goes to stdout; diagnostics go to stderr. Exit codes are a
stable contract:

    0 success, 2 parse/usage error, 3 disconnected input,
    4 unsupported size, 5 theorem failure
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import logging
import os
import sys
import time
from collections import Counter
from dataclasses import dataclass, field
from multiprocessing import Pool
from typing import Any, Callable, Iterable, Iterator, Optional, Sequence

from . import corpus, invariants, metric
from .errors import (
    BadParams,
    CapacityExceeded,
    Disconnected,
    GraphError,
    ParseError,
    ResolventError,
    UnsupportedSize,
)
from .graph import Graph, all_pairs_distances, twin_pairs

log = logging.getLogger("resolvent")

SCHEMA_VERSION = "1"
EXIT_OK, EXIT_PARSE, EXIT_DISCONNECTED, EXIT_SIZE, EXIT_THEOREM = 0, 2, 3, 4, 5
CHUNK_MASKS = 1 << 14
CHUNK_LINES = 2000

SOLVE_FIELDS = [
    "index", "graph", "n", "edge_count", "beta", "res", "bas", "k", "is_randomly_k",
    "sample_basis", "non_resolving_set", "non_resolving_pair", "all_bases_count",
]
VERDICT_FIELDS = ["index", "theorem_id", "graph", "status", "reason", "counterexample"]


def exit_code_for(exc: BaseException) -> int:
    if isinstance(exc, (CapacityExceeded, UnsupportedSize)):
        return EXIT_SIZE
    if isinstance(exc, Disconnected):
        return EXIT_DISCONNECTED
    if isinstance(exc, (ParseError, GraphError, BadParams, OSError)):
        return EXIT_PARSE
    return 1


# ---------------------------------------------------------------- serialisation

def solve_row(report: metric.SolveReport, graph_id: str, index: int) -> dict[str, Any]:
    witness = report.non_resolving_witness
    return {
        "index": index,
        "graph": graph_id,
        "n": report.n,
        "edge_count": report.edge_count,
        "beta": report.beta,
        "res": report.res,
        "bas": report.bas,
        "k": report.k,
        "is_randomly_k": report.is_randomly_k,
        "sample_basis": list(report.sample_basis) if report.sample_basis is not None else None,
        "non_resolving_set": list(witness[0]) if witness else None,
        "non_resolving_pair": list(witness[1]) if witness else None,
        "all_bases_count": report.all_bases_count,
    }


def verdict_row(v: invariants.TheoremVerdict, index: int) -> dict[str, Any]:
    return {
        "index": index,
        "theorem_id": v.theorem_id,
        "graph": v.graph_id,
        "status": v.status,
        "reason": v.reason,
        "counterexample": v.counterexample,
    }


def _cell(value: Any) -> str:
    if value is None:
        return ""
    if isinstance(value, bool):
        return "true" if value else "false"
    if isinstance(value, (list, dict)):
        return json.dumps(value, separators=(",", ":"))
    return str(value)


def render(report: dict[str, Any], fmt: str) -> str:
    if fmt == "json":
        return json.dumps(report, indent=2) + "\n"
    fields = SOLVE_FIELDS if report["command"] in ("solve", "scan") else VERDICT_FIELDS
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(fields)
        for row in report["results"]:
            w.writerow([_cell(row.get(f)) for f in fields])
        return buf.getvalue()
    if fmt == "plain":
        lines = [f"# {report['command']} (schema {report['schema_version']})"]
        for key, value in report["inputs"].items():
            lines.append(f"# input {key}: {_cell(value)}")
        for row in report["results"]:
            lines.append(" ".join(f"{f}={_cell(row.get(f)) or '-'}" for f in fields))
        lines.append("# summary")
        lines.extend(_plain_summary(report["summary"]))
        lines.append("# timing")
        for key, value in report["timing"].items():
            lines.append(f"{key}: {value:.3f}")
        return "\n".join(lines) + "\n"
    raise BadParams(f"unknown format {fmt!r}")


def _plain_summary(summary: dict[str, Any], prefix: str = "") -> list[str]:
    out = []
    for key, value in summary.items():
        if isinstance(value, dict):
            out.extend(_plain_summary(value, f"{prefix}{key}."))
        else:
            out.append(f"{prefix}{key}: {_cell(value)}")
    return out


def make_report(command: str, inputs: dict, results: list, summary: dict, wall: float) -> dict[str, Any]:
    return {
        "schema_version": SCHEMA_VERSION,
        "command": command,
        "inputs": inputs,
        "results": results,
        "summary": summary,
        "timing": {"wall_seconds": wall},
    }


# ---------------------------------------------------------------- work units

@dataclass(frozen=True)
class Chunk:
    """A slice of the corpus a worker can rebuild on its own: either a mask
    range of the exhaustive enumeration or a batch of graph6 lines."""

    n: int = 0
    start: int = 0
    stop: int = 0
    lines: tuple[str, ...] = ()

    def graphs(self) -> Iterator[tuple[str, Graph]]:
        if self.lines:
            for line in self.lines:
                yield line, corpus.parse_graph6(line)
        else:
            for _, adj in corpus.connected_masks(self.n, self.start, self.stop):
                g = Graph(self.n, adj)
                yield corpus.emit_graph6(g), g


def enumeration_chunks(ns: Iterable[int]) -> Iterator[Chunk]:
    for n in ns:
        total = corpus.mask_space(n)
        for start in range(0, total, CHUNK_MASKS):
            yield Chunk(n=n, start=start, stop=min(total, start + CHUNK_MASKS))


def line_chunks(lines: Iterable[str]) -> Iterator[Chunk]:
    batch: list[str] = []
    for line in lines:
        line = line.strip()
        if not line or line.startswith(">>graph6<<") and len(line) == 10:
            continue
        batch.append(line)
        if len(batch) == CHUNK_LINES:
            yield Chunk(lines=tuple(batch))
            batch = []
    if batch:
        yield Chunk(lines=tuple(batch))


def parallel_map(fn: Callable, items: Iterable, jobs: int) -> Iterator:
    """Ordered map; results come back in input order whatever ``jobs`` is."""
    if jobs <= 1:
        yield from map(fn, items)
        return
    with Pool(jobs) as pool:
        yield from pool.imap(fn, items)


@dataclass(frozen=True)
class ScanFilter:
    randk: bool = False
    beta: Optional[int] = None
    res: Optional[int] = None
    twins: Optional[bool] = None

    def matches(self, g: Graph) -> bool:
        if self.twins is not None and bool(twin_pairs(g)) != self.twins:
            return False
        if not (self.randk or self.beta is not None or self.res is not None):
            return True
        dm = all_pairs_distances(g)
        res = metric.resolving_number(dm).res
        if self.res is not None and res != self.res:
            return False
        if self.randk and not metric.randomly_k_status(dm, res)[0]:
            return False
        if self.beta is not None and metric.metric_dimension(dm, upper=res).value != self.beta:
            return False
        return True


@dataclass
class ScanTask:
    flt: ScanFilter
    compute: frozenset = metric.ALL_QUANTITIES

    def __call__(self, chunk: Chunk) -> tuple[int, list[tuple[str, metric.SolveReport]]]:
        seen = 0
        hits = []
        for gid, g in chunk.graphs():
            seen += 1
            if self.flt.matches(g):
                hits.append((gid, metric.solve(g, self.compute)))
        return seen, hits


@dataclass
class VerifyTask:
    fail_fast: bool = True
    keep: str = "failures"

    def __call__(self, chunk: Chunk) -> invariants.SuiteResult:
        records = (corpus.GraphRecord(g, "enumeration", name=gid) for gid, g in chunk.graphs())
        return invariants.run_suite(records, keep=self.keep, fail_fast=self.fail_fast)


# ---------------------------------------------------------------- commands

def parse_range(text: str) -> list[int]:
    """``"7"`` or ``"1..7"`` (inclusive)."""
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            lo_i, hi_i = int(lo), int(hi)
        else:
            lo_i = hi_i = int(text)
    except ValueError:
        raise BadParams(f"bad vertex-count range {text!r}") from None
    if lo_i > hi_i:
        raise BadParams(f"empty range {text!r}")
    return list(range(lo_i, hi_i + 1))


def _input_records(args: argparse.Namespace) -> list[corpus.GraphRecord]:
    records = [corpus.generate_from_spec(spec) for spec in args.gen or ()]
    if args.file:
        records.extend(corpus.read_graphs(args.file))
    if not args.gen and not args.file:
        records.extend(corpus.read_graphs(sys.stdin))
    return records


def cmd_solve(args: argparse.Namespace) -> tuple[dict, int]:
    t0 = time.perf_counter()
    compute = {q for q in ("beta", "res", "bas", "randk") if getattr(args, f"want_{q}")}
    if args.all or not compute:
        compute = set(metric.ALL_QUANTITIES)
    records = _input_records(args)
    results = []
    for idx, rec in enumerate(records):
        results.append(solve_row(metric.solve(rec.graph, compute), rec.id, idx))
    summary = {
        "graphs": len(results),
        "randomly_k": sum(1 for r in results if r["is_randomly_k"]),
    }
    inputs = {
        "gen": list(args.gen or []),
        "file": args.file,
        "compute": sorted(compute),
    }
    return make_report("solve", inputs, results, summary, time.perf_counter() - t0), EXIT_OK


def _corpus_chunks(args: argparse.Namespace) -> tuple[Iterator[Chunk], dict]:
    if args.n is not None:
        ns = parse_range(args.n)
        for n in ns:
            corpus.mask_space(n)  # fail fast on unsupported sizes
        return enumeration_chunks(ns), {"n": ns}
    if args.file:
        src = sys.stdin if args.file == "-" else open(args.file, encoding="ascii")
        text = src.read()
        if src is not sys.stdin:
            src.close()
        lines = text.splitlines()
        nonblank = [ln for ln in lines if ln.strip()]
        if nonblank and nonblank[0].strip().isdigit():
            # a single edge-list graph; ship it as graph6
            g = corpus.parse_edge_list(text)
            lines = [corpus.emit_graph6(g)]
        return line_chunks(lines), {"file": args.file}
    if getattr(args, "gen", None):
        lines = [corpus.emit_graph6(corpus.generate_from_spec(s).graph) for s in args.gen]
        return line_chunks(lines), {"gen": list(args.gen)}
    raise BadParams("give --n or --file")


def cmd_scan(args: argparse.Namespace) -> tuple[dict, int]:
    t0 = time.perf_counter()
    flt = ScanFilter(randk=args.randk, beta=args.beta, res=args.res, twins=args.twins)
    chunks, inputs = _corpus_chunks(args)
    inputs.update({"randk": flt.randk, "beta": flt.beta, "res": flt.res, "twins": flt.twins})
    results = []
    scanned = 0
    cells: Counter = Counter()
    for seen, hits in parallel_map(ScanTask(flt), chunks, args.jobs):
        for gid, rep in hits:
            results.append(solve_row(rep, gid, len(results)))
            cells[f"{rep.beta},{rep.res}"] += 1
        scanned += seen
        log.info("scanned %d graphs, %d matches", scanned, len(results))
    summary = {
        "scanned": scanned,
        "matches": len(results),
        "beta_res_cells": dict(sorted(cells.items())),
    }
    return make_report("scan", inputs, results, summary, time.perf_counter() - t0), EXIT_OK


def cmd_verify(args: argparse.Namespace) -> tuple[dict, int]:
    t0 = time.perf_counter()
    chunks, inputs = _corpus_chunks(args)
    keep = "all" if args.all_verdicts else "failures"
    inputs.update({"keep_going": args.keep_going, "all_verdicts": args.all_verdicts})
    task = VerifyTask(fail_fast=not args.keep_going, keep=keep)
    summary = invariants.SuiteSummary()
    kept: list[invariants.TheoremVerdict] = []
    stream = parallel_map(task, chunks, args.jobs)
    for part in stream:
        summary.merge(part.summary)
        kept.extend(part.verdicts)
        log.info("verified %d graphs, %d failures", summary.graphs, summary.failures)
        if part.summary.failures and not args.keep_going:
            stream.close()
            break
    results = [verdict_row(v, i) for i, v in enumerate(kept)]
    out_summary = {
        "graphs": summary.graphs,
        "skipped_disconnected": summary.skipped_disconnected,
        "failures": summary.failures,
        "theorems": summary.table(),
        "vacuous_reasons": {t: dict(sorted(c.items())) for t, c in summary.vacuous_reasons.items()},
    }
    code = EXIT_THEOREM if summary.failures else EXIT_OK
    return make_report("verify", inputs, results, out_summary, time.perf_counter() - t0), code


def default_jobs() -> int:
    env = os.environ.get("RESOLVENT_JOBS")
    if env:
        try:
            return max(1, int(env))
        except ValueError:
            log.warning("ignoring non-integer RESOLVENT_JOBS=%r", env)
    return os.cpu_count() or 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="resolvent", description=__doc__.splitlines()[0])
    parser.add_argument("-v", "--verbose", action="store_true", help="progress on stderr")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p: argparse.ArgumentParser) -> None:
        p.add_argument("--format", choices=("json", "csv", "plain"), default="json")
        p.add_argument("--jobs", type=int, default=None, help="worker processes (default: $RESOLVENT_JOBS or CPU count)")
        p.add_argument("--file", help="graph6 or edge-list file, '-' for stdin")
        p.add_argument("--gen", action="append", metavar="SPEC", help="generator, e.g. cycle:7 or random:8:0.4:seed42")

    p = sub.add_parser("solve", help="compute beta, res, bas and the randomly-k flag")
    common(p)
    p.add_argument("--all", action="store_true", help="compute everything (default)")
    p.add_argument("--beta", dest="want_beta", action="store_true")
    p.add_argument("--res", dest="want_res", action="store_true")
    p.add_argument("--bas", dest="want_bas", action="store_true")
    p.add_argument("--randk", dest="want_randk", action="store_true")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("scan", help="filter a corpus by invariants")
    common(p)
    p.add_argument("--n", help="exhaustive enumeration size, N or LO..HI (<= 7)")
    p.add_argument("--randk", action="store_true", help="keep randomly k-dimensional graphs")
    p.add_argument("--beta", type=int, help="keep graphs with this metric dimension")
    p.add_argument("--res", type=int, help="keep graphs with this resolving number")
    tw = p.add_mutually_exclusive_group()
    tw.add_argument("--twins", dest="twins", action="store_const", const=True, default=None)
    tw.add_argument("--no-twins", dest="twins", action="store_const", const=False)
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("verify", help="run the theorem suite")
    common(p)
    p.add_argument("--n", help="exhaustive enumeration sizes, N or LO..HI (<= 7)")
    p.add_argument("--keep-going", action="store_true", help="do not stop at the first failing graph")
    p.add_argument("--all-verdicts", action="store_true", help="report every verdict, not just failures")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv: Optional[Sequence[str]] = None, stdout: Optional[io.TextIOBase] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(name)s: %(message)s", stream=sys.stderr)
    if args.jobs is None:
        args.jobs = default_jobs()
    out = stdout if stdout is not None else sys.stdout
    try:
        report, code = args.func(args)
        out.write(render(report, args.format))
    except ResolventError as exc:
        print(f"resolvent: {type(exc).__name__}: {exc}", file=sys.stderr)
        return exit_code_for(exc)
    except OSError as exc:
        print(f"resolvent: {exc}", file=sys.stderr)
        return EXIT_PARSE
    return code


if __name__ == "__main__":
    sys.exit(main())
