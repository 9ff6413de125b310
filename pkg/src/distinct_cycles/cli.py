"""Command-line front end.

Exit codes: 0 success, 1 a verification check failed, 2 bad usage or
parameters.  Reports go to stdout as JSON (default) or key/value CSV.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
from pathlib import Path
from typing import Optional, Sequence

from . import __version__
from .builder import export_edgelist, read_edgelist
from .catalog import (
    CHORDED_KINDS,
    Params,
    catalog_segments,
    classify,
    family_bounds,
    family_index,
    index_ranges,
    iter_subgraphs,
    validate_params,
)
from .errors import DistinctCyclesError, OutOfRange, ParamError
from .ledger import (
    LedgerEntry,
    bound_report,
    build_ledger,
    count_totals,
    count_totals_enumerated,
    cycle_rank_by_subgraph,
    expected_entry_count,
    reconcile_n_t,
    shi_bound,
    table_fidelity,
)
from .oracle import (
    DEFAULT_CYCLE_CAP,
    enumerate_cycles,
    has_distinct_cycle_lengths,
    max_edges_distinct_cycles,
)

REPORT_SCHEMA = "distinct-cycles/report"
REPORT_VERSION = 1
OUTPUT_ENV = "DISTINCT_CYCLES_OUT"

EXIT_OK, EXIT_FAILED, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _params(args) -> Params:
    return validate_params(r=args.r, t=args.t, n=args.n, mode=args.mode,
                           relaxed=args.relaxed)


def _flatten(prefix: str, value, rows: list) -> None:
    if isinstance(value, dict):
        for k, v in value.items():
            _flatten(f"{prefix}.{k}" if prefix else str(k), v, rows)
    elif isinstance(value, list) and value and isinstance(value[0], (dict, list)):
        for i, v in enumerate(value):
            _flatten(f"{prefix}.{i}", v, rows)
    elif isinstance(value, list):
        rows.append((prefix, " ".join(str(v) for v in value)))
    else:
        rows.append((prefix, value))


def _emit(report: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    report = {"schema": REPORT_SCHEMA, "version": REPORT_VERSION, **report}
    if fmt == "csv":
        rows: list = []
        _flatten("", report, rows)
        writer = csv.writer(out, lineterminator="\n")
        writer.writerow(["key", "value"])
        writer.writerows(rows)
    else:
        json.dump(report, out, indent=2)
        out.write("\n")


def _params_dict(p: Params) -> dict:
    return {"r": p.r, "t": p.t, "n": p.n, "n_t": p.n_t, "mode": p.mode,
            "relaxed": p.relaxed, "tail_length": p.tail_length}


def cmd_catalog(args) -> int:
    p = _params(args)
    counts: dict[str, int] = {}
    for desc in iter_subgraphs(p):
        counts[desc.kind.value] = counts.get(desc.kind.value, 0) + 1
    t = p.t
    families = {}
    for kind in CHORDED_KINDS:
        lo, hi = family_bounds(t)[kind]
        families[kind.value] = {"param_first": lo, "param_last": hi,
                                "index_first": family_index(kind, lo, t),
                                "index_last": family_index(kind, hi, t)}
    report = {
        "command": "catalog",
        "params": _params_dict(p),
        "descriptors": sum(counts.values()),
        "descriptors_claimed": 24 * t + 7993,
        "by_kind": counts,
        "ranges": [{"first": lo, "last": hi} for lo, hi in index_ranges(t)],
        "segments": [{"first": f, "last": l, "step": s} for f, l, s in catalog_segments(t)],
        "families": families,
    }
    _emit(report, args.format)
    return EXIT_OK


def cmd_verify(args) -> int:
    p = _params(args)
    extra = [LedgerEntry(length, -1, ("injected", "injected")) for length in args.extra_cycle]
    ledger = build_ledger(p, extra)
    if args.ledger_out:
        text = ledger.to_csv() if args.format == "csv" else ledger.to_json()
        Path(args.ledger_out).write_text(text)
    totals = count_totals(p)
    walked = count_totals_enumerated(p)
    gain = 36 * p.t - (2 if p.mode == "simple" else 0)
    rank = cycle_rank_by_subgraph(p)
    fidelity = [table_fidelity(kind).to_dict() for kind in CHORDED_KINDS]
    checks = {
        "ledger_distinct": ledger.is_distinct,
        "entry_count": len(ledger.entries) == expected_entry_count(p) + len(extra),
        "edge_gain": totals.excess == gain,
        "vertices_equal_n": totals.vertices == p.n,
        "totals_agree": totals == walked,
        "cycle_rank": totals.cycle_rank == rank,
    }
    report = {
        "command": "verify",
        "params": _params_dict(p),
        "ledger": {
            "verdict": ledger.verdict,
            "entries": len(ledger.entries),
            "entries_expected": expected_entry_count(p) + len(extra),
            "collisions": [{"length": length, "sources": list(src)}
                           for length, src in ledger.collisions],
        },
        "totals": {"vertices": totals.vertices, "edges": totals.edges,
                   "edges_minus_vertices": totals.excess, "cycle_rank": totals.cycle_rank,
                   "components": totals.components},
        "claimed": {"edges": p.claimed_edges, "edge_gain": 36 * p.t, "n_t": p.n_t},
        "computed": {"edges": totals.edges, "edge_gain": totals.excess,
                     "cycle_rank_by_subgraph": rank},
        "n_t_reconciliation": reconcile_n_t(p.t),
        "bounds": bound_report(p).to_dict(),
        "table_fidelity": fidelity,
        "checks": checks,
        "verified": all(checks.values()),
    }
    _emit(report, args.format)
    return EXIT_OK if report["verified"] else EXIT_FAILED


def _default_output(p: Params, args) -> Path:
    base = Path(os.environ.get(OUTPUT_ENV, "."))
    tag = "full" if args.full else "-".join(str(i) for i in sorted(set(args.subgraph)))
    return base / f"g_t{p.t}_{p.mode}_{tag}.txt"


def cmd_export(args) -> int:
    p = _params(args)
    if args.full == bool(args.subgraph):
        raise UsageError("give either --full or one or more --subgraph")
    indices = None
    if args.subgraph:
        listed = {i for f, l, s in catalog_segments(p.t) for i in args.subgraph
                  if f <= i <= l and (i - f) % s == 0}
        missing = sorted(set(args.subgraph) - listed)
        if missing:
            raise UsageError(f"not a listed subgraph index: {missing}")
        indices = sorted(set(args.subgraph))
        for i in indices:
            if classify(i, p).is_formal:
                raise UsageError(f"B_{i} is a formal entry with no simple-graph realisation")
    path = Path(args.output) if args.output else _default_output(p, args)
    path.parent.mkdir(parents=True, exist_ok=True)
    summary = export_edgelist(p, path, indices)
    payload = json.loads(summary.to_json())
    payload.update({"path": str(path), "t": p.t, "n": p.n, "mode": p.mode,
                    "subgraphs": "all" if indices is None else indices})
    print(json.dumps(payload, indent=2))
    return EXIT_OK


_FIXTURES = {
    "triangle": (3, [(0, 1), (1, 2), (0, 2)]),
    "k4": (4, [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]),
    "bowtie34": (6, [(0, 1), (1, 2), (0, 2), (0, 3), (3, 4), (4, 5), (0, 5)]),
}


def cmd_oracle(args) -> int:
    if args.fn is not None:
        result = max_edges_distinct_cycles(args.fn, args.budget)
        report = {"command": "oracle", "extremal": result.to_dict()}
        if args.fn >= 3:
            shi = shi_bound(args.fn)
            report["shi_bound"] = shi
            report["shi_finding"] = (None if shi <= result.max_edges else
                                     f"stated Shi bound {shi} exceeds exhaustive "
                                     f"f({args.fn}) = {result.max_edges}")
        _emit(report, args.format)
        return EXIT_OK
    if args.input:
        graph, meta = read_edgelist(args.input)
        source = str(args.input)
    elif args.fixture:
        from .builder import Graph

        n, edges = _FIXTURES[args.fixture]
        graph, meta, source = Graph(n, edges), {}, f"fixture:{args.fixture}"
    else:
        raise UsageError("give --input, --fixture or --fn")
    spectrum = enumerate_cycles(graph, args.cap)
    verdict = has_distinct_cycle_lengths(graph, args.cap)
    report = {"command": "oracle", "source": source,
              "vertices": graph.vertex_count, "edges": graph.edge_count,
              "spectrum": spectrum.to_dict(), **verdict.to_dict()}
    _emit(report, args.format)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="distinct-cycles",
        description="Build and audit a graph whose cycles all have distinct lengths.")
    parser.add_argument("--version", action="version", version=__version__)
    sub = parser.add_subparsers(dest="command", required=True)

    def construction(sp, formats=("json", "csv")):
        grp = sp.add_mutually_exclusive_group(required=True)
        grp.add_argument("--r", type=int, help="t = 1260r + 169")
        grp.add_argument("--t", type=int)
        sp.add_argument("--n", type=int, help="vertex budget (default n_t)")
        sp.add_argument("--mode", choices=("strict", "simple"), default="strict")
        sp.add_argument("--relaxed", action="store_true",
                        help="accept any odd t >= 801 passing the range checks")
        sp.add_argument("--format", choices=formats, default=formats[0])

    sp = sub.add_parser("catalog", help="descriptor counts and index ranges")
    construction(sp)
    sp.set_defaults(func=cmd_catalog)

    sp = sub.add_parser("verify", help="ledger, totals, bounds and table audit")
    construction(sp)
    sp.add_argument("--extra-cycle", type=int, action="append", default=[],
                    metavar="LENGTH", help="inject a synthetic cycle (audit fixture)")
    sp.add_argument("--ledger-out", help="also write the full ledger here")
    sp.set_defaults(func=cmd_verify)

    sp = sub.add_parser("export", help="stream the edge list to a file")
    construction(sp, formats=("edgelist",))
    sp.add_argument("--subgraph", type=int, action="append", default=[], metavar="INDEX")
    sp.add_argument("--full", action="store_true")
    sp.add_argument("--output", "-o", help=f"file path (default under ${OUTPUT_ENV} or .)")
    sp.set_defaults(func=cmd_export)

    sp = sub.add_parser("oracle", help="enumerate cycles or search f(n) exhaustively")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("--input", help="edge-list file")
    src.add_argument("--fixture", choices=sorted(_FIXTURES))
    src.add_argument("--fn", type=int, metavar="N", help="exhaustive f(N), 3 <= N <= 8")
    sp.add_argument("--cap", type=int, default=DEFAULT_CYCLE_CAP)
    sp.add_argument("--budget", type=int, help="max property checks for --fn")
    sp.add_argument("--format", choices=("json", "csv"), default="json")
    sp.set_defaults(func=cmd_oracle)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParamError, OutOfRange, UsageError) as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DistinctCyclesError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_FAILED


if __name__ == "__main__":
    sys.exit(main())
