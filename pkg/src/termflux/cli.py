"""Command-line entry points.

Subcommands: scan, ana-stats, chrono-stats, lattice, classify, census,
serve, export. All outputs are UTF-8 and deterministic for fixed input
files, so reruns are byte-identical.
"""

from __future__ import annotations

import argparse
import random
import sys
from pathlib import Path

from . import pipeline
from .annotations import AnnotationState
from .corpus_io import load_manifest, load_occurrences, write_occurrences
from .inventory import load_inventory
from .model import TermfluxError
from .scanner import scan_corpus


def _write_text(path: str, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _state(args: argparse.Namespace) -> AnnotationState | None:
    if getattr(args, "annotations", None):
        return AnnotationState.from_log(args.annotations)
    return None


def cmd_scan(args: argparse.Namespace) -> int:
    corpus = load_manifest(args.corpus)
    entries = load_inventory(args.terms)
    families = pipeline.build_families(
        entries, args.expansion_only, args.admissible_only
    )
    occurrences = scan_corpus(corpus, families)
    write_occurrences(args.out, occurrences)
    return 0


def cmd_ana_stats(args: argparse.Namespace) -> int:
    corpus = load_manifest(args.corpus)
    occurrences = load_occurrences(args.occurrences)
    state = _state(args)
    payload = pipeline.ana_stats(corpus, occurrences, state)
    _write_text(args.out, pipeline.ana_csv(payload))
    if args.json_out:
        pipeline.save_report(args.json_out, payload)
    if args.trend_out:
        _write_text(
            args.trend_out,
            pipeline.trend_csv(
                corpus,
                occurrences,
                state,
                fraction=args.lowess_frac,
                iterations=args.lowess_iterations,
            ),
        )
    return 0


def cmd_chrono_stats(args: argparse.Namespace) -> int:
    corpus = load_manifest(args.corpus)
    occurrences = load_occurrences(args.occurrences)
    state = _state(args)
    payload = pipeline.chrono_stats(corpus, occurrences, state, N=args.N)
    _write_text(args.out, pipeline.chrono_csv(payload))
    if args.json_out:
        pipeline.save_report(args.json_out, payload)
    if args.density_out:
        _write_text(
            args.density_out, pipeline.density_csv(corpus, occurrences, state)
        )
    return 0


def cmd_lattice(args: argparse.Namespace) -> int:
    entries = load_inventory(args.terms)
    if args.term:
        entries = [e for e in entries if e.term.id == args.term]
        if not entries:
            raise TermfluxError(f"term not in inventory: {args.term!r}")
    payload = pipeline.lattice_payload(entries, args.expansion_only)
    text = pipeline.report_json(payload)
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_classify(args: argparse.Namespace) -> int:
    corpus = load_manifest(args.corpus)
    occurrences = load_occurrences(args.occurrences)
    _write_text(
        args.out, pipeline.classify_jsonl(corpus, occurrences, _state(args))
    )
    return 0


def cmd_census(args: argparse.Namespace) -> int:
    corpus = load_manifest(args.corpus)
    entries = load_inventory(args.terms)
    occurrences = load_occurrences(args.occurrences)
    payload = pipeline.census_stats(corpus, occurrences, entries, _state(args))
    text = pipeline.census_csv(payload)
    if args.out:
        _write_text(args.out, text)
    else:
        sys.stdout.write(text)
    return 0


def cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service import create_app

    corpus = load_manifest(args.corpus)
    entries = load_inventory(args.terms)
    frontend = args.frontend
    if frontend is None:
        # repo checkout layout: src/termflux/cli.py -> ../../frontend/dist
        bundled = Path(__file__).resolve().parents[2] / "frontend" / "dist"
        frontend = bundled if bundled.is_dir() else None
    app = create_app(
        corpus,
        entries,
        args.annotations,
        include_expansion_only=args.expansion_only,
        admissible_only=args.admissible_only,
        frontend_dir=frontend,
    )
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def cmd_export(args: argparse.Namespace) -> int:
    payload = pipeline.load_report(args.report)
    if args.format == "csv":
        _write_text(args.out, pipeline.report_csv(payload))
    else:
        _write_text(args.out, pipeline.report_json(payload))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="termflux",
        description="Reduction statistics for complex terms in specialized corpora.",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--seed", type=int, default=None, help="seed for any sampling step"
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("scan", parents=[common], help="locate term occurrences")
    p.add_argument("--corpus", required=True, help="corpus manifest (JSON)")
    p.add_argument("--terms", required=True, help="term inventory file")
    p.add_argument("--out", required=True, help="occurrences output (JSONL)")
    p.add_argument("--expansion-only", action="store_true",
                   help="also match head-dropping expansion forms")
    p.add_argument("--admissible-only", action="store_true",
                   help="restrict to admissible 3-complex terms")
    p.set_defaults(func=cmd_scan)

    p = sub.add_parser("ana-stats", parents=[common],
                       help="anaphoric-tree statistics per category")
    p.add_argument("--corpus", required=True)
    p.add_argument("--occurrences", required=True)
    p.add_argument("--out", required=True, help="stats CSV output")
    p.add_argument("--annotations", default=None, help="annotation log (JSONL)")
    p.add_argument("--json-out", default=None, help="also save the JSON report")
    p.add_argument("--trend-out", default=None, help="LOWESS trend CSV output")
    p.add_argument("--lowess-frac", type=float, default=2.0 / 3.0)
    p.add_argument("--lowess-iterations", type=int, default=3)
    p.set_defaults(func=cmd_ana_stats)

    p = sub.add_parser("chrono-stats", parents=[common],
                       help="term-lifecycle chronology statistics")
    p.add_argument("--corpus", required=True)
    p.add_argument("--occurrences", required=True)
    p.add_argument("--out", required=True, help="chrono CSV output")
    p.add_argument("--N", type=int, default=100, help="onset occurrence cap")
    p.add_argument("--annotations", default=None)
    p.add_argument("--json-out", default=None)
    p.add_argument("--density-out", default=None,
                   help="full/reduced time-density CSV output")
    p.set_defaults(func=cmd_chrono_stats)

    p = sub.add_parser("lattice", parents=[common],
                       help="reduction lattices for inventory terms")
    p.add_argument("--terms", required=True)
    p.add_argument("--term", default=None, help="restrict to one term id")
    p.add_argument("--out", default=None, help="JSON output (default stdout)")
    p.add_argument("--expansion-only", action="store_true")
    p.set_defaults(func=cmd_lattice)

    p = sub.add_parser("classify", parents=[common],
                       help="rule-based reduction judgments")
    p.add_argument("--corpus", required=True)
    p.add_argument("--occurrences", required=True)
    p.add_argument("--out", required=True, help="judgments output (JSONL)")
    p.add_argument("--annotations", default=None)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("census", parents=[common],
                       help="3-complex term census counts")
    p.add_argument("--corpus", required=True)
    p.add_argument("--terms", required=True)
    p.add_argument("--occurrences", required=True)
    p.add_argument("--annotations", default=None)
    p.add_argument("--out", default=None, help="CSV output (default stdout)")
    p.set_defaults(func=cmd_census)

    p = sub.add_parser("serve", parents=[common], help="run the annotation service")
    p.add_argument("--corpus", required=True)
    p.add_argument("--terms", required=True)
    p.add_argument("--annotations", required=True, help="annotation log path")
    p.add_argument("--port", type=int, default=8765)
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--expansion-only", action="store_true")
    p.add_argument("--admissible-only", action="store_true")
    p.add_argument("--frontend", default=None, help="static UI directory")
    p.set_defaults(func=cmd_serve)

    p = sub.add_parser("export", parents=[common],
                       help="re-render a saved JSON report")
    p.add_argument("--report", required=True, help="JSON report path")
    p.add_argument("--format", choices=("csv", "json"), required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(func=cmd_export)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.seed is not None:
        random.seed(args.seed)
    try:
        return args.func(args)
    except TermfluxError as exc:
        print(f"termflux: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
