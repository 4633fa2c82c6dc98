"""Shared statistics pipeline behind both the CLI and the HTTP service.

Every report is first assembled as a plain-JSON payload (floats kept
raw, NA as null) and all text renderings derive from that payload, so
two callers that feed the same inputs get byte-identical output no
matter which entry point they used.
"""

from __future__ import annotations

import csv
import io
import json
from dataclasses import replace
from pathlib import Path
from typing import Sequence

from .anaphora import (
    aggregate,
    document_density,
    lowess,
    presence_rates,
    trees_for_document,
)
from .annotations import AnnotationState
from .chrono import ChronoCorpus, census, chrono_records, paired_density
from .classify import judge_occurrences
from .inventory import TermEntry
from .lattice import build_lattice, is_admissible_3complex
from .model import Corpus, Occurrence, TermfluxError, make_corpus
from .scanner import TermFamily, build_family

ANA_CSV_COLUMNS = [
    "corpus", "category", "FP", "ANA_FP", "CATA_FP", "delta", "Delta",
    "d_m", "delta_minus", "Delta_minus", "d_minus", "f",
]
CHRONO_CSV_COLUMNS = ["term", "t_bar", "r_bar", "xi", "full_count", "reduced_count"]
CENSUS_CSV_COLUMNS = ["corpus", "t", "r", "occurrences_t", "occurrences_r"]
DENSITY_CSV_COLUMNS = ["grid_time", "density_full", "density_reduced"]
TREND_CSV_COLUMNS = ["category", "x", "y", "fitted"]

_METRIC_KEYS = ("d_m", "d_minus", "f", "delta", "Delta", "delta_minus", "Delta_minus")


def fmt_number(value: float | int | None) -> str:
    """Render a numeric cell: NA for undefined, 6 decimals trimmed."""
    if value is None:
        return "NA"
    if isinstance(value, int):
        return str(value)
    s = f"{value:.6f}".rstrip("0").rstrip(".")
    if s in ("", "-0"):
        return "0"
    return s


def build_families(
    entries: Sequence[TermEntry],
    include_expansion_only: bool = False,
    admissible_only: bool = False,
) -> list[TermFamily]:
    families = []
    for entry in entries:
        if admissible_only and not is_admissible_3complex(entry.term):
            continue
        families.append(build_family(entry, include_expansion_only))
    return families


def annotated_corpus(corpus: Corpus, state: AnnotationState) -> Corpus:
    """Only documents validated as in-domain, with expert categories."""
    docs = []
    for doc in corpus.documents:
        verdict = state.verdict_of(doc.id)
        if verdict is None or not verdict.in_domain:
            continue
        docs.append(replace(doc, category=verdict.category, validated=True))
    return make_corpus(corpus.id, docs)


def filter_occurrences(
    occurrences: Sequence[Occurrence],
    corpus: Corpus,
    state: AnnotationState | None,
    *,
    for_anaphora: bool,
) -> list[Occurrence]:
    """Drop rejected candidates and occurrences of excluded documents.

    not_a_variant disqualifies an occurrence everywhere; a
    lexical_reduction label keeps it out of the anaphora statistics
    but still counts for chronology, classification and the census.
    """
    ids = {d.id for d in corpus.documents}
    kept = []
    for occ in occurrences:
        if occ.document not in ids:
            continue
        if state is not None:
            label = state.label_of(occ.id)
            if label == "not_a_variant":
                continue
            if for_anaphora and label == "lexical_reduction":
                continue
        kept.append(occ)
    return kept


def _category_key(category: int | None) -> tuple[int, int]:
    return (1, 0) if category is None else (0, category)


def _categories(corpus: Corpus) -> list[int | None]:
    return sorted({d.category for d in corpus.documents}, key=_category_key)


def _category_cell(category: int | None) -> str:
    return "unknown" if category is None else str(category)


def ana_stats(
    corpus: Corpus,
    occurrences: Sequence[Occurrence],
    state: AnnotationState | None = None,
) -> dict:
    if state is not None:
        corpus = annotated_corpus(corpus, state)
    occs = filter_occurrences(occurrences, corpus, state, for_anaphora=True)
    rows = []
    for category in _categories(corpus):
        agg = aggregate(corpus, occs, category)
        row = {
            "category": category,
            "document_count": agg.document_count,
            "FP": agg.FP,
            "ANA": agg.ANA,
            "CATA": agg.CATA,
            "ana_fp_ratio": agg.ana_fp_ratio,
            "cata_fp_ratio": agg.cata_fp_ratio,
        }
        for key in _METRIC_KEYS:
            row[key] = getattr(agg.metrics, key)
        rows.append(row)
    if corpus.documents:
        ra, rca = presence_rates(corpus, occs)
    else:
        ra = rca = None
    return {
        "kind": "ana",
        "corpus": corpus.id,
        "document_count": len(corpus.documents),
        "ra_pct": ra,
        "rca_pct": rca,
        "rows": rows,
    }


def ana_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(ANA_CSV_COLUMNS)
    for row in payload["rows"]:
        writer.writerow(
            [
                payload["corpus"],
                _category_cell(row["category"]),
                fmt_number(row["FP"]),
                fmt_number(row["ana_fp_ratio"]),
                fmt_number(row["cata_fp_ratio"]),
                fmt_number(row["delta"]),
                fmt_number(row["Delta"]),
                fmt_number(row["d_m"]),
                fmt_number(row["delta_minus"]),
                fmt_number(row["Delta_minus"]),
                fmt_number(row["d_minus"]),
                fmt_number(row["f"]),
            ]
        )
    return buf.getvalue()


def chrono_stats(
    corpus: Corpus,
    occurrences: Sequence[Occurrence],
    state: AnnotationState | None = None,
    N: int = 100,
) -> dict:
    if state is not None:
        corpus = annotated_corpus(corpus, state)
    records = []
    if corpus.documents:
        occs = filter_occurrences(occurrences, corpus, state, for_anaphora=False)
        chrono = ChronoCorpus(corpus)
        for rec in chrono_records(chrono, occs, N):
            records.append(
                {
                    "term": rec.term,
                    "t_bar": rec.t_bar,
                    "r_bar": rec.r_bar,
                    "xi": rec.xi,
                    "full_count": rec.full_count,
                    "reduced_count": rec.reduced_count,
                }
            )
    return {
        "kind": "chrono",
        "corpus": corpus.id,
        "document_count": len(corpus.documents),
        "N": N,
        "records": records,
    }


def chrono_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CHRONO_CSV_COLUMNS)
    for rec in payload["records"]:
        writer.writerow(
            [
                rec["term"],
                fmt_number(rec["t_bar"]),
                fmt_number(rec["r_bar"]),
                fmt_number(rec["xi"]),
                fmt_number(rec["full_count"]),
                fmt_number(rec["reduced_count"]),
            ]
        )
    return buf.getvalue()


def census_stats(
    corpus: Corpus,
    occurrences: Sequence[Occurrence],
    entries: Sequence[TermEntry],
    state: AnnotationState | None = None,
) -> dict:
    if state is not None:
        corpus = annotated_corpus(corpus, state)
    occs = filter_occurrences(occurrences, corpus, state, for_anaphora=False)
    result = census(occs, [e.term for e in entries])
    return {
        "kind": "census",
        "corpus": corpus.id,
        "t": result.terms_full,
        "r": result.reduced_forms,
        "occurrences_t": result.occurrences_full,
        "occurrences_r": result.occurrences_reduced,
    }


def census_csv(payload: dict) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CENSUS_CSV_COLUMNS)
    writer.writerow(
        [
            payload["corpus"],
            str(payload["t"]),
            str(payload["r"]),
            str(payload["occurrences_t"]),
            str(payload["occurrences_r"]),
        ]
    )
    return buf.getvalue()


def density_csv(
    corpus: Corpus,
    occurrences: Sequence[Occurrence],
    state: AnnotationState | None = None,
    grid_points: int = 512,
) -> str:
    if state is not None:
        corpus = annotated_corpus(corpus, state)
    occs = filter_occurrences(occurrences, corpus, state, for_anaphora=False)
    chrono = ChronoCorpus(corpus)
    full_times = sorted(chrono.t_star(o) for o in occs if o.is_full)
    reduced_times = sorted(chrono.t_star(o) for o in occs if not o.is_full)
    grid, dens_full, dens_reduced = paired_density(
        full_times, reduced_times, grid_points
    )
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(DENSITY_CSV_COLUMNS)
    for g, df, dr in zip(grid, dens_full, dens_reduced):
        writer.writerow([fmt_number(g), fmt_number(df), fmt_number(dr)])
    return buf.getvalue()


def trend_csv(
    corpus: Corpus,
    occurrences: Sequence[Occurrence],
    state: AnnotationState | None = None,
    fraction: float = 2.0 / 3.0,
    iterations: int = 3,
) -> str:
    """Per-category LOWESS of the per-document ANA/FP ratio.

    x is the document datation when the whole corpus is dated, else the
    document's index within its category.
    """
    if state is not None:
        corpus = annotated_corpus(corpus, state)
    occs = filter_occurrences(occurrences, corpus, state, for_anaphora=True)
    by_doc: dict[str, list[Occurrence]] = {}
    for occ in occs:
        by_doc.setdefault(occ.document, []).append(occ)

    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(TREND_CSV_COLUMNS)
    dated = corpus.all_dated
    for category in _categories(corpus):
        xs: list[float] = []
        ys: list[float] = []
        for index, doc in enumerate(
            d for d in corpus.documents if d.category == category
        ):
            trees = trees_for_document(by_doc.get(doc.id, []))
            ratio = document_density(doc, trees).ana_fp_ratio
            if ratio is None:
                continue
            x = (
                doc.date[0] + (doc.date[1] - 1) / 12.0
                if dated
                else float(index)
            )
            xs.append(x)
            ys.append(ratio)
        if not xs:
            continue
        fitted = lowess(xs, ys, fraction, iterations) if len(xs) >= 2 else ys
        for x, y, fit in zip(xs, ys, fitted):
            writer.writerow(
                [
                    _category_cell(category),
                    fmt_number(x),
                    fmt_number(y),
                    fmt_number(float(fit)),
                ]
            )
    return buf.getvalue()


def classify_jsonl(
    corpus: Corpus,
    occurrences: Sequence[Occurrence],
    state: AnnotationState | None = None,
) -> str:
    if state is not None:
        corpus = annotated_corpus(corpus, state)
    occs = filter_occurrences(occurrences, corpus, state, for_anaphora=False)
    lines = []
    for item in judge_occurrences(corpus, occs):
        j = item.judgment
        lines.append(
            json.dumps(
                {
                    "document": item.document,
                    "term": item.term,
                    "form": item.form,
                    "shape": j.shape,
                    "order": j.order,
                    "category": j.category,
                    "domain_fast_evolving": j.domain_fast_evolving,
                    "label": j.label,
                    "rule": j.rule_fired,
                },
                ensure_ascii=False,
                sort_keys=True,
            )
        )
    return "".join(line + "\n" for line in lines)


def lattice_payload(entries: Sequence[TermEntry], include_expansion_only: bool = False) -> dict:
    terms = {}
    for entry in entries:
        lat = build_lattice(entry.term, include_expansion_only)
        terms[entry.term.id] = {
            "nodes": list(lat.nodes),
            "edges": [list(edge) for edge in lat.edges],
            "surfaces": dict(lat.surfaces),
            "admissible_3complex": is_admissible_3complex(entry.term),
        }
    return {"kind": "lattice", "terms": terms}


def save_report(path: str | Path, payload: dict) -> None:
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(report_json(payload))


def report_json(payload: dict) -> str:
    return json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2) + "\n"


def load_report(path: str | Path) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise TermfluxError(f"cannot read report {path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise TermfluxError(f"{path}: bad JSON: {exc}") from None
    if not isinstance(payload, dict) or "kind" not in payload:
        raise TermfluxError(f"{path}: not a termflux report (missing kind)")
    return payload


_CSV_RENDERERS = {"ana": ana_csv, "chrono": chrono_csv, "census": census_csv}


def report_csv(payload: dict) -> str:
    kind = payload.get("kind")
    renderer = _CSV_RENDERERS.get(kind)
    if renderer is None:
        raise TermfluxError(f"no CSV rendering for report kind {kind!r}")
    return renderer(payload)
