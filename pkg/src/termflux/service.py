"""HTTP JSON API for the expert annotation workflow.

The corpus and the scanned occurrence index are immutable after
startup; every request reads the annotation log fresh, so concurrent
readers always see a consistent latest-wins snapshot. Writes are
serialized through one lock and appended to the log, never rewriting
history. Statistics endpoints delegate to the same pipeline as the
batch CLI, which keeps the two byte-identical on equal inputs.
"""

from __future__ import annotations

import threading
from datetime import datetime, timezone
from pathlib import Path
from typing import Sequence

from fastapi import Body, FastAPI, HTTPException, Query
from fastapi.responses import PlainTextResponse
from fastapi.staticfiles import StaticFiles

from . import pipeline
from .annotations import (
    AnnotationState,
    append_record,
    load_log,
    record_from_json,
)
from .corpus_io import format_date
from .inventory import TermEntry
from .model import Corpus, Document, Occurrence, TermfluxError, shape_from_signature
from .scanner import scan_corpus

API_PREFIX = "/api/v1"


def _span_payload(occ: Occurrence, state: AnnotationState) -> dict:
    return {
        "id": occ.id,
        "document": occ.document,
        "term": occ.term,
        "form": occ.form,
        "pos": occ.pos,
        "end": occ.pos + len(occ.matched_text),
        "surface": occ.matched_text,
        "shape": "full" if occ.is_full else shape_from_signature(occ.form),
        "label": state.label_of(occ.id),
    }


def _document_payload(doc: Document, state: AnnotationState, n_spans: int) -> dict:
    verdict = state.verdict_of(doc.id)
    return {
        "id": doc.id,
        "date": format_date(doc.date),
        "category": verdict.category if verdict else doc.category,
        "language": doc.language,
        "domain": doc.domain,
        "domain_fast_evolving": doc.domain_fast_evolving,
        "validated": verdict is not None,
        "in_domain": verdict.in_domain if verdict else None,
        "char_count": doc.char_count,
        "occurrence_count": n_spans,
    }


def create_app(
    corpus: Corpus,
    entries: Sequence[TermEntry],
    annotations_path: str | Path,
    *,
    include_expansion_only: bool = False,
    admissible_only: bool = False,
    frontend_dir: str | Path | None = None,
    N: int = 100,
) -> FastAPI:
    families = pipeline.build_families(
        entries, include_expansion_only, admissible_only
    )
    occurrences = scan_corpus(corpus, families)
    occ_by_id = {occ.id: occ for occ in occurrences}
    occ_by_doc: dict[str, list[Occurrence]] = {}
    for occ in occurrences:
        occ_by_doc.setdefault(occ.document, []).append(occ)
    doc_ids = {d.id for d in corpus.documents}
    log_path = Path(annotations_path)
    write_lock = threading.Lock()

    app = FastAPI(title="termflux annotation service")

    def current_state() -> AnnotationState:
        return AnnotationState(load_log(log_path))

    @app.get(API_PREFIX + "/documents")
    def list_documents() -> dict:
        state = current_state()
        return {
            "corpus": corpus.id,
            "documents": [
                _document_payload(d, state, len(occ_by_doc.get(d.id, [])))
                for d in corpus.documents
            ],
        }

    @app.get(API_PREFIX + "/documents/{doc_id}")
    def get_document(doc_id: str) -> dict:
        if doc_id not in doc_ids:
            raise HTTPException(status_code=404, detail=f"unknown document: {doc_id}")
        state = current_state()
        doc = corpus.document(doc_id)
        spans = [_span_payload(o, state) for o in occ_by_doc.get(doc_id, [])]
        payload = _document_payload(doc, state, len(spans))
        payload["text"] = doc.text
        payload["spans"] = spans
        return payload

    @app.get(API_PREFIX + "/occurrences")
    def list_occurrences(doc: str | None = Query(default=None)) -> dict:
        if doc is not None and doc not in doc_ids:
            raise HTTPException(status_code=404, detail=f"unknown document: {doc}")
        state = current_state()
        selected = occ_by_doc.get(doc, []) if doc is not None else occurrences
        return {"occurrences": [_span_payload(o, state) for o in selected]}

    @app.post(API_PREFIX + "/annotations", status_code=201)
    def post_annotation(body: dict = Body(...)) -> dict:
        if "timestamp" not in body:
            body = dict(body)
            body["timestamp"] = datetime.now(timezone.utc).isoformat(
                timespec="seconds"
            )
        try:
            record = record_from_json(body)
        except TermfluxError as exc:
            raise HTTPException(status_code=422, detail=str(exc)) from None
        if record.is_document:
            if record.target not in doc_ids:
                raise HTTPException(
                    status_code=409, detail=f"unknown document target: {record.target}"
                )
        elif record.target not in occ_by_id:
            raise HTTPException(
                status_code=409, detail=f"unknown occurrence target: {record.target}"
            )
        with write_lock:
            append_record(log_path, record)
        return record.to_json()

    @app.get(API_PREFIX + "/stats/ana")
    def stats_ana(format: str = Query(default="json")):
        payload = pipeline.ana_stats(corpus, occurrences, current_state())
        if format == "csv":
            return PlainTextResponse(
                pipeline.ana_csv(payload), media_type="text/csv; charset=utf-8"
            )
        if format != "json":
            raise HTTPException(status_code=422, detail=f"unknown format: {format}")
        return payload

    @app.get(API_PREFIX + "/stats/chrono")
    def stats_chrono(
        format: str = Query(default="json"), n: int = Query(default=N, alias="N")
    ):
        try:
            payload = pipeline.chrono_stats(
                corpus, occurrences, current_state(), N=n
            )
        except TermfluxError as exc:
            raise HTTPException(status_code=400, detail=str(exc)) from None
        if format == "csv":
            return PlainTextResponse(
                pipeline.chrono_csv(payload), media_type="text/csv; charset=utf-8"
            )
        if format != "json":
            raise HTTPException(status_code=422, detail=f"unknown format: {format}")
        return payload

    if frontend_dir is not None and Path(frontend_dir).is_dir():
        app.mount(
            "/", StaticFiles(directory=str(frontend_dir), html=True), name="ui"
        )
    return app
