"""Append-only annotation log and its replayed state.

Every expert action is one JSON object on its own line: a document
verdict (domain membership + category) or an occurrence label. The log
is never rewritten; the effective state is obtained by replaying it in
order, latest record per target winning. This keeps the store diffable
and the statistics reproducible from the log alone.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, Sequence

from .model import TermfluxError

OCCURRENCE_LABELS = frozenset(
    {
        "full",
        "anaphoric_reduction",
        "cataphoric_reduction",
        "lexical_reduction",
        "not_a_variant",
    }
)

_DOC_CATEGORIES = (1, 2, 3)


@dataclass(frozen=True)
class DocumentVerdict:
    in_domain: bool
    category: int


@dataclass(frozen=True)
class AnnotationRecord:
    """One log line; exactly one of the two verdict kinds is set."""

    target: str
    annotator: str
    timestamp: str
    document_verdict: DocumentVerdict | None = None
    occurrence_label: str | None = None

    def __post_init__(self) -> None:
        if (self.document_verdict is None) == (self.occurrence_label is None):
            raise TermfluxError(
                "annotation record needs exactly one verdict kind"
            )
        if self.occurrence_label is not None:
            if self.occurrence_label not in OCCURRENCE_LABELS:
                raise TermfluxError(
                    f"unknown occurrence label: {self.occurrence_label!r}"
                )
        else:
            verdict = self.document_verdict
            if verdict.category not in _DOC_CATEGORIES:
                raise TermfluxError(f"bad document category: {verdict.category!r}")

    @property
    def is_document(self) -> bool:
        return self.document_verdict is not None

    def to_json(self) -> dict:
        if self.document_verdict is not None:
            verdict: dict = {
                "in_domain": self.document_verdict.in_domain,
                "category": self.document_verdict.category,
            }
        else:
            verdict = {"label": self.occurrence_label}
        return {
            "target": self.target,
            "verdict": verdict,
            "annotator": self.annotator,
            "timestamp": self.timestamp,
        }


def record_from_json(obj: dict) -> AnnotationRecord:
    try:
        target = obj["target"]
        verdict = obj["verdict"]
        annotator = obj["annotator"]
        timestamp = obj["timestamp"]
    except (KeyError, TypeError) as exc:
        raise TermfluxError(f"malformed annotation record: missing {exc}") from None
    if not isinstance(verdict, dict):
        raise TermfluxError("annotation verdict must be an object")
    if "label" in verdict:
        return AnnotationRecord(
            target=target,
            annotator=annotator,
            timestamp=timestamp,
            occurrence_label=verdict["label"],
        )
    if "in_domain" in verdict and "category" in verdict:
        if not isinstance(verdict["in_domain"], bool):
            raise TermfluxError("in_domain must be a boolean")
        return AnnotationRecord(
            target=target,
            annotator=annotator,
            timestamp=timestamp,
            document_verdict=DocumentVerdict(
                in_domain=verdict["in_domain"], category=verdict["category"]
            ),
        )
    raise TermfluxError(
        "annotation verdict needs either a label or in_domain + category"
    )


def append_record(path: str | Path, record: AnnotationRecord) -> None:
    line = json.dumps(record.to_json(), ensure_ascii=False, sort_keys=True)
    with open(path, "a", encoding="utf-8", newline="\n") as fh:
        fh.write(line + "\n")


def load_log(path: str | Path) -> list[AnnotationRecord]:
    """Read every record in log order; a missing file is an empty log."""
    p = Path(path)
    if not p.exists():
        return []
    records = []
    with open(p, encoding="utf-8") as fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
            except json.JSONDecodeError as exc:
                raise TermfluxError(f"{p}:{line_no}: bad JSON: {exc}") from None
            records.append(record_from_json(obj))
    return records


class AnnotationState:
    """Latest-wins view of a record sequence."""

    def __init__(self, records: Iterable[AnnotationRecord] = ()) -> None:
        self.document_verdicts: dict[str, DocumentVerdict] = {}
        self.occurrence_labels: dict[str, str] = {}
        for record in records:
            self.apply(record)

    def apply(self, record: AnnotationRecord) -> None:
        if record.document_verdict is not None:
            self.document_verdicts[record.target] = record.document_verdict
        else:
            self.occurrence_labels[record.target] = record.occurrence_label

    @classmethod
    def from_log(cls, path: str | Path) -> "AnnotationState":
        return cls(load_log(path))

    def label_of(self, occurrence_id: str) -> str | None:
        return self.occurrence_labels.get(occurrence_id)

    def verdict_of(self, doc_id: str) -> DocumentVerdict | None:
        return self.document_verdicts.get(doc_id)


def latest_records(records: Sequence[AnnotationRecord]) -> dict[str, AnnotationRecord]:
    """Last record per target, in log order."""
    latest: dict[str, AnnotationRecord] = {}
    for record in records:
        latest[record.target] = record
    return latest
