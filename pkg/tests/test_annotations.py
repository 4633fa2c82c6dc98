from __future__ import annotations

import json

import pytest

from termflux.annotations import (
    OCCURRENCE_LABELS,
    AnnotationRecord,
    AnnotationState,
    DocumentVerdict,
    append_record,
    latest_records,
    load_log,
    record_from_json,
)
from termflux.model import TermfluxError


def doc_record(target="doc-1", in_domain=True, category=2, annotator="ab", ts="2026-01-01T10:00:00+00:00"):
    return AnnotationRecord(
        target=target,
        annotator=annotator,
        timestamp=ts,
        document_verdict=DocumentVerdict(in_domain=in_domain, category=category),
    )


def occ_record(target="doc-1::t::42", label="anaphoric_reduction", annotator="ab", ts="2026-01-01T10:00:00+00:00"):
    return AnnotationRecord(
        target=target, annotator=annotator, timestamp=ts, occurrence_label=label
    )


class TestRecord:
    def test_exactly_one_verdict_kind(self):
        with pytest.raises(TermfluxError, match="exactly one"):
            AnnotationRecord(target="x", annotator="a", timestamp="t")
        with pytest.raises(TermfluxError, match="exactly one"):
            AnnotationRecord(
                target="x",
                annotator="a",
                timestamp="t",
                document_verdict=DocumentVerdict(True, 1),
                occurrence_label="full",
            )

    @pytest.mark.parametrize("label", sorted(OCCURRENCE_LABELS))
    def test_known_labels_accepted(self, label):
        assert occ_record(label=label).occurrence_label == label

    def test_unknown_label_rejected(self):
        with pytest.raises(TermfluxError, match="unknown occurrence label"):
            occ_record(label="maybe")

    def test_category_range_enforced(self):
        with pytest.raises(TermfluxError, match="category"):
            doc_record(category=4)

    def test_kind_predicates(self):
        assert doc_record().is_document
        assert not occ_record().is_document

    def test_json_round_trip(self):
        for record in (doc_record(), occ_record()):
            assert record_from_json(record.to_json()) == record

    def test_wire_shape(self):
        obj = doc_record().to_json()
        assert sorted(obj) == ["annotator", "target", "timestamp", "verdict"]
        assert obj["verdict"] == {"in_domain": True, "category": 2}
        assert occ_record().to_json()["verdict"] == {"label": "anaphoric_reduction"}

    def test_malformed_json_rejected(self):
        with pytest.raises(TermfluxError, match="missing"):
            record_from_json({"target": "x"})
        with pytest.raises(TermfluxError, match="must be an object"):
            record_from_json(
                {"target": "x", "verdict": "full", "annotator": "a", "timestamp": "t"}
            )
        with pytest.raises(TermfluxError, match="either a label"):
            record_from_json(
                {"target": "x", "verdict": {}, "annotator": "a", "timestamp": "t"}
            )
        with pytest.raises(TermfluxError, match="boolean"):
            record_from_json(
                {
                    "target": "x",
                    "verdict": {"in_domain": "yes", "category": 1},
                    "annotator": "a",
                    "timestamp": "t",
                }
            )


class TestLog:
    def test_append_then_load(self, tmp_path):
        log = tmp_path / "ann.jsonl"
        records = [doc_record(), occ_record(), occ_record(label="not_a_variant", ts="T2")]
        for r in records:
            append_record(log, r)
        assert load_log(log) == records

    def test_log_is_one_json_object_per_line(self, tmp_path):
        log = tmp_path / "ann.jsonl"
        append_record(log, doc_record())
        append_record(log, occ_record())
        lines = log.read_text(encoding="utf-8").splitlines()
        assert len(lines) == 2
        for line in lines:
            json.loads(line)

    def test_append_never_rewrites(self, tmp_path):
        log = tmp_path / "ann.jsonl"
        append_record(log, doc_record())
        first = log.read_text(encoding="utf-8")
        append_record(log, occ_record())
        assert log.read_text(encoding="utf-8").startswith(first)

    def test_missing_file_is_empty_log(self, tmp_path):
        assert load_log(tmp_path / "absent.jsonl") == []

    def test_blank_lines_skipped(self, tmp_path):
        log = tmp_path / "ann.jsonl"
        append_record(log, doc_record())
        with open(log, "a", encoding="utf-8") as fh:
            fh.write("\n   \n")
        append_record(log, occ_record())
        assert len(load_log(log)) == 2

    def test_bad_json_line_reported_with_number(self, tmp_path):
        log = tmp_path / "ann.jsonl"
        append_record(log, doc_record())
        with open(log, "a", encoding="utf-8") as fh:
            fh.write("{not json\n")
        with pytest.raises(TermfluxError, match=r":2: bad JSON"):
            load_log(log)


class TestState:
    def test_latest_record_wins(self):
        state = AnnotationState(
            [
                occ_record(label="anaphoric_reduction", ts="T1"),
                doc_record(category=1, ts="T1"),
                occ_record(label="not_a_variant", ts="T2"),
                doc_record(category=3, in_domain=False, ts="T3"),
            ]
        )
        assert state.label_of("doc-1::t::42") == "not_a_variant"
        assert state.verdict_of("doc-1") == DocumentVerdict(in_domain=False, category=3)

    def test_unknown_targets_are_none(self):
        state = AnnotationState()
        assert state.label_of("nope") is None
        assert state.verdict_of("nope") is None

    def test_replay_equals_incremental_application(self, tmp_path):
        log = tmp_path / "ann.jsonl"
        records = [
            doc_record(target="d1", category=1),
            occ_record(target="d1::t::5", label="full"),
            doc_record(target="d1", category=2),
            occ_record(target="d1::t::5", label="lexical_reduction"),
            occ_record(target="d2::t::9", label="cataphoric_reduction"),
        ]
        incremental = AnnotationState()
        for r in records:
            append_record(log, r)
            incremental.apply(r)
        replayed = AnnotationState.from_log(log)
        assert replayed.document_verdicts == incremental.document_verdicts
        assert replayed.occurrence_labels == incremental.occurrence_labels

    def test_latest_records_maps_targets(self):
        records = [
            doc_record(target="d1", category=1, ts="T1"),
            doc_record(target="d1", category=3, ts="T2"),
            occ_record(target="o1", ts="T1"),
        ]
        latest = latest_records(records)
        assert set(latest) == {"d1", "o1"}
        assert latest["d1"].document_verdict.category == 3
