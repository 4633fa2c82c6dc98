"""Corpus ingestion: manifest parsing, HTML stripping, occurrence files.

A corpus is declared by one JSON manifest; document text lives in plain
UTF-8 files next to it (or under TERMFLUX_DATA_DIR). HTML files are
stripped to text at load time so every downstream offset refers to the
cleaned text.
"""

from __future__ import annotations

import json
import os
import re
from html.parser import HTMLParser
from pathlib import Path
from typing import Sequence

from .model import Corpus, Document, Occurrence, TermfluxError, make_corpus

_HTML_SUFFIXES = {".html", ".htm", ".xhtml"}

# elements whose content never reaches the text
_SKIP_ELEMENTS = {"script", "style", "head", "title"}

# elements that terminate a text line
_BLOCK_ELEMENTS = {
    "address", "article", "aside", "blockquote", "br", "caption", "dd",
    "div", "dl", "dt", "fieldset", "figcaption", "figure", "footer",
    "form", "h1", "h2", "h3", "h4", "h5", "h6", "header", "hr", "li",
    "main", "nav", "ol", "p", "pre", "section", "table", "td", "th",
    "tr", "ul",
}

_DATE_RE = re.compile(r"^(\d{4})-(\d{2})$")


class _TextExtractor(HTMLParser):
    def __init__(self) -> None:
        super().__init__(convert_charrefs=True)
        self.parts: list[str] = []
        self._skip_depth = 0

    def handle_starttag(self, tag: str, attrs) -> None:
        if tag in _SKIP_ELEMENTS:
            self._skip_depth += 1
        elif tag in _BLOCK_ELEMENTS:
            self._break()

    def handle_endtag(self, tag: str) -> None:
        if tag in _SKIP_ELEMENTS:
            self._skip_depth = max(0, self._skip_depth - 1)
        elif tag in _BLOCK_ELEMENTS:
            self._break()

    def handle_data(self, data: str) -> None:
        if self._skip_depth == 0 and data:
            self.parts.append(data)

    def _break(self) -> None:
        if self.parts and not self.parts[-1].endswith("\n"):
            self.parts.append("\n")

    def text(self) -> str:
        return "".join(self.parts)


def strip_html(data: bytes) -> str:
    """Drop tags, scripts and styles; decode entities; blocks end lines."""
    try:
        raw = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise TermfluxError(f"document is not valid UTF-8: {exc}") from None
    parser = _TextExtractor()
    parser.feed(raw)
    parser.close()
    return parser.text()


def parse_date(value: str) -> tuple[int, int]:
    m = _DATE_RE.match(value)
    if not m:
        raise TermfluxError(f"bad date {value!r}; expected YYYY-MM")
    year, month = int(m.group(1)), int(m.group(2))
    if not 1 <= month <= 12:
        raise TermfluxError(f"bad date {value!r}; month out of range")
    return year, month


def format_date(date: tuple[int, int] | None) -> str | None:
    if date is None:
        return None
    return f"{date[0]:04d}-{date[1]:02d}"


def _load_text(path: Path) -> str:
    try:
        data = path.read_bytes()
    except OSError as exc:
        raise TermfluxError(f"cannot read document file {path}: {exc}") from None
    if path.suffix.lower() in _HTML_SUFFIXES:
        return strip_html(data)
    try:
        return data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise TermfluxError(f"{path} is not valid UTF-8: {exc}") from None


def load_manifest(path: str | Path) -> Corpus:
    """Load a corpus manifest and every document text it references.

    Relative document paths resolve against TERMFLUX_DATA_DIR when set,
    else against the manifest's own directory.
    """
    manifest_path = Path(path)
    try:
        with open(manifest_path, encoding="utf-8") as fh:
            manifest = json.load(fh)
    except OSError as exc:
        raise TermfluxError(f"cannot read manifest {manifest_path}: {exc}") from None
    except json.JSONDecodeError as exc:
        raise TermfluxError(f"{manifest_path}: bad JSON: {exc}") from None

    if not isinstance(manifest, dict) or "documents" not in manifest:
        raise TermfluxError(f"{manifest_path}: manifest needs a documents list")
    corpus_id = manifest.get("id") or manifest_path.stem

    data_root = os.environ.get("TERMFLUX_DATA_DIR")
    root = Path(data_root) if data_root else manifest_path.parent

    documents = []
    for entry in manifest["documents"]:
        if not isinstance(entry, dict) or "id" not in entry or "path" not in entry:
            raise TermfluxError(
                f"{manifest_path}: each document needs at least id and path"
            )
        doc_path = Path(entry["path"])
        if not doc_path.is_absolute():
            doc_path = root / doc_path
        date = None
        if entry.get("date") is not None:
            date = parse_date(entry["date"])
        documents.append(
            Document(
                id=entry["id"],
                text=_load_text(doc_path),
                date=date,
                category=entry.get("category"),
                domain=entry.get("domain", ""),
                language=entry.get("language", ""),
                domain_fast_evolving=bool(entry.get("domain_fast_evolving", False)),
            )
        )
    return make_corpus(corpus_id, documents)


def write_occurrences(path: str | Path, occurrences: Sequence[Occurrence]) -> None:
    """One JSON object per line: doc, term, form, pos, text."""
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        for occ in occurrences:
            fh.write(
                json.dumps(
                    {
                        "doc": occ.document,
                        "term": occ.term,
                        "form": occ.form,
                        "pos": occ.pos,
                        "text": occ.matched_text,
                    },
                    ensure_ascii=False,
                    sort_keys=True,
                )
                + "\n"
            )


def load_occurrences(path: str | Path) -> list[Occurrence]:
    occurrences = []
    try:
        fh = open(path, encoding="utf-8")
    except OSError as exc:
        raise TermfluxError(f"cannot read occurrences {path}: {exc}") from None
    with fh:
        for line_no, line in enumerate(fh, start=1):
            line = line.strip()
            if not line:
                continue
            try:
                obj = json.loads(line)
                occurrences.append(
                    Occurrence(
                        document=obj["doc"],
                        term=obj["term"],
                        form=obj["form"],
                        pos=obj["pos"],
                        matched_text=obj["text"],
                    )
                )
            except (json.JSONDecodeError, KeyError, TypeError) as exc:
                raise TermfluxError(f"{path}:{line_no}: bad occurrence: {exc}") from None
    return occurrences
