"""Locate full and reduced forms in document text with exact offsets.

Matching is token-based: text and pattern surfaces are case-folded and
split on whitespace/punctuation, so irregular spacing in the source never
matters, while every occurrence keeps the character offset and the exact
span of the original text. At a given position the longest form wins and
nothing nested inside the winning span is reported.
"""

from __future__ import annotations

from dataclasses import dataclass
import re

from .inventory import TermEntry
from .model import ComplexTerm, Corpus, Document, FULL_FORM, Occurrence
from .lattice import generate_reductions

_TOKEN_RE = re.compile(r"\w+")


@dataclass(frozen=True)
class Token:
    """A case-folded token with its offsets in the original text."""

    text: str
    start: int
    end: int


def normalize_stream(text: str) -> list[Token]:
    """Tokenize ``text``, case-folding but keeping original offsets."""
    return [
        Token(text=m.group().casefold(), start=m.start(), end=m.end())
        for m in _TOKEN_RE.finditer(text)
    ]


def _pattern(surface: str) -> tuple[str, ...]:
    return tuple(t.text for t in normalize_stream(surface))


@dataclass(frozen=True)
class TermFamily:
    """A term with every matchable surface: full form, reductions, aliases."""

    term: ComplexTerm
    patterns: tuple[tuple[str, tuple[str, ...]], ...]  # (form signature, tokens)


def build_family(entry: TermEntry, include_expansion_only: bool = False) -> TermFamily:
    """Compile the matchable surfaces for one inventory entry."""
    term = entry.term
    surfaces: list[tuple[str, str]] = [(FULL_FORM, term.surface)]
    for form in generate_reductions(term, include_expansion_only):
        surfaces.append((form.signature, form.surface))
    known = {sig for sig, _ in surfaces}
    for sig, aliases in entry.aliases.items():
        if sig not in known:
            # alias for a form outside the generated set (e.g. expansion-only
            # while the flag is off) is simply not matchable in this run
            continue
        for alias in aliases:
            surfaces.append((sig, alias))
    patterns = []
    seen: set[tuple[str, ...]] = set()
    for sig, surface in surfaces:
        tokens = _pattern(surface)
        if not tokens or tokens in seen:
            continue
        seen.add(tokens)
        patterns.append((sig, tokens))
    return TermFamily(term=term, patterns=tuple(patterns))


def scan(document: Document, family: TermFamily) -> list[Occurrence]:
    """All non-overlapping occurrences of the family, longest match first,
    sorted by position."""
    tokens = normalize_stream(document.text)
    by_first: dict[str, list[tuple[str, tuple[str, ...]]]] = {}
    for sig, pattern in family.patterns:
        by_first.setdefault(pattern[0], []).append((sig, pattern))
    for candidates in by_first.values():
        candidates.sort(key=lambda item: -len(item[1]))

    occurrences: list[Occurrence] = []
    i = 0
    n = len(tokens)
    while i < n:
        matched_len = 0
        for sig, pattern in by_first.get(tokens[i].text, ()):
            k = len(pattern)
            if i + k <= n and all(tokens[i + j].text == pattern[j] for j in range(k)):
                start = tokens[i].start
                end = tokens[i + k - 1].end
                occurrences.append(
                    Occurrence(
                        document=document.id,
                        term=family.term.id,
                        form=sig,
                        pos=start,
                        matched_text=document.text[start:end],
                    )
                )
                matched_len = k
                break
        i += matched_len if matched_len else 1
    return occurrences


def scan_corpus(corpus: Corpus, families: list[TermFamily]) -> list[Occurrence]:
    """Scan every document against every family; deterministic order."""
    out: list[Occurrence] = []
    for document in corpus.documents:
        per_doc: list[Occurrence] = []
        for family in families:
            per_doc.extend(scan(document, family))
        per_doc.sort(key=lambda o: (o.pos, o.term, o.form))
        out.extend(per_doc)
    out.sort(key=lambda o: (o.document, o.pos, o.term, o.form))
    return out


def family_counts(document: Document, family: TermFamily) -> tuple[int, int]:
    """(full-form count, reduced-form count) for one document and family."""
    occurrences = scan(document, family)
    full = sum(1 for o in occurrences if o.is_full)
    return full, len(occurrences) - full
