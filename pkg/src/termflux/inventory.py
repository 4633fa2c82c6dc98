"""Term-inventory files.

One term per line, head chunk first, chunks separated by ``|``; inside a
chunk the weak words precede the strong word, separated by spaces. A
strong word may carry a ``/pos`` tag (``noun``, ``adj``, ``adv``, ``verb``).
Lines starting with ``#`` are comments. Two extra line kinds:

``!lang fr``
    sets the language tag for the terms that follow;
``@ h,2: metodo biologico``
    attaches an alias surface to a reduced form (or to ``full``) of the
    term on the closest preceding term line, covering agreement changes
    the plain chunk-drop rendering cannot produce.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .model import (
    Chunk,
    ComplexTerm,
    FULL_FORM,
    TermfluxError,
    parse_signature,
)

# prepositions, articles and conjunctions allowed as weak words
FRENCH_WEAK_WORDS = frozenset(
    """le la les l un une des de du d au aux à en dans par pour sur avec
    sans sous entre vers chez et ou ni""".split()
)
ITALIAN_WEAK_WORDS = frozenset(
    """il lo la l i gli le un uno una di d a da in con su per tra fra
    del dello della dei degli delle dell al allo alla ai agli alle all
    dal dallo dalla dai dagli dalle dall nel nello nella nei negli nelle
    nell sul sullo sulla sui sugli sulle sull e o ed od""".split()
)
DEFAULT_WEAK_WORDS = FRENCH_WEAK_WORDS | ITALIAN_WEAK_WORDS

_POS_TAGS = {
    "n": "noun",
    "noun": "noun",
    "adj": "adjective",
    "adjective": "adjective",
    "adv": "adverb",
    "adverb": "adverb",
    "v": "verb",
    "verb": "verb",
}


@dataclass
class TermEntry:
    """A term plus its alias surfaces, keyed by form signature."""

    term: ComplexTerm
    aliases: dict[str, list[str]] = field(default_factory=dict)


def _parse_chunk(raw: str, line_no: int, weak_words: frozenset[str]) -> Chunk:
    tokens = raw.split()
    if not tokens:
        raise TermfluxError(f"line {line_no}: empty chunk")
    strong = tokens[-1]
    hint = "unknown"
    if "/" in strong:
        strong, _, tag = strong.rpartition("/")
        try:
            hint = _POS_TAGS[tag.lower()]
        except KeyError:
            raise TermfluxError(f"line {line_no}: unknown pos tag {tag!r}") from None
    for weak in tokens[:-1]:
        if weak.lower() not in weak_words:
            raise TermfluxError(
                f"line {line_no}: {weak!r} is not in the weak-word list; "
                "give it its own chunk if it is a content word"
            )
    return Chunk(strong_word=strong, weak_words=tuple(tokens[:-1]), strong_pos_hint=hint)


def parse_inventory_lines(
    lines, *, weak_words: frozenset[str] = DEFAULT_WEAK_WORDS
) -> list[TermEntry]:
    entries: list[TermEntry] = []
    seen_ids: set[str] = set()
    language = "other"
    for line_no, raw in enumerate(lines, start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        if line.startswith("!lang"):
            language = line[len("!lang"):].strip() or "other"
            continue
        if line.startswith("@"):
            if not entries:
                raise TermfluxError(f"line {line_no}: alias before any term")
            sig, sep, alias = line[1:].partition(":")
            sig, alias = sig.strip(), alias.strip()
            if not sep or not alias:
                raise TermfluxError(f"line {line_no}: alias must look like '@ h,2: surface'")
            entry = entries[-1]
            if sig != FULL_FORM:
                _, indices = parse_signature(sig)
                if any(i >= len(entry.term.components) for i in indices):
                    raise TermfluxError(
                        f"line {line_no}: signature {sig!r} exceeds the term's components"
                    )
            entry.aliases.setdefault(sig, []).append(alias)
            continue
        chunks = [_parse_chunk(part, line_no, weak_words) for part in line.split("|")]
        if len(chunks) < 2:
            raise TermfluxError(f"line {line_no}: a term needs a head and a component")
        head = chunks[0]
        if head.weak_words:
            raise TermfluxError(f"line {line_no}: the head chunk cannot carry weak words")
        term = ComplexTerm(
            id=" ".join(c.surface for c in chunks),
            head=head,
            components=tuple(chunks[1:]),
            language=language,
        )
        if term.id in seen_ids:
            raise TermfluxError(f"line {line_no}: duplicate term {term.id!r}")
        seen_ids.add(term.id)
        entries.append(TermEntry(term=term))
    return entries


def load_inventory(path: str | Path, *, weak_words: frozenset[str] = DEFAULT_WEAK_WORDS) -> list[TermEntry]:
    """Read a term-inventory file (UTF-8)."""
    text = Path(path).read_text(encoding="utf-8")
    return parse_inventory_lines(text.splitlines(), weak_words=weak_words)
