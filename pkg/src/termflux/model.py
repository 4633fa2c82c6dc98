"""Domain types for complex terms, their reduced variants, and corpora.

A complex term is a binary unit: a head chunk plus one or more component
chunks. Each chunk glues its grammatical (weak) words to one content
(strong) word, so a dropped chunk takes its weak words with it.
"""

from __future__ import annotations

from dataclasses import dataclass, field
import re

POS_HINTS = frozenset({"noun", "adjective", "adverb", "verb", "unknown"})

SHAPE_LINEAR_SUFFIX = "linear_suffix"
SHAPE_NON_LINEAR = "non_linear"
SHAPE_EXPANSION_ONLY = "expansion_only"
SHAPES = frozenset({SHAPE_LINEAR_SUFFIX, SHAPE_NON_LINEAR, SHAPE_EXPANSION_ONLY})

CATEGORY_VULGARISATION = 1
CATEGORY_PEDAGOGIQUE = 2
CATEGORY_SPECIALISE = 3

FULL_FORM = "full"


class TermfluxError(Exception):
    """Base error for invalid domain data."""


@dataclass(frozen=True)
class Chunk:
    """One content word with the grammatical words glued in front of it."""

    strong_word: str
    weak_words: tuple[str, ...] = ()
    strong_pos_hint: str = "unknown"

    def __post_init__(self) -> None:
        if not self.strong_word:
            raise TermfluxError("chunk needs a non-empty strong word")
        if self.strong_pos_hint not in POS_HINTS:
            raise TermfluxError(f"unknown pos hint: {self.strong_pos_hint!r}")

    @property
    def surface(self) -> str:
        return " ".join((*self.weak_words, self.strong_word))


@dataclass(frozen=True)
class ComplexTerm:
    """Head chunk plus ordered component chunks; at least two chunks total."""

    id: str
    head: Chunk
    components: tuple[Chunk, ...]
    language: str = "other"

    def __post_init__(self) -> None:
        if self.head.weak_words:
            raise TermfluxError(f"term {self.id!r}: head must not carry weak words")
        if len(self.components) < 1:
            raise TermfluxError(f"term {self.id!r}: needs at least one component")

    @property
    def surface(self) -> str:
        return " ".join(c.surface for c in (self.head, *self.components))

    @property
    def strong_word_count(self) -> int:
        return 1 + len(self.components)


@dataclass(frozen=True)
class ReducedForm:
    """A proper sub-selection of a term's chunks.

    ``retained`` holds 0-based component indices; the head is tracked
    separately. The signature is the stable wire id of the form: ``h``
    marks the head and components are numbered from 1, e.g. ``h,2``.
    """

    parent: str
    retain_head: bool
    retained: tuple[int, ...]
    shape: str
    surface: str

    def __post_init__(self) -> None:
        if self.shape not in SHAPES:
            raise TermfluxError(f"unknown shape: {self.shape!r}")
        if not self.retain_head and not self.retained:
            raise TermfluxError("reduced form must retain at least one chunk")

    @property
    def signature(self) -> str:
        parts = (["h"] if self.retain_head else []) + [str(i + 1) for i in self.retained]
        return ",".join(parts)


def _shape_of(retain_head: bool, retained: tuple[int, ...]) -> str:
    if not retain_head:
        return SHAPE_EXPANSION_ONLY
    if retained == tuple(range(len(retained))):
        # head plus a (possibly empty) prefix of the components
        return SHAPE_LINEAR_SUFFIX
    return SHAPE_NON_LINEAR


def reduce_term(term: ComplexTerm, retain_head: bool, retained: tuple[int, ...]) -> ReducedForm:
    """Build the reduced form of ``term`` keeping the given chunks.

    Raises if the selection is not a proper reduction (nothing dropped or
    nothing kept), or if a component index is out of range.
    """
    n = len(term.components)
    if any(i < 0 or i >= n for i in retained):
        raise TermfluxError(f"term {term.id!r}: component index out of range")
    if tuple(sorted(retained)) != retained or len(set(retained)) != len(retained):
        raise TermfluxError(f"term {term.id!r}: retained indices must be strictly increasing")
    if retain_head and len(retained) == n:
        raise TermfluxError(f"term {term.id!r}: retaining every chunk is not a reduction")
    if not retain_head and not retained:
        raise TermfluxError(f"term {term.id!r}: dropping every chunk is not a reduction")
    chunks = [term.components[i] for i in retained]
    if retain_head:
        chunks.insert(0, term.head)
    # a form never opens on weak words: the first chunk sheds them
    parts = [chunks[0].strong_word]
    parts.extend(c.surface for c in chunks[1:])
    return ReducedForm(
        parent=term.id,
        retain_head=retain_head,
        retained=retained,
        shape=_shape_of(retain_head, retained),
        surface=" ".join(parts),
    )


def render_surface(form: ComplexTerm | ReducedForm, parent: ComplexTerm | None = None) -> str:
    """Render the canonical surface of a term or of one of its reductions.

    For a ``ReducedForm`` the parent term must be supplied so the surface
    can be recomputed from the retained chunks; a mismatched parent is an
    error.
    """
    if isinstance(form, ComplexTerm):
        return form.surface
    if parent is None:
        raise TermfluxError(f"form of {form.parent!r} needs its parent term to render")
    if parent.id != form.parent:
        raise TermfluxError(f"form belongs to {form.parent!r}, not {parent.id!r}")
    return reduce_term(parent, form.retain_head, form.retained).surface


@dataclass(frozen=True)
class Document:
    """A cleaned text with its manifest metadata."""

    id: str
    text: str
    date: tuple[int, int] | None = None  # (year, month)
    category: int | None = None
    domain: str = ""
    language: str = ""
    validated: bool = False
    domain_fast_evolving: bool = False

    def __post_init__(self) -> None:
        if self.date is not None:
            year, month = self.date
            if not 1 <= month <= 12:
                raise TermfluxError(f"document {self.id!r}: month {month} out of range")
        if self.category is not None and self.category not in (1, 2, 3):
            raise TermfluxError(f"document {self.id!r}: category must be 1, 2 or 3")

    @property
    def char_count(self) -> int:
        return len(self.text)


@dataclass(frozen=True)
class Occurrence:
    """One matched span of a term family in a document.

    ``form`` is ``"full"`` or a reduced-form signature; ``pos`` counts
    Unicode characters from the start of the cleaned text.
    """

    document: str
    term: str
    form: str
    pos: int
    matched_text: str

    @property
    def is_full(self) -> bool:
        return self.form == FULL_FORM

    @property
    def id(self) -> str:
        return f"{self.document}::{self.term}::{self.pos}"


@dataclass(frozen=True)
class Corpus:
    """Ordered documents: by (date, id) when all are dated, else given order."""

    id: str
    documents: tuple[Document, ...] = ()
    by_id: dict[str, Document] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        seen = {}
        for doc in self.documents:
            if doc.id in seen:
                raise TermfluxError(f"duplicate document id: {doc.id!r}")
            seen[doc.id] = doc
        object.__setattr__(self, "by_id", seen)

    @property
    def all_dated(self) -> bool:
        return all(d.date is not None for d in self.documents)

    def document(self, doc_id: str) -> Document:
        try:
            return self.by_id[doc_id]
        except KeyError:
            raise TermfluxError(f"unknown document id: {doc_id!r}") from None


def make_corpus(corpus_id: str, documents: list[Document]) -> Corpus:
    """Assemble a corpus, sorting by (date, id) when every document is dated."""
    docs = list(documents)
    if docs and all(d.date is not None for d in docs):
        docs.sort(key=lambda d: (d.date, d.id))
    return Corpus(id=corpus_id, documents=tuple(docs))


_SIGNATURE_RE = re.compile(r"^(h|h,\d+(,\d+)*|\d+(,\d+)*)$")


def parse_signature(signature: str) -> tuple[bool, tuple[int, ...]]:
    """Split a form signature into (retain_head, 0-based component indices)."""
    if signature == FULL_FORM or not _SIGNATURE_RE.match(signature):
        raise TermfluxError(f"bad reduced-form signature: {signature!r}")
    parts = signature.split(",")
    retain_head = parts[0] == "h"
    rest = parts[1:] if retain_head else parts
    indices = tuple(int(p) - 1 for p in rest)
    if any(i < 0 for i in indices) or tuple(sorted(set(indices))) != indices:
        raise TermfluxError(f"bad reduced-form signature: {signature!r}")
    return retain_head, indices


def shape_from_signature(signature: str) -> str:
    """Shape of a reduced form as recoverable from its signature alone."""
    retain_head, indices = parse_signature(signature)
    return _shape_of(retain_head, indices)
