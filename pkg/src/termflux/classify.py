"""Rule-based likelihood labels for observed reduction couples.

Three ordered, mutually exclusive rules over (shape, order, category,
domain volatility); anything they do not cover is undetermined. The
input domain is finite (3 shapes x 3 orders x 4 categories x 2 flags),
so the rule table is exhaustively testable.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .model import (
    Corpus,
    Occurrence,
    SHAPE_LINEAR_SUFFIX,
    SHAPES,
    TermfluxError,
    shape_from_signature,
)

ORDER_FULL_FIRST = "full-first"
ORDER_REDUCED_FIRST = "reduced-first"
ORDER_NA = "NA"
ORDERS = frozenset({ORDER_FULL_FIRST, ORDER_REDUCED_FIRST, ORDER_NA})

LABEL_LIKELY_ANAPHORIC = "likely_anaphoric"
LABEL_UNLIKELY_ANAPHORIC = "unlikely_anaphoric"
LABEL_POSSIBLE_LEXICAL = "possible_lexical"
LABEL_UNDETERMINED = "undetermined"

_CATEGORIES = (1, 2, 3, None)


@dataclass(frozen=True)
class ReductionJudgment:
    label: str
    rule_fired: int | None
    shape: str
    order: str
    category: int | None
    domain_fast_evolving: bool


def judge(
    shape: str,
    order: str,
    category: int | None,
    domain_fast_evolving: bool,
) -> ReductionJudgment:
    """Label one reduction couple; exactly one rule (or none) fires."""
    if shape not in SHAPES:
        raise TermfluxError(f"unknown shape: {shape!r}")
    if order not in ORDERS:
        raise TermfluxError(f"unknown order: {order!r}")
    if category not in _CATEGORIES:
        raise TermfluxError(f"unknown category: {category!r}")

    label = LABEL_UNDETERMINED
    rule: int | None = None
    if shape == SHAPE_LINEAR_SUFFIX:
        if order == ORDER_FULL_FIRST and category == 1:
            label, rule = LABEL_LIKELY_ANAPHORIC, 1
        elif order == ORDER_REDUCED_FIRST or category == 3:
            label, rule = LABEL_UNLIKELY_ANAPHORIC, 2
    elif domain_fast_evolving:
        # non-linear or head-dropping shape in a fast-evolving domain
        label, rule = LABEL_POSSIBLE_LEXICAL, 3
    return ReductionJudgment(
        label=label,
        rule_fired=rule,
        shape=shape,
        order=order,
        category=category,
        domain_fast_evolving=domain_fast_evolving,
    )


@dataclass(frozen=True)
class OccurrenceJudgment:
    """A judged (document, term, reduced form) triple."""

    document: str
    term: str
    form: str
    judgment: ReductionJudgment


def judge_occurrences(
    corpus: Corpus, occurrences: Sequence[Occurrence]
) -> list[OccurrenceJudgment]:
    """Judge every reduced form attested in each document.

    Order is full-first when some full-form occurrence precedes the
    first occurrence of that reduced form in the document, otherwise
    reduced-first (a document with no full form at all cannot put the
    full form first).
    """
    by_doc_term: dict[tuple[str, str], list[Occurrence]] = {}
    for occ in occurrences:
        by_doc_term.setdefault((occ.document, occ.term), []).append(occ)

    results = []
    for (doc_id, term), seq in sorted(by_doc_term.items()):
        document = corpus.document(doc_id)
        seq = sorted(seq, key=lambda o: o.pos)
        first_full = next((o.pos for o in seq if o.is_full), None)
        seen: set[str] = set()
        for occ in seq:
            if occ.is_full or occ.form in seen:
                continue
            seen.add(occ.form)
            order = (
                ORDER_FULL_FIRST
                if first_full is not None and first_full < occ.pos
                else ORDER_REDUCED_FIRST
            )
            results.append(
                OccurrenceJudgment(
                    document=doc_id,
                    term=term,
                    form=occ.form,
                    judgment=judge(
                        shape=shape_from_signature(occ.form),
                        order=order,
                        category=document.category,
                        domain_fast_evolving=document.domain_fast_evolving,
                    ),
                )
            )
    return results
