"""Synthetic fixture corpora with hand-placed occurrences.

Documents are built by injecting known surfaces between neutral filler
sentences, so every expected occurrence (term, form, pos, text) is known
by construction and doubles as a scanner check. All documents are padded
to exactly 10,000 characters to keep densities trivial to hand-compute.
"""

from __future__ import annotations

import json
from pathlib import Path

import pytest

from termflux.inventory import parse_inventory_lines
from termflux.model import Corpus, Document, Occurrence, make_corpus

TERM_A = "mode de production biologique"
TERM_B = "denominazione di origine controllata"

FULL_A = (TERM_A, "full", "mode de production biologique")
RED_A2 = (TERM_A, "h,2", "mode biologique")
RED_A1 = (TERM_A, "h,1", "mode de production")
FULL_B = (TERM_B, "full", "denominazione di origine controllata")
RED_B2 = (TERM_B, "h,2", "denominazione controllata")

INVENTORY_LINES = [
    "# fixture inventory",
    "!lang fr",
    "mode/n|de production/n|biologique/adj",
    "!lang it",
    "denominazione/n|di origine/n|controllata/adj",
]

# no token of this sentence collides with any term token
FILLER = (
    "le texte neutre continue sans rapport avec le sujet et raconte "
    "la saison des longues pluies dans la vallee. "
)

DOC_SIZE = 10_000


def build_doc(
    doc_id: str,
    injections: list[tuple[str, str, str]],
    *,
    size: int = DOC_SIZE,
    date: tuple[int, int] | None = None,
    category: int | None = None,
    domain: str = "agro",
    language: str = "fr",
    fast: bool = False,
) -> tuple[Document, list[Occurrence]]:
    """Assemble a padded document and its expected occurrences."""
    text = ""
    expected = []
    for term_id, sig, surface in injections:
        text += FILLER
        expected.append((len(text), term_id, sig, surface))
        text += surface + ". "
    text += FILLER
    if len(text) + 2 > size:
        raise ValueError(f"{doc_id}: injections exceed document size")
    text += " " + "z" * (size - len(text) - 1)
    assert len(text) == size
    doc = Document(
        id=doc_id,
        text=text,
        date=date,
        category=category,
        domain=domain,
        language=language,
        domain_fast_evolving=fast,
    )
    occurrences = [
        Occurrence(document=doc_id, term=t, form=s, pos=p, matched_text=surf)
        for (p, t, s, surf) in expected
    ]
    return doc, occurrences


def build_trend_corpus() -> tuple[Corpus, list[Occurrence]]:
    """3 categories x 10 docs with controlled reduction rates.

    Hand counts per document (term A only, 10,000 chars each):
      category 1: 2 FP + 3 ANA, docs 1-2 also 1 CATA  -> ANA/FP 1.5
      category 2: 4 FP + 1 ANA                        -> ANA/FP 0.25
      category 3: 6 FP + 0 ANA                        -> ANA/FP 0.0
    So ANA/FP strictly falls 1 -> 3 while FP density rises (20/40/60),
    RA docs = 20/30 (66.67%), RCA docs = 2/30 (6.67%).
    """
    docs: list[Document] = []
    occs: list[Occurrence] = []
    for i in range(10):
        inj = []
        if i < 2:
            inj.append(RED_A2)  # cataphoric: before any full form
        inj += [FULL_A, RED_A2, RED_A2, FULL_A, RED_A2]
        d, o = build_doc(f"c1-{i + 1:02d}", inj, category=1)
        docs.append(d)
        occs.extend(o)
    for i in range(10):
        inj = [FULL_A, FULL_A, RED_A2, FULL_A, FULL_A]
        d, o = build_doc(f"c2-{i + 1:02d}", inj, category=2)
        docs.append(d)
        occs.extend(o)
    for i in range(10):
        d, o = build_doc(f"c3-{i + 1:02d}", [FULL_A] * 6, category=3)
        docs.append(d)
        occs.extend(o)
    return make_corpus("trend", docs), occs


def build_chrono_corpus() -> tuple[Corpus, list[Occurrence]]:
    """12 monthly docs of 2004; full forms live in docs 1-6, reduced in 7-12.

    Census hand counts: t = 2 attested terms, r = 3 attested reduced
    forms (A h,2 / A h,1 / B h,2), occurrences_t = 18, occurrences_r = 19.
    """
    docs: list[Document] = []
    occs: list[Occurrence] = []
    for month in range(1, 7):
        d, o = build_doc(
            f"t{month:02d}", [FULL_A, FULL_A, FULL_B], date=(2004, month), category=1
        )
        docs.append(d)
        occs.extend(o)
    for month in range(7, 13):
        inj = [RED_A2, RED_A2, RED_B2]
        if month == 8:
            inj.append(RED_A1)
        d, o = build_doc(f"t{month:02d}", inj, date=(2004, month), category=1)
        docs.append(d)
        occs.extend(o)
    return make_corpus("chrono", docs), occs


def inventory_entries():
    return parse_inventory_lines(INVENTORY_LINES)


def write_bundle(target: Path, corpus: Corpus, name: str = "corpus") -> dict[str, Path]:
    """Write a corpus as manifest + text files + inventory under target."""
    target.mkdir(parents=True, exist_ok=True)
    docs_dir = target / "docs"
    docs_dir.mkdir(exist_ok=True)
    entries = []
    for doc in corpus.documents:
        doc_file = docs_dir / f"{doc.id}.txt"
        doc_file.write_text(doc.text, encoding="utf-8")
        entries.append(
            {
                "id": doc.id,
                "path": f"docs/{doc.id}.txt",
                "date": None if doc.date is None else f"{doc.date[0]:04d}-{doc.date[1]:02d}",
                "category": doc.category,
                "language": doc.language,
                "domain": doc.domain,
                "domain_fast_evolving": doc.domain_fast_evolving,
            }
        )
    manifest = target / f"{name}.json"
    manifest.write_text(
        json.dumps({"id": corpus.id, "documents": entries}, indent=2),
        encoding="utf-8",
    )
    terms = target / "terms.txt"
    terms.write_text("\n".join(INVENTORY_LINES) + "\n", encoding="utf-8")
    return {"manifest": manifest, "terms": terms, "dir": target}


@pytest.fixture()
def trend_fixture():
    return build_trend_corpus()


@pytest.fixture()
def chrono_fixture():
    return build_chrono_corpus()


@pytest.fixture()
def entries():
    return inventory_entries()
