"""Anaphoric trees and the reduction statistics computed from them.

One tree per (document, term): each reduced occurrence attaches to the
nearest preceding full form, and reduced occurrences before the first
full form make up the cataphoric prefix. All distances are character
offsets into the cleaned document text. A quantity whose defining set is
empty is None here and rendered as NA in reports.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .model import Corpus, Document, Occurrence, TermfluxError


@dataclass(frozen=True)
class FullNode:
    """A full-form occurrence with the reduced occurrences it governs."""

    occurrence: Occurrence
    children: tuple[Occurrence, ...]

    @property
    def degree(self) -> int:
        return len(self.children)


@dataclass(frozen=True)
class AnaphoricTree:
    document: str
    term: str
    cataphoric: tuple[Occurrence, ...]
    full_nodes: tuple[FullNode, ...]

    @property
    def anaphoric_count(self) -> int:
        return sum(node.degree for node in self.full_nodes)

    @property
    def reduced_count(self) -> int:
        return self.anaphoric_count + len(self.cataphoric)


@dataclass(frozen=True)
class AnaphoraMetrics:
    """The seven per-tree quantities; None marks an undefined value."""

    d_m: float | None
    d_minus: float | None
    f: float | None
    delta: float | None
    Delta: float | None
    delta_minus: float | None
    Delta_minus: float | None


_METRIC_FIELDS = ("d_m", "d_minus", "f", "delta", "Delta", "delta_minus", "Delta_minus")

NO_METRICS = AnaphoraMetrics(*([None] * len(_METRIC_FIELDS)))


@dataclass(frozen=True)
class DocumentDensity:
    """Per-100,000-character rates and the raw-count ratios for one document."""

    FP: float
    ANA: float
    CATA: float
    ana_fp_ratio: float | None
    cata_fp_ratio: float | None


@dataclass(frozen=True)
class AggregateRow:
    """Document-level means for one (corpus, category) cell."""

    category: int | None
    document_count: int
    FP: float | None
    ANA: float | None
    CATA: float | None
    ana_fp_ratio: float | None
    cata_fp_ratio: float | None
    metrics: AnaphoraMetrics


def build_tree(occurrences: Sequence[Occurrence]) -> AnaphoricTree:
    """Bucket one (document, term) occurrence sequence, sorted by pos."""
    if not occurrences:
        raise TermfluxError("cannot build a tree from zero occurrences")
    doc = occurrences[0].document
    term = occurrences[0].term
    for a, b in zip(occurrences, occurrences[1:]):
        if (b.document, b.term) != (doc, term):
            raise TermfluxError("tree occurrences must share one document and term")
        if b.pos < a.pos:
            raise TermfluxError("tree occurrences must be sorted by pos")

    cataphoric: list[Occurrence] = []
    nodes: list[tuple[Occurrence, list[Occurrence]]] = []
    for occ in occurrences:
        if occ.is_full:
            nodes.append((occ, []))
        elif nodes:
            nodes[-1][1].append(occ)
        else:
            cataphoric.append(occ)
    return AnaphoricTree(
        document=doc,
        term=term,
        cataphoric=tuple(cataphoric),
        full_nodes=tuple(FullNode(occ, tuple(children)) for occ, children in nodes),
    )


def mean_defined(values: Iterable[float | None]) -> float | None:
    """Arithmetic mean over the defined values; None when all are absent."""
    kept = [v for v in values if v is not None]
    if not kept:
        return None
    return sum(kept) / len(kept)


def tree_metrics(tree: AnaphoricTree) -> AnaphoraMetrics:
    nodes = tree.full_nodes
    if not nodes:
        # purely cataphoric tree: degree-based quantities are undefined
        return AnaphoraMetrics(
            d_m=None,
            d_minus=float(len(tree.cataphoric)),
            f=None,
            delta=None,
            Delta=None,
            delta_minus=None,
            Delta_minus=None,
        )

    d_m = tree.anaphoric_count / len(nodes)

    # runs of zero-degree full forms closed by a reduction-bearing one,
    # the closing node included; an open trailing run does not count
    runs: list[int] = []
    length = 0
    for node in nodes:
        length += 1
        if node.degree > 0:
            runs.append(length)
            length = 0
    f = mean_defined(runs)

    delta = mean_defined(
        float(n.children[0].pos - n.occurrence.pos) for n in nodes if n.children
    )
    Delta = mean_defined(
        float(n.children[-1].pos - n.occurrence.pos) for n in nodes if n.children
    )

    t1 = nodes[0].occurrence.pos
    if tree.cataphoric:
        delta_minus = float(t1 - tree.cataphoric[-1].pos)
        Delta_minus = float(t1 - tree.cataphoric[0].pos)
    else:
        delta_minus = None
        Delta_minus = None

    return AnaphoraMetrics(
        d_m=d_m,
        d_minus=float(len(tree.cataphoric)),
        f=f,
        delta=delta,
        Delta=Delta,
        delta_minus=delta_minus,
        Delta_minus=Delta_minus,
    )


def combine_metrics(items: Sequence[AnaphoraMetrics]) -> AnaphoraMetrics:
    """Fieldwise mean over a batch, skipping undefined values."""
    return AnaphoraMetrics(
        **{
            name: mean_defined(getattr(m, name) for m in items)
            for name in _METRIC_FIELDS
        }
    )


def trees_for_document(occurrences: Sequence[Occurrence]) -> list[AnaphoricTree]:
    """Build one tree per term from a single document's occurrences."""
    by_term: dict[str, list[Occurrence]] = {}
    for occ in occurrences:
        by_term.setdefault(occ.term, []).append(occ)
    trees = []
    for term in sorted(by_term):
        seq = sorted(by_term[term], key=lambda o: o.pos)
        trees.append(build_tree(seq))
    return trees


def document_metrics(trees: Sequence[AnaphoricTree]) -> AnaphoraMetrics:
    """Mean per-tree metrics for one document (NA if it has no trees)."""
    if not trees:
        return NO_METRICS
    return combine_metrics([tree_metrics(t) for t in trees])


def document_density(document: Document, trees: Sequence[AnaphoricTree]) -> DocumentDensity:
    if document.char_count == 0:
        raise TermfluxError(f"document {document.id!r} is empty; density undefined")
    fp = sum(len(t.full_nodes) for t in trees)
    ana = sum(t.anaphoric_count for t in trees)
    cata = sum(len(t.cataphoric) for t in trees)
    scale = 100_000 / document.char_count
    return DocumentDensity(
        FP=fp * scale,
        ANA=ana * scale,
        CATA=cata * scale,
        ana_fp_ratio=(ana / fp) if fp else None,
        cata_fp_ratio=(cata / fp) if fp else None,
    )


def _occurrences_by_document(
    occurrences: Sequence[Occurrence],
) -> dict[str, list[Occurrence]]:
    by_doc: dict[str, list[Occurrence]] = {}
    for occ in occurrences:
        by_doc.setdefault(occ.document, []).append(occ)
    return by_doc


def aggregate(
    corpus: Corpus, occurrences: Sequence[Occurrence], category: int | None
) -> AggregateRow:
    """Document-level means over one category; empty category gives NA."""
    docs = [d for d in corpus.documents if d.category == category]
    by_doc = _occurrences_by_document(occurrences)
    metrics: list[AnaphoraMetrics] = []
    densities: list[DocumentDensity] = []
    for doc in docs:
        trees = trees_for_document(by_doc.get(doc.id, []))
        metrics.append(document_metrics(trees))
        densities.append(document_density(doc, trees))
    return AggregateRow(
        category=category,
        document_count=len(docs),
        FP=mean_defined(d.FP for d in densities),
        ANA=mean_defined(d.ANA for d in densities),
        CATA=mean_defined(d.CATA for d in densities),
        ana_fp_ratio=mean_defined(d.ana_fp_ratio for d in densities),
        cata_fp_ratio=mean_defined(d.cata_fp_ratio for d in densities),
        metrics=combine_metrics(metrics),
    )


def presence_rates(
    corpus: Corpus, occurrences: Sequence[Occurrence]
) -> tuple[float, float]:
    """(RA%, RCA%): share of documents with at least one anaphoric
    (resp. cataphoric) reduction, all categories confounded."""
    if not corpus.documents:
        raise TermfluxError("presence rates need a non-empty corpus")
    by_doc = _occurrences_by_document(occurrences)
    ra = rca = 0
    for doc in corpus.documents:
        trees = trees_for_document(by_doc.get(doc.id, []))
        if any(t.anaphoric_count for t in trees):
            ra += 1
        if any(t.cataphoric for t in trees):
            rca += 1
    n = len(corpus.documents)
    return 100.0 * ra / n, 100.0 * rca / n


def lowess(
    x: Sequence[float],
    y: Sequence[float],
    fraction: float = 2.0 / 3.0,
    iterations: int = 3,
) -> np.ndarray:
    """Locally weighted linear regression with tricube weights.

    Returns fitted values at the input abscissas, in input order.
    `iterations` extra passes downweight outliers with bisquare weights.
    """
    xs = np.asarray(x, dtype=float)
    ys = np.asarray(y, dtype=float)
    if xs.shape != ys.shape or xs.ndim != 1:
        raise TermfluxError("x and y must be 1-d sequences of equal length")
    n = len(xs)
    if n < 2:
        raise TermfluxError("lowess needs at least 2 points")
    if not 0 < fraction <= 1:
        raise TermfluxError("fraction must be in (0, 1]")
    if np.all(xs == xs[0]):
        return np.full(n, ys.mean())

    r = int(math.ceil(fraction * n))
    # weight matrix: column i holds the neighborhood weights for x[i]
    w = np.empty((n, n))
    for i in range(n):
        dist = np.abs(xs - xs[i])
        h = np.sort(dist)[r - 1]
        if h == 0:
            w[:, i] = (dist == 0).astype(float)
        else:
            w[:, i] = (1 - np.clip(dist / h, 0.0, 1.0) ** 3) ** 3

    yest = np.zeros(n)
    robust = np.ones(n)
    for iteration in range(iterations + 1):
        for i in range(n):
            weights = robust * w[:, i]
            sw = weights.sum()
            if sw == 0:
                yest[i] = ys[i]
                continue
            u = xs - xs[i]  # center at the fit point for conditioning
            swu = (weights * u).sum()
            swuu = (weights * u * u).sum()
            swy = (weights * ys).sum()
            swuy = (weights * u * ys).sum()
            det = sw * swuu - swu * swu
            if det == 0:
                yest[i] = swy / sw
            else:
                slope = (sw * swuy - swu * swy) / det
                yest[i] = (swy - slope * swu) / sw
        if iteration == iterations:
            break
        residuals = ys - yest
        s = float(np.median(np.abs(residuals)))
        if s == 0:
            break
        robust = np.clip(residuals / (6.0 * s), -1.0, 1.0)
        robust = (1 - robust**2) ** 2
    return yest
