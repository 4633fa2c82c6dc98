"""Candidate reduced forms of a complex term and the lattice over them.

For a head plus n components there are 2**n - 1 head-retaining proper
reductions (the bare head included). Dropping the head is a different
mechanism; it is generated only on request and only as the whole
components tail.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .model import ComplexTerm, ReducedForm, TermfluxError, reduce_term


@dataclass(frozen=True)
class ReductionLattice:
    """Nodes are form signatures ("full" included); an edge drops one chunk."""

    term: str
    nodes: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]
    surfaces: dict[str, str]

    def __hash__(self) -> int:  # surfaces is derived data
        return hash((self.term, self.nodes, self.edges))


def generate_reductions(term: ComplexTerm, include_expansion_only: bool = False) -> list[ReducedForm]:
    """Every head-retaining proper reduction of ``term``, in a stable order.

    With ``include_expansion_only`` the components tail without the head is
    appended as one extra form.
    """
    n = len(term.components)
    forms = []
    for size in range(n - 1, -1, -1):
        for kept in combinations(range(n), size):
            forms.append(reduce_term(term, True, kept))
    if include_expansion_only:
        forms.append(reduce_term(term, False, tuple(range(n))))
    return forms


def _retained_sets(n: int) -> list[tuple[int, ...]]:
    sets = []
    for size in range(n, -1, -1):
        sets.extend(combinations(range(n), size))
    return sets


def build_lattice(term: ComplexTerm, include_expansion_only: bool = False) -> ReductionLattice:
    """Lattice of head-retaining forms; edges drop exactly one chunk."""
    n = len(term.components)
    signatures = {}
    surfaces = {}
    for kept in _retained_sets(n):
        if len(kept) == n:
            sig, surface = "full", term.surface
        else:
            form = reduce_term(term, True, kept)
            sig, surface = form.signature, form.surface
        signatures[kept] = sig
        surfaces[sig] = surface
    edges = []
    for kept, sig in signatures.items():
        for dropped in kept:
            smaller = tuple(i for i in kept if i != dropped)
            edges.append((sig, signatures[smaller]))
    if include_expansion_only:
        tail = reduce_term(term, False, tuple(range(n)))
        surfaces[tail.signature] = tail.surface
        edges.append(("full", tail.signature))
    nodes = tuple(surfaces)
    return ReductionLattice(term=term.id, nodes=nodes, edges=tuple(edges), surfaces=surfaces)


def classify_shape(full: ComplexTerm, reduced: ReducedForm) -> str:
    """linear_suffix, non_linear or expansion_only for a reduction of ``full``."""
    if reduced.parent != full.id:
        raise TermfluxError(f"form belongs to {reduced.parent!r}, not {full.id!r}")
    if not reduced.retain_head:
        return "expansion_only"
    if reduced.retained == tuple(range(len(reduced.retained))):
        return "linear_suffix"
    return "non_linear"


def is_admissible_3complex(term: ComplexTerm) -> bool:
    """Whether ``term`` belongs to the lexical-reduction study.

    Requires at least three strong words overall and no adverb component
    (dropping an adverb modulates the meaning rather than reducing the
    term).
    """
    if term.strong_word_count < 3:
        return False
    return all(c.strong_pos_hint != "adverb" for c in term.components)
