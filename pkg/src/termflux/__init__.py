"""Corpus analytics for the reduction of complex multiword terms.

The package covers the full workflow: generate candidate reduced forms
and their lattice, scan documents for occurrences with exact character
offsets, build per-(document, term) anaphoric trees and their
statistics, follow term lifecycles over a dated corpus, judge observed
reduction couples with the rule table, and serve an annotation API for
expert validation.
"""

from .model import (
    Chunk,
    ComplexTerm,
    Corpus,
    Document,
    Occurrence,
    ReducedForm,
    TermfluxError,
    make_corpus,
    parse_signature,
    reduce_term,
    render_surface,
    shape_from_signature,
)
from .inventory import TermEntry, load_inventory, parse_inventory_lines
from .lattice import (
    ReductionLattice,
    build_lattice,
    classify_shape,
    generate_reductions,
    is_admissible_3complex,
)
from .scanner import TermFamily, build_family, family_counts, normalize_stream, scan, scan_corpus
from .anaphora import (
    AnaphoraMetrics,
    AnaphoricTree,
    DocumentDensity,
    aggregate,
    build_tree,
    document_density,
    lowess,
    presence_rates,
    tree_metrics,
)
from .chrono import (
    CensusResult,
    ChronoCorpus,
    census,
    chrono_records,
    onset_mean,
    time_density,
    time_distance,
    xi_from_times,
)
from .classify import ReductionJudgment, judge, judge_occurrences
from .annotations import AnnotationRecord, AnnotationState, append_record, load_log

__version__ = "0.1.0"

__all__ = [
    "AnaphoraMetrics",
    "AnaphoricTree",
    "AnnotationRecord",
    "AnnotationState",
    "CensusResult",
    "Chunk",
    "ChronoCorpus",
    "ComplexTerm",
    "Corpus",
    "Document",
    "DocumentDensity",
    "Occurrence",
    "ReducedForm",
    "ReductionJudgment",
    "ReductionLattice",
    "TermEntry",
    "TermFamily",
    "TermfluxError",
    "aggregate",
    "append_record",
    "build_family",
    "build_lattice",
    "build_tree",
    "census",
    "chrono_records",
    "classify_shape",
    "document_density",
    "family_counts",
    "generate_reductions",
    "is_admissible_3complex",
    "judge",
    "judge_occurrences",
    "load_inventory",
    "load_log",
    "lowess",
    "make_corpus",
    "normalize_stream",
    "onset_mean",
    "parse_inventory_lines",
    "parse_signature",
    "presence_rates",
    "reduce_term",
    "render_surface",
    "scan",
    "scan_corpus",
    "shape_from_signature",
    "time_density",
    "time_distance",
    "tree_metrics",
    "xi_from_times",
]
