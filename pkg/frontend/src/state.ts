/*
 * Pure view-state helpers.
 *
 * Everything in this module is a function of server responses plus the
 * records the server has acknowledged. No browser state survives a
 * reload, so rebuilding the view from fresh GETs always reproduces
 * exactly what the log says.
 */

import type {
  AnaStats,
  DocumentDetail,
  DocumentSummary,
  OccurrenceLabel,
  PostedRecord,
  Span,
} from "./api.js";

/** Keyboard shortcuts for the five occurrence labels. */
export const LABEL_KEYS: ReadonlyMap<string, OccurrenceLabel> = new Map([
  ["1", "full"],
  ["2", "anaphoric_reduction"],
  ["3", "cataphoric_reduction"],
  ["4", "lexical_reduction"],
  ["5", "not_a_variant"],
]);

export type Segment =
  | { kind: "text"; text: string }
  | { kind: "span"; span: Span; text: string };

/**
 * Split a document text into plain and highlighted segments.
 *
 * The spans carry the scanner's character offsets and are rendered as
 * received; the UI never re-tokenizes. Offsets count code points while
 * JS strings count UTF-16 units, so texts with astral characters go
 * through an index translation first.
 */
export function segmentText(text: string, spans: readonly Span[]): Segment[] {
  const toUnits = codePointIndexer(text);
  const ordered = [...spans].sort((a, b) => a.pos - b.pos);
  const out: Segment[] = [];
  let cursor = 0;
  for (const span of ordered) {
    const start = toUnits(span.pos);
    const end = toUnits(span.end);
    if (start < cursor || end < start || end > text.length) {
      throw new Error(`span ${span.id} does not fit the document text`);
    }
    if (start > cursor) {
      out.push({ kind: "text", text: text.slice(cursor, start) });
    }
    out.push({ kind: "span", span, text: text.slice(start, end) });
    cursor = end;
  }
  if (cursor < text.length) {
    out.push({ kind: "text", text: text.slice(cursor) });
  }
  return out;
}

function codePointIndexer(text: string): (cp: number) => number {
  if (!/[\u{10000}-\u{10FFFF}]/u.test(text)) {
    return (cp) => cp;
  }
  const starts: number[] = [];
  let unit = 0;
  for (const ch of text) {
    starts.push(unit);
    unit += ch.length;
  }
  starts.push(unit);
  return (cp) => starts[cp];
}

/** CSS class for a span: full and unlabeled candidates get their own
 *  colors, a labeled span is colored by its label.  */
export function styleClass(span: Span): string {
  if (span.label !== null) {
    return `occ-labeled occ-${span.label}`;
  }
  return span.shape === "full" ? "occ-full" : "occ-candidate";
}

/** Fold one acknowledged record into a document view, latest wins. */
export function applyToDocument(
  detail: DocumentDetail,
  record: PostedRecord,
): DocumentDetail {
  if ("label" in record.verdict) {
    const label = record.verdict.label;
    if (!detail.spans.some((s) => s.id === record.target)) {
      return detail;
    }
    return {
      ...detail,
      spans: detail.spans.map((s) =>
        s.id === record.target ? { ...s, label } : s,
      ),
    };
  }
  if (record.target !== detail.id) {
    return detail;
  }
  return {
    ...detail,
    validated: true,
    in_domain: record.verdict.in_domain,
    category: record.verdict.category,
  };
}

/** Fold one acknowledged record into the listing, latest wins. */
export function applyToListing(
  documents: readonly DocumentSummary[],
  record: PostedRecord,
): DocumentSummary[] {
  if ("label" in record.verdict) {
    return [...documents];
  }
  const verdict = record.verdict;
  return documents.map((d) =>
    d.id === record.target
      ? {
          ...d,
          validated: true,
          in_domain: verdict.in_domain,
          category: verdict.category,
        }
      : d,
  );
}

export function unvalidatedOnly(
  documents: readonly DocumentSummary[],
  enabled: boolean,
): DocumentSummary[] {
  return enabled
    ? documents.filter((d) => !d.validated)
    : [...documents];
}

export interface Badges {
  validation: "validated" | "unvalidated";
  category: string;
  outOfDomain: boolean;
}

export function badges(doc: DocumentSummary): Badges {
  return {
    validation: doc.validated ? "validated" : "unvalidated",
    category: doc.category === null ? "?" : String(doc.category),
    outOfDomain: doc.in_domain === false,
  };
}

/**
 * Index of the next unlabeled span strictly after `from`, wrapping
 * around; -1 when every span carries a label.
 */
export function nextUnlabeled(spans: readonly Span[], from: number): number {
  const n = spans.length;
  for (let step = 1; step <= n; step++) {
    const i = (from + step) % n;
    if (spans[i].label === null) {
      return i;
    }
  }
  return -1;
}

export function clampFocus(spans: readonly Span[], index: number): number {
  if (spans.length === 0) {
    return -1;
  }
  return Math.min(Math.max(index, 0), spans.length - 1);
}

/** Compact rendering of a statistic, NA for undefined. */
export function fmtStat(value: number | null): string {
  if (value === null) {
    return "NA";
  }
  return String(Math.round(value * 1e6) / 1e6);
}

/**
 * Sidebar lines for the live ANA/FP readout, one per category row of
 * the /stats/ana payload plus a header with the presence rates.
 */
export function anaReadout(stats: AnaStats): string[] {
  const lines = [
    `RA ${fmtStat(stats.ra_pct)}% / RCA ${fmtStat(stats.rca_pct)}% over ${stats.document_count} docs`,
  ];
  for (const row of stats.rows) {
    const cat = row.category === null ? "uncategorized" : `category ${row.category}`;
    lines.push(
      `${cat}: ANA/FP ${fmtStat(row.ana_fp_ratio)}, FP density ${fmtStat(row.FP)}`,
    );
  }
  return lines;
}
