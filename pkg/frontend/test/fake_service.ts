/*
 * In-memory stand-in for the annotation service, speaking the same
 * wire shapes through a fetch-compatible function. Latest-wins replay
 * of the posted log mirrors the server's behaviour so integration
 * tests can exercise reload fidelity without a network.
 */

import type {
  AnaRow,
  AnaStats,
  DocumentDetail,
  DocumentListing,
  DocumentSummary,
  OccurrenceLabel,
  PostedRecord,
  Span,
} from "../src/api.js";

interface VerdictEntry {
  in_domain: boolean;
  category: number;
}

function json(body: unknown, status = 200): Response {
  return new Response(JSON.stringify(body), {
    status,
    headers: { "Content-Type": "application/json" },
  });
}

export class FakeService {
  readonly log: PostedRecord[] = [];
  fetchCount = 0;
  private clock = 0;

  constructor(
    private readonly corpus: string,
    private readonly docs: readonly DocumentDetail[],
  ) {}

  readonly fetch = async (
    input: string,
    init?: RequestInit,
  ): Promise<Response> => {
    this.fetchCount += 1;
    const path = new URL(input, "http://fake.test").pathname;
    if (init?.method === "POST" && path === "/api/v1/annotations") {
      return this.post(String(init.body));
    }
    if (path === "/api/v1/documents") {
      return json(this.listing());
    }
    const detail = /^\/api\/v1\/documents\/(.+)$/.exec(path);
    if (detail !== null) {
      const id = decodeURIComponent(detail[1]);
      const doc = this.docs.find((d) => d.id === id);
      return doc === undefined
        ? json({ detail: `unknown document: ${id}` }, 404)
        : json(this.detailOf(doc));
    }
    if (path === "/api/v1/stats/ana") {
      return json(this.stats());
    }
    return json({ detail: `no route: ${path}` }, 404);
  };

  listing(): DocumentListing {
    return {
      corpus: this.corpus,
      documents: this.docs.map((d) => this.summaryOf(d)),
    };
  }

  detailOf(doc: DocumentDetail): DocumentDetail {
    const labels = this.labelMap();
    return {
      ...this.summaryOf(doc),
      text: doc.text,
      spans: doc.spans.map((s) => ({ ...s, label: labels.get(s.id) ?? null })),
    };
  }

  stats(): AnaStats {
    const labels = this.labelMap();
    const categories = [
      ...new Set(this.docs.map((d) => this.summaryOf(d).category)),
    ].sort((a, b) => (a ?? 9) - (b ?? 9));
    const rows: AnaRow[] = categories.map((category) => {
      const docs = this.docs.filter(
        (d) => this.summaryOf(d).category === category,
      );
      const spans = docs
        .flatMap((d) => d.spans)
        .filter((s) => labels.get(s.id) !== "not_a_variant");
      const fp = spans.filter((s) => s.shape === "full").length;
      const ana = spans.filter(
        (s) => labels.get(s.id) === "anaphoric_reduction",
      ).length;
      const cata = spans.filter(
        (s) => labels.get(s.id) === "cataphoric_reduction",
      ).length;
      return {
        category,
        document_count: docs.length,
        FP: fp,
        ANA: ana,
        CATA: cata,
        ana_fp_ratio: fp > 0 ? ana / fp : null,
        cata_fp_ratio: fp > 0 ? cata / fp : null,
        d_m: null,
        d_minus: null,
        f: null,
        delta: null,
        Delta: null,
        delta_minus: null,
        Delta_minus: null,
      };
    });
    return {
      kind: "ana",
      corpus: this.corpus,
      document_count: this.docs.length,
      ra_pct: null,
      rca_pct: null,
      rows,
    };
  }

  latestFor(target: string): PostedRecord | undefined {
    for (let i = this.log.length - 1; i >= 0; i--) {
      if (this.log[i].target === target) {
        return this.log[i];
      }
    }
    return undefined;
  }

  private post(body: string): Response {
    const record = JSON.parse(body) as PostedRecord;
    const known =
      this.docs.some((d) => d.id === record.target) ||
      this.docs.some((d) => d.spans.some((s) => s.id === record.target));
    if (!known) {
      return json({ detail: `unknown target: ${record.target}` }, 409);
    }
    const stored: PostedRecord = {
      ...record,
      timestamp: record.timestamp ?? `2026-01-01T00:00:${this.clock++}Z`,
    };
    this.log.push(stored);
    return json(stored, 201);
  }

  private summaryOf(doc: DocumentDetail): DocumentSummary {
    const verdict = this.verdictMap().get(doc.id);
    const { text: _text, spans: _spans, ...summary } = doc;
    return {
      ...summary,
      validated: verdict !== undefined,
      in_domain: verdict?.in_domain ?? null,
      category: verdict?.category ?? doc.category,
    };
  }

  private labelMap(): Map<string, OccurrenceLabel> {
    const out = new Map<string, OccurrenceLabel>();
    for (const record of this.log) {
      if ("label" in record.verdict) {
        out.set(record.target, record.verdict.label);
      }
    }
    return out;
  }

  private verdictMap(): Map<string, VerdictEntry> {
    const out = new Map<string, VerdictEntry>();
    for (const record of this.log) {
      if (!("label" in record.verdict)) {
        out.set(record.target, record.verdict);
      }
    }
    return out;
  }
}

/** Build a fixture document, deriving span offsets by construction. */
export function makeDoc(
  id: string,
  category: number | null,
  pieces: readonly (string | { term: string; form: string; surface: string })[],
): DocumentDetail {
  let text = "";
  const spans: Span[] = [];
  for (const piece of pieces) {
    if (typeof piece === "string") {
      text += piece;
      continue;
    }
    spans.push({
      id: `${id}:${piece.term}:${text.length}`,
      document: id,
      term: piece.term,
      form: piece.form,
      pos: text.length,
      end: text.length + piece.surface.length,
      surface: piece.surface,
      shape: piece.form === "full" ? "full" : "linear_suffix",
      label: null,
    });
    text += piece.surface;
  }
  return {
    id,
    date: "2005-05",
    category,
    language: "fr",
    domain: "agro",
    domain_fast_evolving: false,
    validated: false,
    in_domain: null,
    char_count: text.length,
    occurrence_count: spans.length,
    text,
    spans,
  };
}
