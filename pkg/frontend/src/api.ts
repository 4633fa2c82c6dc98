/*
 * Typed client for the annotation service JSON API under /api/v1.
 *
 * The wire shapes below mirror the server payloads field for field;
 * the client adds nothing on top of them, so every view can be rebuilt
 * from responses alone.
 */

export type OccurrenceLabel =
  | "full"
  | "anaphoric_reduction"
  | "cataphoric_reduction"
  | "lexical_reduction"
  | "not_a_variant";

/** Row of the document listing. */
export interface DocumentSummary {
  id: string;
  date: string | null;
  category: number | null;
  language: string;
  domain: string;
  domain_fast_evolving: boolean;
  validated: boolean;
  in_domain: boolean | null;
  char_count: number;
  occurrence_count: number;
}

/** One scanned occurrence with its character offsets and latest label. */
export interface Span {
  id: string;
  document: string;
  term: string;
  form: string;
  pos: number;
  end: number;
  surface: string;
  shape: string;
  label: OccurrenceLabel | null;
}

export interface DocumentDetail extends DocumentSummary {
  text: string;
  spans: Span[];
}

export interface DocumentListing {
  corpus: string;
  documents: DocumentSummary[];
}

export interface AnaRow {
  category: number | null;
  document_count: number;
  FP: number | null;
  ANA: number | null;
  CATA: number | null;
  ana_fp_ratio: number | null;
  cata_fp_ratio: number | null;
  d_m: number | null;
  d_minus: number | null;
  f: number | null;
  delta: number | null;
  Delta: number | null;
  delta_minus: number | null;
  Delta_minus: number | null;
}

export interface AnaStats {
  kind: "ana";
  corpus: string;
  document_count: number;
  ra_pct: number | null;
  rca_pct: number | null;
  rows: AnaRow[];
}

export type Verdict =
  | { label: OccurrenceLabel }
  | { in_domain: boolean; category: number };

export interface WireRecord {
  target: string;
  verdict: Verdict;
  annotator: string;
  timestamp?: string;
}

/** Server echo of an accepted record; the timestamp is always filled. */
export interface PostedRecord extends WireRecord {
  timestamp: string;
}

export class ApiError extends Error {
  constructor(
    public readonly status: number,
    detail: string,
  ) {
    super(detail);
    this.name = "ApiError";
  }
}

type FetchLike = (input: string, init?: RequestInit) => Promise<Response>;

export class ApiClient {
  constructor(
    private readonly base: string = "",
    private readonly fetchFn: FetchLike = (input, init) => fetch(input, init),
  ) {}

  listDocuments(): Promise<DocumentListing> {
    return this.getJson<DocumentListing>("/api/v1/documents");
  }

  getDocument(id: string): Promise<DocumentDetail> {
    return this.getJson<DocumentDetail>(
      `/api/v1/documents/${encodeURIComponent(id)}`,
    );
  }

  anaStats(): Promise<AnaStats> {
    return this.getJson<AnaStats>("/api/v1/stats/ana");
  }

  async postAnnotation(record: WireRecord): Promise<PostedRecord> {
    const resp = await this.fetchFn(this.base + "/api/v1/annotations", {
      method: "POST",
      headers: { "Content-Type": "application/json" },
      body: JSON.stringify(record),
    });
    if (!resp.ok) {
      throw new ApiError(resp.status, await errorDetail(resp));
    }
    return (await resp.json()) as PostedRecord;
  }

  private async getJson<T>(path: string): Promise<T> {
    const resp = await this.fetchFn(this.base + path);
    if (!resp.ok) {
      throw new ApiError(resp.status, await errorDetail(resp));
    }
    return (await resp.json()) as T;
  }
}

async function errorDetail(resp: Response): Promise<string> {
  try {
    const body: unknown = await resp.json();
    if (
      typeof body === "object" &&
      body !== null &&
      typeof (body as { detail?: unknown }).detail === "string"
    ) {
      return (body as { detail: string }).detail;
    }
  } catch {
    // not a JSON error body, fall through
  }
  return `HTTP ${resp.status}`;
}
