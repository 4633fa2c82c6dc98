/*
 * DOM shell for the annotation interface.
 *
 * Rendering stays thin: every view is rebuilt from typed payloads that
 * come straight from the API, with acknowledged posts folded in through
 * the pure helpers in state.ts. Navigation state lives in the URL hash,
 * so a browser reload simply replays the same GETs.
 */

import { ApiClient, ApiError } from "./api.js";
import type {
  AnaStats,
  DocumentDetail,
  DocumentListing,
  OccurrenceLabel,
  PostedRecord,
  WireRecord,
} from "./api.js";
import {
  LABEL_KEYS,
  anaReadout,
  applyToDocument,
  badges,
  clampFocus,
  nextUnlabeled,
  segmentText,
  styleClass,
  unvalidatedOnly,
} from "./state.js";

type View =
  | { kind: "list"; listing: DocumentListing; onlyUnvalidated: boolean }
  | { kind: "doc"; detail: DocumentDetail; focus: number; stats: AnaStats | null };

const api = new ApiClient();
let view: View | null = null;
// bumped on navigation so stale async completions are dropped
let epoch = 0;

function must<T extends HTMLElement>(element: T | null): T {
  if (element === null) {
    throw new Error("required element missing from the page");
  }
  return element;
}

const mainEl = must(document.getElementById("main"));
const bannerEl = must(document.getElementById("banner"));
const annotatorEl = must(document.getElementById("annotator")) as HTMLInputElement;

function el(tag: string, className?: string, text?: string): HTMLElement {
  const node = document.createElement(tag);
  if (className) {
    node.className = className;
  }
  if (text !== undefined) {
    node.textContent = text;
  }
  return node;
}

function showBanner(message: string): void {
  bannerEl.textContent = message;
  bannerEl.hidden = false;
}

function clearBanner(): void {
  bannerEl.hidden = true;
}

function describe(err: unknown): string {
  if (err instanceof ApiError) {
    return `API error ${err.status}: ${err.message}`;
  }
  return `API unreachable: ${err instanceof Error ? err.message : String(err)}`;
}

function annotator(): string {
  return annotatorEl.value.trim() || "expert";
}

/* ---------- document listing ---------- */

function renderList(): void {
  if (view?.kind !== "list") {
    return;
  }
  const current = view;
  mainEl.replaceChildren();

  const bar = el("div", "toolbar");
  const filterLabel = el("label");
  const filterBox = document.createElement("input");
  filterBox.type = "checkbox";
  filterBox.checked = current.onlyUnvalidated;
  filterBox.addEventListener("change", () => {
    current.onlyUnvalidated = filterBox.checked;
    renderList();
  });
  filterLabel.append(filterBox, " unvalidated only");
  bar.append(
    el("span", "corpus-name", `corpus: ${current.listing.corpus}`),
    filterLabel,
  );
  mainEl.append(bar);

  const table = el("table", "doc-table");
  const head = el("tr");
  for (const title of ["document", "date", "category", "status", "spans", "chars"]) {
    head.append(el("th", undefined, title));
  }
  table.append(head);
  for (const doc of unvalidatedOnly(current.listing.documents, current.onlyUnvalidated)) {
    const b = badges(doc);
    const row = el("tr", "doc-row");
    row.append(el("td", "doc-id", doc.id));
    row.append(el("td", undefined, doc.date ?? ""));
    const catCell = el("td");
    catCell.append(el("span", "badge badge-category", b.category));
    if (b.outOfDomain) {
      catCell.append(" ", el("span", "badge badge-out", "out of domain"));
    }
    row.append(catCell);
    const statusCell = el("td");
    statusCell.append(el("span", `badge badge-${b.validation}`, b.validation));
    row.append(statusCell);
    row.append(el("td", undefined, String(doc.occurrence_count)));
    row.append(el("td", undefined, String(doc.char_count)));
    row.addEventListener("click", () => {
      window.location.hash = `#/doc/${encodeURIComponent(doc.id)}`;
    });
    table.append(row);
  }
  mainEl.append(table);
}

/* ---------- labeling view ---------- */

function renderDoc(): void {
  if (view?.kind !== "doc") {
    return;
  }
  const current = view;
  const detail = current.detail;
  mainEl.replaceChildren();

  const header = el("div", "doc-header");
  const back = el("a", "back-link", "back to corpus") as HTMLAnchorElement;
  back.href = "#/";
  const b = badges(detail);
  const title = el("span", "doc-title", detail.id);
  const status = el("span", `badge badge-${b.validation}`, b.validation);
  const cat = el("span", "badge badge-category", `category ${b.category}`);
  header.append(back, title, status, cat);
  if (b.outOfDomain) {
    header.append(el("span", "badge badge-out", "out of domain"));
  }

  const controls = el("div", "verdict-controls");
  controls.append(el("span", undefined, "set:"));
  for (const category of [1, 2, 3]) {
    const btn = el("button", "verdict-btn", `category ${category}`);
    btn.addEventListener("click", () => {
      void postVerdict({ in_domain: true, category });
    });
    controls.append(btn);
  }
  const out = el("button", "verdict-btn", "out of domain");
  out.addEventListener("click", () => {
    void postVerdict({ in_domain: false, category: detail.category ?? 1 });
  });
  controls.append(out);
  header.append(controls);
  mainEl.append(header);

  const layout = el("div", "doc-layout");
  const textPane = el("div", "doc-text");
  segmentText(detail.text, detail.spans).forEach((segment) => {
    if (segment.kind === "text") {
      textPane.append(document.createTextNode(segment.text));
      return;
    }
    const index = detail.spans.findIndex((s) => s.id === segment.span.id);
    const mark = el("mark", styleClass(segment.span), segment.text);
    mark.dataset.index = String(index);
    mark.title = `${segment.span.term} [${segment.span.form}]`;
    if (index === current.focus) {
      mark.classList.add("focused");
    }
    mark.addEventListener("click", () => {
      current.focus = index;
      renderDoc();
    });
    textPane.append(mark);
  });
  layout.append(textPane);

  const sidebar = el("div", "sidebar");
  sidebar.append(el("h2", undefined, "live ANA/FP"));
  const readout = el("ul", "stats-readout");
  if (current.stats !== null) {
    for (const line of anaReadout(current.stats)) {
      readout.append(el("li", undefined, line));
    }
  } else {
    readout.append(el("li", undefined, "loading"));
  }
  sidebar.append(readout);
  sidebar.append(el("h2", undefined, "keys"));
  const help = el("ul", "key-help");
  for (const [key, label] of LABEL_KEYS) {
    help.append(el("li", undefined, `${key} ${label.replace(/_/g, " ")}`));
  }
  help.append(el("li", undefined, "n next unlabeled"));
  help.append(el("li", undefined, "j / k move focus"));
  help.append(el("li", undefined, "esc back to corpus"));
  sidebar.append(help);
  layout.append(sidebar);
  mainEl.append(layout);

  const focused = textPane.querySelector("mark.focused");
  if (focused !== null) {
    focused.scrollIntoView({ block: "nearest" });
  }
}

/* ---------- posting ---------- */

async function refreshStats(at: number): Promise<void> {
  const stats = await api.anaStats();
  if (epoch === at && view?.kind === "doc") {
    view.stats = stats;
  }
}

async function reconcile(at: number, record: WireRecord): Promise<void> {
  try {
    const acked: PostedRecord = await api.postAnnotation(record);
    if (epoch !== at || view?.kind !== "doc") {
      return;
    }
    view.detail = applyToDocument(view.detail, acked);
    await refreshStats(at);
    clearBanner();
  } catch (err) {
    showBanner(describe(err));
    if (epoch !== at || view?.kind !== "doc") {
      return;
    }
    // the optimistic guess was wrong: fall back to server truth
    const fresh = await api.getDocument(view.detail.id);
    if (epoch !== at || view?.kind !== "doc") {
      return;
    }
    view.detail = fresh;
  }
  renderDoc();
}

function postLabel(label: OccurrenceLabel): void {
  if (view?.kind !== "doc" || view.focus < 0) {
    return;
  }
  const span = view.detail.spans[view.focus];
  const record: WireRecord = {
    target: span.id,
    verdict: { label },
    annotator: annotator(),
  };
  // optimistic: recolor and advance before the server answers
  view.detail = applyToDocument(view.detail, {
    ...record,
    timestamp: new Date().toISOString(),
  });
  const next = nextUnlabeled(view.detail.spans, view.focus);
  if (next >= 0) {
    view.focus = next;
  }
  renderDoc();
  void reconcile(epoch, record);
}

function postVerdict(verdict: { in_domain: boolean; category: number }): void {
  if (view?.kind !== "doc") {
    return;
  }
  const record: WireRecord = {
    target: view.detail.id,
    verdict,
    annotator: annotator(),
  };
  view.detail = applyToDocument(view.detail, {
    ...record,
    timestamp: new Date().toISOString(),
  });
  renderDoc();
  void reconcile(epoch, record);
}

/* ---------- keyboard ---------- */

document.addEventListener("keydown", (event) => {
  if (view?.kind !== "doc" || event.target instanceof HTMLInputElement) {
    return;
  }
  const label = LABEL_KEYS.get(event.key);
  if (label !== undefined) {
    postLabel(label);
    event.preventDefault();
    return;
  }
  const current = view;
  switch (event.key) {
    case "n": {
      const next = nextUnlabeled(current.detail.spans, current.focus);
      if (next >= 0) {
        current.focus = next;
        renderDoc();
      }
      break;
    }
    case "j":
    case "ArrowRight":
      current.focus = clampFocus(current.detail.spans, current.focus + 1);
      renderDoc();
      break;
    case "k":
    case "ArrowLeft":
      current.focus = clampFocus(current.detail.spans, current.focus - 1);
      renderDoc();
      break;
    case "Escape":
      window.location.hash = "#/";
      break;
    default:
      return;
  }
  event.preventDefault();
});

/* ---------- routing ---------- */

async function route(): Promise<void> {
  const at = ++epoch;
  const hash = window.location.hash;
  try {
    const match = /^#\/doc\/(.+)$/.exec(hash);
    if (match !== null) {
      const id = decodeURIComponent(match[1]);
      const detail: DocumentDetail = await api.getDocument(id);
      if (epoch !== at) {
        return;
      }
      view = {
        kind: "doc",
        detail,
        focus: clampFocus(detail.spans, nextUnlabeled(detail.spans, -1)),
        stats: null,
      };
      clearBanner();
      renderDoc();
      await refreshStats(at);
      renderDoc();
      return;
    }
    const listing: DocumentListing = await api.listDocuments();
    if (epoch !== at) {
      return;
    }
    view = { kind: "list", listing, onlyUnvalidated: false };
    clearBanner();
    renderList();
  } catch (err) {
    if (epoch === at) {
      showBanner(describe(err));
    }
  }
}

window.addEventListener("hashchange", () => {
  void route();
});
void route();
