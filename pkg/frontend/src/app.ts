/**
 * Browser bootstrap: a hash router over the pure renderers.
 *
 * Views:  #/                      search page
 *         #/advanced              search with the advanced mask open
 *         #/software/<sw_id>      detail page
 *         #/browse                MSC grid and A-Z bar
 *         #/browse/msc/<section>  section listing
 *         #/browse/alpha/<key>    alphabetical listing
 */

import { ApiClient, ApiError } from "./api.js";
import {
  renderBrowseIndex,
  renderBrowseListing,
  renderDetail,
  renderError,
  renderNotFound,
  renderResults,
  renderSearchForm,
} from "./render.js";

declare global {
  interface Window {
    SWCATALOG_API_BASE?: string;
  }
}

const api = new ApiClient(window.SWCATALOG_API_BASE ?? "");
const root = document.getElementById("app") as HTMLElement;

// monotonically increasing token: a stale response never overwrites a
// newer view (in-flight requests are superseded on navigation)
let navToken = 0;

function setContent(token: number, html: string): void {
  if (token === navToken) {
    root.innerHTML = html;
  }
}

function errorHtml(err: unknown): string {
  if (err instanceof ApiError) {
    return renderError(err.doc);
  }
  return renderError({ error_code: "NetworkError", message: String(err) });
}

interface Route {
  view: string;
  arg: string;
  query: URLSearchParams;
}

function parseHash(): Route {
  const raw = window.location.hash.replace(/^#\/?/, "");
  const [path, queryText] = raw.split("?", 2);
  const query = new URLSearchParams(queryText ?? "");
  const parts = path.split("/").filter((p) => p.length > 0);
  if (parts[0] === "software" && parts.length >= 2) {
    return { view: "detail", arg: decodeURIComponent(parts.slice(1).join("/")), query };
  }
  if (parts[0] === "browse" && parts[1] === "msc" && parts[2]) {
    return { view: "browse-msc", arg: parts[2], query };
  }
  if (parts[0] === "browse" && parts[1] === "alpha" && parts[2]) {
    return { view: "browse-alpha", arg: parts[2], query };
  }
  if (parts[0] === "browse") {
    return { view: "browse", arg: "", query };
  }
  if (parts[0] === "advanced") {
    return { view: "advanced", arg: "", query };
  }
  return { view: "search", arg: "", query };
}

async function showSearch(token: number, query: URLSearchParams,
                          advanced: boolean): Promise<void> {
  const q = query.get("q") ?? "";
  const page = Number(query.get("page") ?? "1");
  let body = "";
  if (advanced && [...query.keys()].some((k) => k !== "q" && k !== "page")) {
    try {
      const data = await api.advanced({
        name: query.get("name") ?? undefined,
        keyword: query.get("keyword") ?? undefined,
        msc: query.get("msc") ?? undefined,
        author: query.get("author") ?? undefined,
        year_from: query.get("year_from") ?? undefined,
        year_to: query.get("year_to") ?? undefined,
        page,
      });
      body = renderResults(data);
    } catch (err) {
      body = errorHtml(err);
    }
  } else if (q.trim()) {
    try {
      body = renderResults(await api.search(q, page));
    } catch (err) {
      body = errorHtml(err);
    }
  }
  setContent(token, renderSearchForm(q, advanced) + "\n" + body);
}

async function showDetail(token: number, swId: string): Promise<void> {
  try {
    setContent(token, renderDetail(await api.detail(swId)));
  } catch (err) {
    if (err instanceof ApiError && err.status === 404) {
      setContent(token, renderNotFound(swId));
    } else {
      setContent(token, errorHtml(err));
    }
  }
}

async function showBrowseIndex(token: number): Promise<void> {
  try {
    setContent(token, renderBrowseIndex(await api.stats()));
  } catch (err) {
    setContent(token, errorHtml(err));
  }
}

async function showBrowseListing(token: number, kind: "msc" | "alpha",
                                 key: string): Promise<void> {
  try {
    const doc = kind === "msc" ? await api.browseMsc(key) : await api.browseAlpha(key);
    setContent(token, renderBrowseListing(kind, key, doc));
  } catch (err) {
    if (err instanceof ApiError && err.status === 400) {
      setContent(token, renderNotFound(key));
    } else {
      setContent(token, errorHtml(err));
    }
  }
}

function navigate(): void {
  const token = ++navToken;
  const route = parseHash();
  switch (route.view) {
    case "detail":
      void showDetail(token, route.arg);
      break;
    case "browse":
      void showBrowseIndex(token);
      break;
    case "browse-msc":
      void showBrowseListing(token, "msc", route.arg);
      break;
    case "browse-alpha":
      void showBrowseListing(token, "alpha", route.arg);
      break;
    case "advanced":
      void showSearch(token, route.query, true);
      break;
    default:
      void showSearch(token, route.query, false);
  }
}

function wireEvents(): void {
  root.addEventListener("submit", (event) => {
    const form = event.target as HTMLFormElement;
    if (form.id !== "search-form") return;
    event.preventDefault();
    const data = new FormData(form);
    const params = new URLSearchParams();
    for (const [key, value] of data.entries()) {
      if (typeof value === "string" && value.trim()) params.set(key, value.trim());
    }
    const advanced = form.querySelector("#advanced-mask") !== null;
    window.location.hash = `#/${advanced ? "advanced" : ""}?${params}`;
  });

  root.addEventListener("click", (event) => {
    const button = (event.target as HTMLElement).closest("button[data-nav]");
    if (!(button instanceof HTMLButtonElement) || button.disabled) return;
    const route = parseHash();
    const page = Number(route.query.get("page") ?? "1");
    const next = button.dataset.nav === "next" ? page + 1 : Math.max(1, page - 1);
    route.query.set("page", String(next));
    const prefix = route.view === "advanced" ? "advanced" : "";
    window.location.hash = `#/${prefix}?${route.query}`;
  });
}

export function start(): void {
  wireEvents();
  window.addEventListener("hashchange", navigate);
  navigate();
}

start();
