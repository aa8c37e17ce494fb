/**
 * HTML renderers. Every function is a pure string transform of API data
 * plus view state, which is what makes the UI snapshot-testable.
 */

import type {
  ApiErrorDoc,
  BrowseDoc,
  DetailDoc,
  Paginated,
  ResultItem,
  StatsDoc,
} from "./types.js";
import {
  ALPHA_KEYS,
  barHeights,
  pageCount,
  rankedSections,
  scaleCloud,
  zeroFilledTimeline,
} from "./viewmodel.js";

export function escapeHtml(text: string): string {
  return text
    .replace(/&/g, "&amp;")
    .replace(/</g, "&lt;")
    .replace(/>/g, "&gt;")
    .replace(/"/g, "&quot;");
}

function detailHref(swId: string): string {
  return `#/software/${encodeURIComponent(swId)}`;
}

export function renderSearchForm(query: string, advanced = false): string {
  return `
<form id="search-form" class="search-form">
  <input type="search" name="q" value="${escapeHtml(query)}"
         placeholder="Search software by name, keyword, description" />
  <button type="submit">Search</button>
  <a href="#/advanced" class="advanced-link">advanced search</a>
  ${advanced ? renderAdvancedMask() : ""}
</form>`.trim();
}

export function renderAdvancedMask(): string {
  return `
<fieldset id="advanced-mask" class="advanced-mask">
  <label>Name <input name="name" /></label>
  <label>Keyword <input name="keyword" /></label>
  <label>MSC section <input name="msc" maxlength="2" pattern="[0-9]{2}" /></label>
  <label>Author <input name="author" /></label>
  <label>Year from <input name="year_from" type="number" /></label>
  <label>Year to <input name="year_to" type="number" /></label>
  <button type="submit">Search</button>
</fieldset>`.trim();
}

function renderResultRow(item: ResultItem): string {
  const description = item.description
    ? escapeHtml(item.description)
    : "<em>no description yet</em>";
  return `
  <li class="result-row">
    <a class="result-name" href="${detailHref(item.sw_id)}">${escapeHtml(item.name)}</a>
    <span class="result-refs">${item.total_references} referencing publications</span>
    <p class="result-description">${description}</p>
  </li>`;
}

export function renderResults(data: Paginated<ResultItem>): string {
  if (data.total === 0) {
    return `<section class="results empty-state">
  <p>No software matched this search.</p>
</section>`;
  }
  const rows = data.items.map(renderResultRow).join("\n");
  const pages = pageCount({ page: data.page, perPage: data.per_page, total: data.total });
  const pager = pages > 1
    ? `\n  <nav class="pager" data-page="${data.page}" data-pages="${pages}">
    <button data-nav="prev" ${data.page <= 1 ? "disabled" : ""}>previous</button>
    <span>page ${data.page} of ${pages}</span>
    <button data-nav="next" ${data.page >= pages ? "disabled" : ""}>next</button>
  </nav>`
    : "";
  return `<section class="results">
  <p class="result-count">${data.total} result${data.total === 1 ? "" : "s"}</p>
  <ol start="${(data.page - 1) * data.per_page + 1}">${rows}
  </ol>${pager}
</section>`;
}

export function renderError(error: ApiErrorDoc): string {
  return `<section class="error-state" role="alert">
  <strong>${escapeHtml(error.error_code)}</strong>
  <p>${escapeHtml(error.message)}</p>
</section>`;
}

export function renderNotFound(swId: string): string {
  return `<section class="error-state not-found">
  <h2>Not found</h2>
  <p>No software with id <code>${escapeHtml(swId)}</code> is in the catalog.</p>
  <p><a href="#/">back to search</a></p>
</section>`;
}

function renderCloud(cloud: [string, number][]): string {
  const entries = scaleCloud(cloud);
  if (entries.length === 0) {
    return `<p class="empty-state">no keywords yet</p>`;
  }
  const spans = entries
    .map((e) => `<span class="cloud-word" style="font-size:${e.size}px"` +
                ` title="${e.weight} publications">${escapeHtml(e.text)}</span>`)
    .join("\n    ");
  return `<div class="keyword-cloud">\n    ${spans}\n  </div>`;
}

function renderTimeline(byYear: Record<string, number>): string {
  const bars = zeroFilledTimeline(byYear);
  if (bars.length === 0) {
    return `<p class="empty-state">no references yet</p>`;
  }
  const heights = barHeights(bars);
  const columns = bars
    .map((bar, i) => `<div class="bar" data-year="${bar.year}" data-count="${bar.count}"` +
                     ` style="height:${heights[i]}px" title="${bar.year}: ${bar.count}"></div>`)
    .join("\n    ");
  return `<div class="timeline" role="img" aria-label="references per year">
    ${columns}
  </div>`;
}

function renderSections(doc: DetailDoc): string {
  const ranked = rankedSections(doc.profile.msc_distribution);
  if (ranked.length === 0) {
    return `<p class="empty-state">no classification data</p>`;
  }
  const rows = ranked
    .map((s) => `<li><a href="#/browse/msc/${s.section}">MSC ${s.section}</a>` +
                ` <span class="count">${s.count}</span></li>`)
    .join("\n    ");
  return `<ul class="msc-sections">\n    ${rows}\n  </ul>`;
}

function renderSimilar(doc: DetailDoc): string {
  if (doc.profile.similar.length === 0) {
    return `<p class="empty-state">no similar software found</p>`;
  }
  const rows = doc.profile.similar
    .map((s) => `<li><a href="${detailHref(s.sw_id)}">${escapeHtml(s.name)}</a>` +
                ` <span class="score">${s.score.toFixed(3)}</span></li>`)
    .join("\n    ");
  return `<ul class="similar-software">\n    ${rows}\n  </ul>`;
}

function renderPublications(doc: DetailDoc): string {
  if (doc.publications.length === 0) {
    return `<p class="empty-state">no referencing publications</p>`;
  }
  const rows = doc.publications
    .map((p) => `<li>${escapeHtml(p.authors.join(", "))} (${p.year}).` +
                ` <a href="${escapeHtml(p.link)}" rel="external">${escapeHtml(p.title)}</a></li>`)
    .join("\n    ");
  return `<ol class="publications">\n    ${rows}\n  </ol>`;
}

function renderHomepage(doc: DetailDoc): string {
  if (!doc.homepage) {
    return `<p class="empty-state">no homepage on record</p>`;
  }
  const status = doc.homepage_status;
  const badge = status
    ? `<span class="badge badge-${status.outcome.toLowerCase()}"` +
      ` title="checked ${escapeHtml(status.checked_at)}">${escapeHtml(status.outcome)}</span>`
    : `<span class="badge badge-unchecked">unchecked</span>`;
  return `<p class="homepage"><a href="${escapeHtml(doc.homepage)}" rel="external">` +
         `${escapeHtml(doc.homepage)}</a> ${badge}</p>`;
}

export function renderDetail(doc: DetailDoc): string {
  const description = doc.description
    ? `<p class="description">${escapeHtml(doc.description)}</p>`
    : `<p class="description empty-state">no description yet</p>`;
  const aliases = doc.aliases.length
    ? `<p class="aliases">also known as: ${doc.aliases.map(escapeHtml).join(", ")}</p>`
    : "";
  return `<article class="detail" data-sw-id="${escapeHtml(doc.sw_id)}">
  <h2>${escapeHtml(doc.name)}</h2>
  ${description}
  ${aliases}
  <h3>Homepage</h3>
  ${renderHomepage(doc)}
  <h3>Keyword cloud</h3>
  ${renderCloud(doc.profile.keyword_cloud)}
  <h3>References over time (${doc.profile.total_references} total)</h3>
  ${renderTimeline(doc.profile.references_by_year)}
  <h3>Most important MSC sections</h3>
  ${renderSections(doc)}
  <h3>Similar software</h3>
  ${renderSimilar(doc)}
  <h3>Referencing publications</h3>
  ${renderPublications(doc)}
</article>`;
}

export function renderBrowseIndex(stats: StatsDoc): string {
  const sections = stats.top_msc_sections
    .map((s) => `<li><a href="#/browse/msc/${s.section}">MSC ${s.section}</a>` +
                ` <span class="count">${s.count}</span></li>`)
    .join("\n    ");
  const alpha = ALPHA_KEYS
    .map((k) => `<a class="alpha-key" href="#/browse/alpha/${k}">${k.toUpperCase()}</a>`)
    .join(" ");
  return `<section class="browse-index">
  <p class="stats-line">${stats.software_count} software packages,` +
    ` ${stats.publication_count} publications indexed</p>
  <h3>By MSC section</h3>
  <ul class="msc-grid">
    ${sections}
  </ul>
  <h3>Alphabetical</h3>
  <nav class="alpha-bar">${alpha}</nav>
</section>`;
}

export function renderBrowseListing(kind: "msc" | "alpha", key: string,
                                    doc: BrowseDoc): string {
  const heading = kind === "msc" ? `MSC section ${escapeHtml(key)}`
                                 : `Names starting with "${escapeHtml(key.toUpperCase())}"`;
  if (doc.items.length === 0) {
    return `<section class="browse-listing empty-state">
  <h2>${heading}</h2>
  <p>Nothing here yet.</p>
</section>`;
  }
  const rows = doc.items.map(renderResultRow).join("\n");
  return `<section class="browse-listing">
  <h2>${heading}</h2>
  <ol>${rows}
  </ol>
</section>`;
}
