/** Pure view-model helpers; everything here is derived solely from API data. */

export interface CloudEntry {
  text: string;
  weight: number;
  /** font size in px, linear in the weight */
  size: number;
}

export const CLOUD_MIN_PX = 12;
export const CLOUD_MAX_PX = 32;

/**
 * Linear font scale: the smallest observed weight maps to CLOUD_MIN_PX,
 * the largest to CLOUD_MAX_PX. A single-weight cloud sits at the middle
 * of the range so it reads as neutral emphasis.
 */
export function scaleCloud(cloud: [string, number][],
                           minPx: number = CLOUD_MIN_PX,
                           maxPx: number = CLOUD_MAX_PX): CloudEntry[] {
  if (cloud.length === 0) return [];
  const weights = cloud.map(([, w]) => w);
  const lo = Math.min(...weights);
  const hi = Math.max(...weights);
  return cloud.map(([text, weight]) => {
    const size = hi === lo
      ? Math.round((minPx + maxPx) / 2)
      : Math.round(minPx + ((weight - lo) * (maxPx - minPx)) / (hi - lo));
    return { text, weight, size };
  });
}

export interface TimelineBar {
  year: number;
  count: number;
}

/** Every year from the earliest to the latest observed, zero-filled. */
export function zeroFilledTimeline(byYear: Record<string, number>): TimelineBar[] {
  const years = Object.keys(byYear).map(Number).filter(Number.isFinite);
  if (years.length === 0) return [];
  const lo = Math.min(...years);
  const hi = Math.max(...years);
  const bars: TimelineBar[] = [];
  for (let year = lo; year <= hi; year++) {
    bars.push({ year, count: byYear[String(year)] ?? 0 });
  }
  return bars;
}

/** Bar heights in px, tallest bar pinned to maxPx. */
export function barHeights(bars: TimelineBar[], maxPx = 80): number[] {
  const top = Math.max(0, ...bars.map((b) => b.count));
  if (top === 0) return bars.map(() => 0);
  return bars.map((b) => Math.round((b.count / top) * maxPx));
}

/** MSC sections ordered by count descending, then section ascending. */
export function rankedSections(distribution: Record<string, { count: number }>):
    { section: string; count: number }[] {
  return Object.entries(distribution)
    .map(([section, entry]) => ({ section, count: entry.count }))
    .sort((a, b) => b.count - a.count || a.section.localeCompare(b.section));
}

export const ALPHA_KEYS: string[] = [
  ..."abcdefghijklmnopqrstuvwxyz".split(""),
  ..."0123456789".split(""),
];

export interface PageState {
  page: number;
  perPage: number;
  total: number;
}

export function pageCount(state: PageState): number {
  return Math.max(1, Math.ceil(state.total / state.perPage));
}
