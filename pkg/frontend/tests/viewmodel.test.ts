import { describe, expect, it } from "vitest";

import {
  CLOUD_MAX_PX,
  CLOUD_MIN_PX,
  barHeights,
  pageCount,
  rankedSections,
  scaleCloud,
  zeroFilledTimeline,
} from "../src/viewmodel.js";

describe("scaleCloud", () => {
  it("maps weights linearly onto the fixed size range", () => {
    const entries = scaleCloud([["big", 10], ["mid", 6], ["small", 2]]);
    expect(entries.map((e) => e.size)).toEqual([
      CLOUD_MAX_PX,
      (CLOUD_MIN_PX + CLOUD_MAX_PX) / 2,
      CLOUD_MIN_PX,
    ]);
  });

  it("puts the largest font on the heaviest keyword", () => {
    // weights {2, 1, 1}: the weight-2 entry must carry the largest font
    const entries = scaleCloud([["two", 2], ["one-a", 1], ["one-b", 1]]);
    const sizes = new Map(entries.map((e) => [e.text, e.size]));
    expect(sizes.get("two")).toBe(CLOUD_MAX_PX);
    expect(sizes.get("one-a")).toBe(CLOUD_MIN_PX);
    expect(sizes.get("one-b")).toBe(CLOUD_MIN_PX);
  });

  it("degenerates to the midpoint when all weights are equal", () => {
    const entries = scaleCloud([["a", 3], ["b", 3]]);
    for (const entry of entries) {
      expect(entry.size).toBe(Math.round((CLOUD_MIN_PX + CLOUD_MAX_PX) / 2));
    }
  });

  it("handles the empty cloud", () => {
    expect(scaleCloud([])).toEqual([]);
  });
});

describe("zeroFilledTimeline", () => {
  it("renders every year from min to max observed, zero-filled", () => {
    const bars = zeroFilledTimeline({ "2010": 2, "2012": 1 });
    expect(bars).toEqual([
      { year: 2010, count: 2 },
      { year: 2011, count: 0 },
      { year: 2012, count: 1 },
    ]);
  });

  it("single year yields a single bar", () => {
    expect(zeroFilledTimeline({ "2005": 4 })).toEqual([{ year: 2005, count: 4 }]);
  });

  it("empty input yields no bars", () => {
    expect(zeroFilledTimeline({})).toEqual([]);
  });
});

describe("barHeights", () => {
  it("pins the tallest bar to the maximum height", () => {
    const bars = [{ year: 2010, count: 2 }, { year: 2011, count: 0 },
                  { year: 2012, count: 1 }];
    expect(barHeights(bars, 80)).toEqual([80, 0, 40]);
  });
});

describe("rankedSections", () => {
  it("orders by count descending then section ascending", () => {
    const ranked = rankedSections({
      "65": { count: 3 }, "13": { count: 5 }, "11": { count: 3 },
    });
    expect(ranked.map((s) => s.section)).toEqual(["13", "11", "65"]);
  });
});

describe("pageCount", () => {
  it("rounds up and never drops below one page", () => {
    expect(pageCount({ page: 1, perPage: 20, total: 0 })).toBe(1);
    expect(pageCount({ page: 1, perPage: 20, total: 20 })).toBe(1);
    expect(pageCount({ page: 1, perPage: 20, total: 21 })).toBe(2);
  });
});
