import { describe, expect, it } from "vitest";

import { bandRows } from "../src/zoom.js";

describe("zoom ladder", () => {
  it("keeps exact labels while laying out percentages", () => {
    const rows = bandRows([
      { lower: "0", upper: "1" },
      { lower: "1/2", upper: "3/4" },
      { lower: "5/8", upper: "11/16" },
    ]);
    expect(rows).toHaveLength(2);
    expect(rows[0]!.lower).toBe("1/2");
    expect(rows[0]!.upper).toBe("3/4");
    expect(rows[0]!.leftPct).toBeCloseTo(50, 6);
    expect(rows[0]!.widthPct).toBeCloseTo(25, 6);
    // the second row is rescaled to its parent: same shrink factor again,
    // so late rounds stay visible (this is the log-zoom property)
    expect(rows[1]!.leftPct).toBeCloseTo(50, 6);
    expect(rows[1]!.widthPct).toBeCloseTo(25, 6);
    expect(rows[1]!.parentLower).toBe("1/2");
  });

  it("survives very deep enclosures without blanking", () => {
    const bands = [{ lower: "0", upper: "1" }];
    let lo = 0n;
    let hi = 1n;
    let den = 1n;
    for (let i = 0; i < 40; i++) {
      // keep the right half each time: linear layout would vanish at 2^-40
      const mid = lo + hi;
      hi *= 2n;
      lo = mid;
      den *= 2n;
      bands.push({ lower: `${lo}/${den}`, upper: `${hi}/${den}` });
    }
    const rows = bandRows(bands);
    expect(rows).toHaveLength(40);
    for (const row of rows) {
      expect(row.widthPct).toBeGreaterThan(0.3);
    }
  });

  it("single band yields no rows", () => {
    expect(bandRows([{ lower: "0", upper: "1" }])).toEqual([]);
  });
});
