import { readFileSync } from "node:fs";
import { join } from "node:path";
import { describe, expect, it } from "vitest";

import { fromFlat, mm4, portableSincos, toFlat } from "../src/portable";

const cases = JSON.parse(
  readFileSync(join(__dirname, "fixtures", "portable_cases.json"), "utf-8")
);

describe("portable trig", () => {
  it("matches the producer bit for bit", () => {
    for (const [x, s, c] of cases.trig as [number, number, number][]) {
      const [ts, tc] = portableSincos(x);
      expect(ts).toBe(s);
      expect(tc).toBe(c);
    }
  });

  it("rejects non-finite angles", () => {
    expect(() => portableSincos(Infinity)).toThrow();
  });
});

describe("portable 4x4 product", () => {
  it("matches the producer bit for bit", () => {
    for (const { a, b, ab } of cases.products) {
      const got = toFlat(mm4(fromFlat(a), fromFlat(b)));
      for (let i = 0; i < 16; i++) {
        expect(got[i]).toBe(ab[i]);
      }
    }
  });
});
