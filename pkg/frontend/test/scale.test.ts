import { describe, expect, it } from "vitest";

import { linearScale, logScale } from "../src/scale.js";

describe("linearScale", () => {
  it("maps the domain endpoints onto the pixel range", () => {
    const s = linearScale(0, 200, 50, 750);
    expect(s.toPixel(0)).toBe(50);
    expect(s.toPixel(200)).toBe(750);
    expect(s.toPixel(100)).toBe(400);
  });

  it("produces ticks inside the domain with a sane count", () => {
    const s = linearScale(0, 200, 0, 100);
    expect(s.ticks.length).toBeGreaterThanOrEqual(3);
    expect(s.ticks.length).toBeLessThanOrEqual(12);
    for (const t of s.ticks) {
      expect(t).toBeGreaterThanOrEqual(0);
      expect(t).toBeLessThanOrEqual(200);
    }
    expect(s.ticks).toContain(0);
    expect(s.ticks).toContain(200);
  });

  it("handles a degenerate domain", () => {
    const s = linearScale(5, 5, 0, 100);
    expect(Number.isFinite(s.toPixel(5))).toBe(true);
    expect(s.ticks.length).toBeGreaterThan(0);
  });

  it("formats compactly", () => {
    const s = linearScale(0, 1, 0, 1);
    expect(s.format(0)).toBe("0");
    expect(s.format(0.2)).toBe("0.2");
    expect(s.format(2e-7)).toBe("2.0e-7");
  });
});

describe("logScale", () => {
  it("places decade ticks and formats them as powers of ten", () => {
    const s = logScale(1e-8, 1e2, 400, 0);
    expect(s.ticks[0]).toBeCloseTo(1e-8);
    expect(s.ticks[s.ticks.length - 1]).toBeCloseTo(1e2);
    expect(s.format(1e-4)).toBe("1e-4");
    expect(s.ticks.length).toBeLessThanOrEqual(12);
  });

  it("is monotone decreasing in pixel space when inverted", () => {
    const s = logScale(1e-6, 1.0, 400, 0); // bottom to top, like a y axis
    expect(s.toPixel(1e-6)).toBe(400);
    expect(s.toPixel(1.0)).toBeCloseTo(0);
    expect(s.toPixel(1e-3)).toBeCloseTo(200);
  });

  it("pads a degenerate domain instead of dividing by zero", () => {
    const s = logScale(0.5, 0.5, 100, 0);
    expect(Number.isFinite(s.toPixel(0.5))).toBe(true);
  });

  it("rejects nonpositive bounds", () => {
    expect(() => logScale(0, 1, 0, 1)).toThrowError(/positive/);
  });
});
