import { describe, expect, it } from "vitest";

import { ResultRow } from "../src/csv.js";
import { buildCurves, DEFAULT_Y_FLOOR } from "../src/series.js";

function row(partial: Partial<ResultRow> & { algorithm: string; iter: number }): ResultRow {
  return {
    problem: "ex1",
    trial: 0,
    error: 1.0,
    residual: 0.5,
    lambda: 1.0,
    theta: 0.0,
    elapsedMs: partial.iter * 0.1,
    ...partial,
  };
}

describe("buildCurves", () => {
  it("builds one curve per algorithm ordered by iteration", () => {
    const rows = [
      row({ algorithm: "misegm", iter: 2, error: 0.5 }),
      row({ algorithm: "misegm", iter: 1, error: 1.0 }),
      row({ algorithm: "hsegm", iter: 1, error: 2.0 }),
    ];
    const curves = buildCurves(rows, { xAxis: "iter", aggregation: "single", yFloor: 1e-16 });
    expect(curves.map((c) => c.algorithm)).toEqual(["misegm", "hsegm"]);
    expect(curves[0].xs).toEqual([1, 2]);
    expect(curves[0].ys).toEqual([1.0, 0.5]);
  });

  it("truncates a curve at the failed sentinel", () => {
    const rows = [
      row({ algorithm: "vsegm", iter: 1, error: 1.0 }),
      row({ algorithm: "vsegm", iter: 2, error: 0.5 }),
      row({ algorithm: "vsegm", iter: 3, error: NaN }),
      row({ algorithm: "tvegm", iter: 1, error: 3.0 }),
    ];
    const curves = buildCurves(rows, { xAxis: "iter", aggregation: "single", yFloor: 1e-16 });
    const vsegm = curves.find((c) => c.algorithm === "vsegm");
    expect(vsegm?.xs).toEqual([1, 2]); // sentinel row dropped
  });

  it("clamps exact zeros up to the log floor", () => {
    const rows = [row({ algorithm: "misegm", iter: 1, error: 0.0 })];
    const curves = buildCurves(rows, {
      xAxis: "iter",
      aggregation: "single",
      yFloor: DEFAULT_Y_FLOOR,
    });
    expect(curves[0].ys[0]).toBe(DEFAULT_Y_FLOOR);
  });

  it("uses elapsed time as abscissa when asked", () => {
    const rows = [
      row({ algorithm: "misegm", iter: 1, error: 1.0, elapsedMs: 0.5 }),
      row({ algorithm: "misegm", iter: 2, error: 0.5, elapsedMs: 1.25 }),
    ];
    const curves = buildCurves(rows, {
      xAxis: "elapsed_ms",
      aggregation: "single",
      yFloor: 1e-16,
    });
    expect(curves[0].xs).toEqual([0.5, 1.25]);
    expect(curves[0].ys).toEqual([1.0, 0.5]); // same errors, different axis
  });

  it("takes the median across trials per iteration", () => {
    const rows = [
      row({ algorithm: "misegm", trial: 0, iter: 1, error: 1.0 }),
      row({ algorithm: "misegm", trial: 1, iter: 1, error: 3.0 }),
      row({ algorithm: "misegm", trial: 2, iter: 1, error: 100.0 }),
      row({ algorithm: "misegm", trial: 0, iter: 2, error: 0.25 }),
      row({ algorithm: "misegm", trial: 1, iter: 2, error: 0.75 }),
    ];
    const curves = buildCurves(rows, { xAxis: "iter", aggregation: "median", yFloor: 1e-16 });
    expect(curves[0].xs).toEqual([1, 2]);
    expect(curves[0].ys).toEqual([3.0, 0.5]);
  });

  it("single aggregation picks the lowest trial index", () => {
    const rows = [
      row({ algorithm: "misegm", trial: 1, iter: 1, error: 9.0 }),
      row({ algorithm: "misegm", trial: 0, iter: 1, error: 1.0 }),
    ];
    const curves = buildCurves(rows, { xAxis: "iter", aggregation: "single", yFloor: 1e-16 });
    expect(curves[0].ys).toEqual([1.0]);
  });

  it("rejects empty input", () => {
    expect(() =>
      buildCurves([], { xAxis: "iter", aggregation: "single", yFloor: 1e-16 }),
    ).toThrowError(/no data rows/);
  });

  it("rejects input whose only rows are sentinels", () => {
    const rows = [row({ algorithm: "misegm", iter: 1, error: NaN })];
    expect(() =>
      buildCurves(rows, { xAxis: "iter", aggregation: "single", yFloor: 1e-16 }),
    ).toThrowError(/no plottable points/);
  });
});
