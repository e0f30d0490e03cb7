/**
 * Turns trace rows into drawable curves: one curve per algorithm, points
 * ordered by the chosen x axis, errors clamped away from zero for the log
 * scale, and failed-run sentinel rows truncating their curve.
 */

import { ResultRow } from "./csv.js";

export type XAxis = "iter" | "elapsed_ms";
export type Aggregation = "single" | "median";

export interface Curve {
  algorithm: string;
  xs: number[];
  ys: number[];
}

export interface SeriesOptions {
  xAxis: XAxis;
  aggregation: Aggregation;
  /** log-axis floor; exact zeros are clamped up to this value */
  yFloor: number;
}

export const DEFAULT_Y_FLOOR = 1e-16;

function median(values: number[]): number {
  const sorted = [...values].sort((a, b) => a - b);
  const mid = Math.floor(sorted.length / 2);
  return sorted.length % 2 === 1 ? sorted[mid] : 0.5 * (sorted[mid - 1] + sorted[mid]);
}

/** Per-trial rows sorted by iteration and cut at the first sentinel row. */
function cleanTrial(rows: ResultRow[]): ResultRow[] {
  const sorted = [...rows].sort((a, b) => a.iter - b.iter);
  const cut = sorted.findIndex((r) => Number.isNaN(r.error));
  return cut === -1 ? sorted : sorted.slice(0, cut);
}

export function buildCurves(rows: ResultRow[], options: SeriesOptions): Curve[] {
  if (rows.length === 0) {
    throw new Error("no data rows");
  }
  const byAlgorithm = new Map<string, Map<number, ResultRow[]>>();
  for (const row of rows) {
    let trials = byAlgorithm.get(row.algorithm);
    if (!trials) {
      trials = new Map();
      byAlgorithm.set(row.algorithm, trials);
    }
    let trialRows = trials.get(row.trial);
    if (!trialRows) {
      trialRows = [];
      trials.set(row.trial, trialRows);
    }
    trialRows.push(row);
  }

  const curves: Curve[] = [];
  for (const [algorithm, trials] of byAlgorithm) {
    const cleaned = new Map<number, ResultRow[]>();
    for (const [trial, trialRows] of trials) {
      cleaned.set(trial, cleanTrial(trialRows));
    }
    let points: { x: number; y: number }[];
    if (options.aggregation === "single" || cleaned.size === 1) {
      const first = Math.min(...cleaned.keys());
      points = (cleaned.get(first) ?? []).map((r) => ({
        x: options.xAxis === "iter" ? r.iter : r.elapsedMs,
        y: r.error,
      }));
    } else {
      // median across trials, matched up by iteration index
      const byIter = new Map<number, ResultRow[]>();
      for (const trialRows of cleaned.values()) {
        for (const r of trialRows) {
          const bucket = byIter.get(r.iter);
          if (bucket) {
            bucket.push(r);
          } else {
            byIter.set(r.iter, [r]);
          }
        }
      }
      points = [...byIter.entries()]
        .sort((a, b) => a[0] - b[0])
        .map(([iter, bucket]) => ({
          x: options.xAxis === "iter" ? iter : median(bucket.map((r) => r.elapsedMs)),
          y: median(bucket.map((r) => r.error)),
        }));
    }
    points.sort((a, b) => a.x - b.x);
    if (points.length > 0) {
      curves.push({
        algorithm,
        xs: points.map((p) => p.x),
        ys: points.map((p) => Math.max(p.y, options.yFloor)),
      });
    }
  }
  if (curves.length === 0) {
    throw new Error("no plottable points after removing failed runs");
  }
  return curves;
}
