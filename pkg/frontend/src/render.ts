/** Ties the pipeline together: CSV in, SVG and PNG files out. */

import * as fs from "node:fs";
import * as path from "node:path";

import { parseResultsCsv } from "./csv.js";
import { buildCurves, Aggregation, DEFAULT_Y_FLOOR, XAxis } from "./series.js";
import { buildFigure } from "./figure.js";
import { figureToSvg } from "./svg.js";
import { encodePng, figureToRaster } from "./png.js";

export interface PlotSpec {
  csvPath: string;
  xAxis: XAxis;
  outPath: string;
  aggregation?: Aggregation;
  title?: string;
  width?: number;
  height?: number;
}

export interface RenderedFiles {
  svgPath: string;
  pngPath: string;
}

const X_LABELS: Record<XAxis, string> = {
  iter: "iteration",
  elapsed_ms: "elapsed ms",
};

/** Output pair derived from one requested path: sibling .png and .svg. */
export function outputPair(outPath: string): RenderedFiles {
  const ext = path.extname(outPath).toLowerCase();
  const stem = ext === ".png" || ext === ".svg" ? outPath.slice(0, -ext.length) : outPath;
  return { svgPath: `${stem}.svg`, pngPath: `${stem}.png` };
}

export function render(spec: PlotSpec): RenderedFiles {
  let text: string;
  try {
    text = fs.readFileSync(spec.csvPath, "utf-8");
  } catch (err) {
    throw new Error(`cannot read ${spec.csvPath}: ${(err as Error).message}`);
  }
  const rows = parseResultsCsv(text);
  const curves = buildCurves(rows, {
    xAxis: spec.xAxis,
    aggregation: spec.aggregation ?? "median",
    yFloor: DEFAULT_Y_FLOOR,
  });
  const title =
    spec.title ?? (rows.length > 0 ? `${rows[0].problem} comparison` : "comparison");
  const model = buildFigure(curves, {
    xLabel: X_LABELS[spec.xAxis],
    title,
    width: spec.width,
    height: spec.height,
  });
  const files = outputPair(spec.outPath);
  fs.writeFileSync(files.svgPath, figureToSvg(model), "utf-8");
  fs.writeFileSync(files.pngPath, encodePng(figureToRaster(model)));
  return files;
}
