/**
 * Geometry shared by the SVG and PNG backends: one computed model holds the
 * pixel-space curves, tick marks and legend so both outputs agree exactly.
 */

import { Curve } from "./series.js";
import { linearScale, logScale } from "./scale.js";

export interface FigureTick {
  pixel: number;
  label: string;
}

export interface FigureCurve {
  label: string;
  color: string;
  points: Array<[number, number]>;
}

export interface FigureModel {
  width: number;
  height: number;
  plotLeft: number;
  plotRight: number;
  plotTop: number;
  plotBottom: number;
  title: string;
  xLabel: string;
  yLabel: string;
  xTicks: FigureTick[];
  yTicks: FigureTick[];
  curves: FigureCurve[];
}

export const ALGORITHM_COLORS: Record<string, string> = {
  misegm: "#d62728",
  mitegm: "#1f77b4",
  masegm: "#ff7f0e",
  mategm: "#2ca02c",
  hsegm: "#9467bd",
  vsegm: "#8c564b",
  tvegm: "#e377c2",
};

const FALLBACK_COLORS = ["#17becf", "#bcbd22", "#7f7f7f", "#393b79", "#637939"];

export function colorFor(algorithm: string, index: number): string {
  return ALGORITHM_COLORS[algorithm] ?? FALLBACK_COLORS[index % FALLBACK_COLORS.length];
}

export interface FigureOptions {
  width?: number;
  height?: number;
  title?: string;
  xLabel: string;
  colors?: Record<string, string>;
}

export function buildFigure(curves: Curve[], options: FigureOptions): FigureModel {
  const width = options.width ?? 800;
  const height = options.height ?? 500;
  const plotLeft = 76;
  const plotRight = width - 24;
  const plotTop = 40;
  const plotBottom = height - 56;

  const allX = curves.flatMap((c) => c.xs);
  const allY = curves.flatMap((c) => c.ys);
  const xScale = linearScale(Math.min(...allX), Math.max(...allX), plotLeft, plotRight);
  // y grows downward in pixel space, so the log scale maps onto [bottom, top]
  const yScale = logScale(Math.min(...allY), Math.max(...allY), plotBottom, plotTop);

  const figureCurves: FigureCurve[] = curves.map((curve, i) => ({
    label: curve.algorithm,
    color: options.colors?.[curve.algorithm] ?? colorFor(curve.algorithm, i),
    points: curve.xs.map((x, k) => [xScale.toPixel(x), yScale.toPixel(curve.ys[k])]),
  }));

  return {
    width,
    height,
    plotLeft,
    plotRight,
    plotTop,
    plotBottom,
    title: options.title ?? "",
    xLabel: options.xLabel,
    yLabel: "error",
    xTicks: xScale.ticks.map((t) => ({ pixel: xScale.toPixel(t), label: xScale.format(t) })),
    yTicks: yScale.ticks.map((t) => ({ pixel: yScale.toPixel(t), label: yScale.format(t) })),
    curves: figureCurves,
  };
}
