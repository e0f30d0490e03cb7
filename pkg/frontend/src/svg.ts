/** SVG backend: serialises a figure model as a standalone SVG document. */

import { FigureModel } from "./figure.js";

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function px(value: number): string {
  return value.toFixed(2);
}

export function figureToSvg(model: FigureModel): string {
  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${model.width}" ` +
      `height="${model.height}" viewBox="0 0 ${model.width} ${model.height}" ` +
      `font-family="monospace" font-size="12">`,
  );
  parts.push(`<rect width="${model.width}" height="${model.height}" fill="white"/>`);

  // gridlines
  for (const tick of model.yTicks) {
    parts.push(
      `<line x1="${px(model.plotLeft)}" y1="${px(tick.pixel)}" x2="${px(model.plotRight)}" ` +
        `y2="${px(tick.pixel)}" stroke="#dddddd" stroke-width="1"/>`,
    );
  }
  for (const tick of model.xTicks) {
    parts.push(
      `<line x1="${px(tick.pixel)}" y1="${px(model.plotTop)}" x2="${px(tick.pixel)}" ` +
        `y2="${px(model.plotBottom)}" stroke="#eeeeee" stroke-width="1"/>`,
    );
  }

  // axes
  parts.push(
    `<line x1="${px(model.plotLeft)}" y1="${px(model.plotBottom)}" ` +
      `x2="${px(model.plotRight)}" y2="${px(model.plotBottom)}" stroke="black"/>`,
    `<line x1="${px(model.plotLeft)}" y1="${px(model.plotTop)}" ` +
      `x2="${px(model.plotLeft)}" y2="${px(model.plotBottom)}" stroke="black"/>`,
  );

  // tick labels
  for (const tick of model.xTicks) {
    parts.push(
      `<text x="${px(tick.pixel)}" y="${px(model.plotBottom + 18)}" ` +
        `text-anchor="middle">${esc(tick.label)}</text>`,
    );
  }
  for (const tick of model.yTicks) {
    parts.push(
      `<text x="${px(model.plotLeft - 8)}" y="${px(tick.pixel + 4)}" ` +
        `text-anchor="end">${esc(tick.label)}</text>`,
    );
  }

  // axis titles and figure title
  const centerX = (model.plotLeft + model.plotRight) / 2;
  parts.push(
    `<text x="${px(centerX)}" y="${px(model.height - 14)}" text-anchor="middle">` +
      `${esc(model.xLabel)}</text>`,
    `<text x="18" y="${px((model.plotTop + model.plotBottom) / 2)}" text-anchor="middle" ` +
      `transform="rotate(-90 18 ${px((model.plotTop + model.plotBottom) / 2)})">` +
      `${esc(model.yLabel)}</text>`,
  );
  if (model.title) {
    parts.push(
      `<text x="${px(centerX)}" y="24" text-anchor="middle" font-size="14">` +
        `${esc(model.title)}</text>`,
    );
  }

  // curves
  for (const curve of model.curves) {
    const points = curve.points.map(([x, y]) => `${px(x)},${px(y)}`).join(" ");
    parts.push(
      `<polyline data-algorithm="${esc(curve.label)}" points="${points}" ` +
        `fill="none" stroke="${curve.color}" stroke-width="1.8"/>`,
    );
  }

  // legend
  const legendX = model.plotRight - 150;
  let legendY = model.plotTop + 10;
  parts.push(
    `<rect x="${px(legendX - 8)}" y="${px(legendY - 12)}" width="150" ` +
      `height="${model.curves.length * 18 + 10}" fill="white" fill-opacity="0.85" ` +
      `stroke="#999999"/>`,
  );
  for (const curve of model.curves) {
    parts.push(
      `<line x1="${px(legendX)}" y1="${px(legendY)}" x2="${px(legendX + 24)}" ` +
        `y2="${px(legendY)}" stroke="${curve.color}" stroke-width="2.5"/>`,
      `<text x="${px(legendX + 32)}" y="${px(legendY + 4)}">${esc(curve.label)}</text>`,
    );
    legendY += 18;
  }

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
