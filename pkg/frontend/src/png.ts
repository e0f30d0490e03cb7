/**
 * Raster backend: a small RGB canvas with line/rect/text primitives and a
 * self-contained PNG encoder (8-bit truecolor, filter 0, zlib from node).
 */

import * as zlib from "node:zlib";

import { FigureModel } from "./figure.js";
import { GLYPH_HEIGHT, GLYPH_SPACING, GLYPH_WIDTH, glyphFor, textWidth } from "./font5x7.js";

export type Rgb = [number, number, number];

export function parseColor(hex: string): Rgb {
  const m = /^#([0-9a-fA-F]{6})$/.exec(hex);
  if (!m) {
    throw new Error(`unsupported color ${JSON.stringify(hex)}`);
  }
  const v = parseInt(m[1], 16);
  return [(v >> 16) & 0xff, (v >> 8) & 0xff, v & 0xff];
}

export class Raster {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array;

  constructor(width: number, height: number, background: Rgb = [255, 255, 255]) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 3);
    for (let i = 0; i < width * height; i++) {
      this.data.set(background, i * 3);
    }
  }

  setPixel(x: number, y: number, color: Rgb): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) {
      return;
    }
    this.data.set(color, (yi * this.width + xi) * 3);
  }

  getPixel(x: number, y: number): Rgb {
    const offset = (y * this.width + x) * 3;
    return [this.data[offset], this.data[offset + 1], this.data[offset + 2]];
  }

  fillRect(x0: number, y0: number, w: number, h: number, color: Rgb): void {
    for (let y = y0; y < y0 + h; y++) {
      for (let x = x0; x < x0 + w; x++) {
        this.setPixel(x, y, color);
      }
    }
  }

  /** Bresenham segment with a square stamp of the given thickness. */
  drawLine(x0: number, y0: number, x1: number, y1: number, color: Rgb, thickness = 1): void {
    let xa = Math.round(x0);
    let ya = Math.round(y0);
    const xb = Math.round(x1);
    const yb = Math.round(y1);
    const dx = Math.abs(xb - xa);
    const dy = -Math.abs(yb - ya);
    const sx = xa < xb ? 1 : -1;
    const sy = ya < yb ? 1 : -1;
    let err = dx + dy;
    const reach = Math.floor(thickness / 2);
    for (;;) {
      for (let oy = -reach; oy <= reach; oy++) {
        for (let ox = -reach; ox <= reach; ox++) {
          this.setPixel(xa + ox, ya + oy, color);
        }
      }
      if (xa === xb && ya === yb) {
        break;
      }
      const doubled = 2 * err;
      if (doubled >= dy) {
        err += dy;
        xa += sx;
      }
      if (doubled <= dx) {
        err += dx;
        ya += sy;
      }
    }
  }

  drawText(x: number, y: number, text: string, color: Rgb, scale = 1): void {
    let cursor = Math.round(x);
    const top = Math.round(y);
    for (const char of text) {
      const glyph = glyphFor(char);
      for (let row = 0; row < GLYPH_HEIGHT; row++) {
        for (let col = 0; col < GLYPH_WIDTH; col++) {
          if (glyph[row][col] === "#") {
            for (let sy = 0; sy < scale; sy++) {
              for (let sx = 0; sx < scale; sx++) {
                this.setPixel(cursor + col * scale + sx, top + row * scale + sy, color);
              }
            }
          }
        }
      }
      cursor += (GLYPH_WIDTH + GLYPH_SPACING) * scale;
    }
  }
}

// --- PNG encoding -----------------------------------------------------------

const CRC_TABLE = (() => {
  const table = new Uint32Array(256);
  for (let n = 0; n < 256; n++) {
    let c = n;
    for (let k = 0; k < 8; k++) {
      c = c & 1 ? 0xedb88320 ^ (c >>> 1) : c >>> 1;
    }
    table[n] = c >>> 0;
  }
  return table;
})();

function crc32(bytes: Uint8Array): number {
  let crc = 0xffffffff;
  for (const byte of bytes) {
    crc = CRC_TABLE[(crc ^ byte) & 0xff] ^ (crc >>> 8);
  }
  return (crc ^ 0xffffffff) >>> 0;
}

function chunk(type: string, payload: Uint8Array): Buffer {
  const header = Buffer.alloc(4);
  header.writeUInt32BE(payload.length, 0);
  const body = Buffer.concat([Buffer.from(type, "ascii"), Buffer.from(payload)]);
  const crc = Buffer.alloc(4);
  crc.writeUInt32BE(crc32(body), 0);
  return Buffer.concat([header, body, crc]);
}

export function encodePng(raster: Raster): Buffer {
  const ihdr = Buffer.alloc(13);
  ihdr.writeUInt32BE(raster.width, 0);
  ihdr.writeUInt32BE(raster.height, 4);
  ihdr[8] = 8; // bit depth
  ihdr[9] = 2; // truecolor
  ihdr[10] = 0; // deflate
  ihdr[11] = 0; // default filter set
  ihdr[12] = 0; // no interlace
  const stride = raster.width * 3;
  const filtered = Buffer.alloc((stride + 1) * raster.height);
  for (let y = 0; y < raster.height; y++) {
    filtered[y * (stride + 1)] = 0; // filter type: none
    filtered.set(
      raster.data.subarray(y * stride, (y + 1) * stride),
      y * (stride + 1) + 1,
    );
  }
  const idat = zlib.deflateSync(filtered, { level: 9 });
  return Buffer.concat([
    Buffer.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", ihdr),
    chunk("IDAT", idat),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

// --- figure rendering ---------------------------------------------------------

const BLACK: Rgb = [0, 0, 0];
const GRID: Rgb = [221, 221, 221];
const LIGHT_GRID: Rgb = [238, 238, 238];
const LEGEND_BORDER: Rgb = [153, 153, 153];

export function figureToRaster(model: FigureModel): Raster {
  const raster = new Raster(model.width, model.height);

  for (const tick of model.yTicks) {
    raster.drawLine(model.plotLeft, tick.pixel, model.plotRight, tick.pixel, GRID);
  }
  for (const tick of model.xTicks) {
    raster.drawLine(tick.pixel, model.plotTop, tick.pixel, model.plotBottom, LIGHT_GRID);
  }
  raster.drawLine(model.plotLeft, model.plotBottom, model.plotRight, model.plotBottom, BLACK);
  raster.drawLine(model.plotLeft, model.plotTop, model.plotLeft, model.plotBottom, BLACK);

  for (const tick of model.xTicks) {
    raster.drawLine(tick.pixel, model.plotBottom, tick.pixel, model.plotBottom + 4, BLACK);
    raster.drawText(tick.pixel - textWidth(tick.label) / 2, model.plotBottom + 9, tick.label, BLACK);
  }
  for (const tick of model.yTicks) {
    raster.drawLine(model.plotLeft - 4, tick.pixel, model.plotLeft, tick.pixel, BLACK);
    raster.drawText(model.plotLeft - 8 - textWidth(tick.label), tick.pixel - 3, tick.label, BLACK);
  }

  const centerX = (model.plotLeft + model.plotRight) / 2;
  raster.drawText(centerX - textWidth(model.xLabel) / 2, model.height - 16, model.xLabel, BLACK);
  raster.drawText(8, model.plotTop - 14, model.yLabel, BLACK);
  if (model.title) {
    raster.drawText(centerX - textWidth(model.title), 12, model.title, BLACK, 2);
  }

  for (const curve of model.curves) {
    const color = parseColor(curve.color);
    for (let i = 1; i < curve.points.length; i++) {
      const [x0, y0] = curve.points[i - 1];
      const [x1, y1] = curve.points[i];
      raster.drawLine(x0, y0, x1, y1, color, 2);
    }
  }

  const legendX = model.plotRight - 150;
  let legendY = model.plotTop + 10;
  const legendHeight = model.curves.length * 14 + 10;
  raster.fillRect(legendX - 8, legendY - 8, 150, legendHeight, [255, 255, 255]);
  raster.drawLine(legendX - 8, legendY - 8, legendX + 142, legendY - 8, LEGEND_BORDER);
  raster.drawLine(legendX - 8, legendY - 8 + legendHeight, legendX + 142, legendY - 8 + legendHeight, LEGEND_BORDER);
  raster.drawLine(legendX - 8, legendY - 8, legendX - 8, legendY - 8 + legendHeight, LEGEND_BORDER);
  raster.drawLine(legendX + 142, legendY - 8, legendX + 142, legendY - 8 + legendHeight, LEGEND_BORDER);
  for (const curve of model.curves) {
    raster.drawLine(legendX, legendY, legendX + 20, legendY, parseColor(curve.color), 2);
    raster.drawText(legendX + 28, legendY - 3, curve.label, BLACK);
    legendY += 14;
  }

  return raster;
}
