/** Axis mapping and tick placement for the linear x and logarithmic y axes. */

export interface Scale {
  toPixel(value: number): number;
  ticks: number[];
  format(value: number): string;
}

export function linearScale(
  min: number,
  max: number,
  pixelFrom: number,
  pixelTo: number,
): Scale {
  const span = max > min ? max - min : 1;
  const lo = max > min ? min : min - 0.5;
  const step = niceStep(span, 6);
  const ticks: number[] = [];
  for (let t = Math.ceil(lo / step) * step; t <= lo + span + 1e-12 * span; t += step) {
    ticks.push(roundTo(t, step));
  }
  return {
    toPixel: (v) => pixelFrom + ((v - lo) / span) * (pixelTo - pixelFrom),
    ticks,
    format: (v) => formatLinear(v),
  };
}

export function logScale(
  min: number,
  max: number,
  pixelFrom: number,
  pixelTo: number,
): Scale {
  if (!(min > 0) || !(max > 0)) {
    throw new Error("log scale needs positive bounds");
  }
  let lo = Math.log10(min);
  let hi = Math.log10(max);
  if (hi - lo < 1e-9) {
    lo -= 0.5;
    hi += 0.5;
  }
  const firstDecade = Math.ceil(lo - 1e-9);
  const lastDecade = Math.floor(hi + 1e-9);
  const decades = Math.max(lastDecade - firstDecade, 1);
  const stride = Math.max(1, Math.ceil(decades / 8));
  const ticks: number[] = [];
  for (let d = firstDecade; d <= lastDecade; d += stride) {
    ticks.push(Math.pow(10, d));
  }
  return {
    toPixel: (v) => {
      const t = (Math.log10(Math.max(v, Number.MIN_VALUE)) - lo) / (hi - lo);
      return pixelFrom + t * (pixelTo - pixelFrom);
    },
    ticks,
    format: (v) => `1e${Math.round(Math.log10(v))}`,
  };
}

function niceStep(span: number, targetCount: number): number {
  const raw = span / targetCount;
  const magnitude = Math.pow(10, Math.floor(Math.log10(raw)));
  const candidates = [1, 2, 5, 10].map((m) => m * magnitude);
  return candidates.find((c) => c >= raw) ?? candidates[candidates.length - 1];
}

function roundTo(value: number, step: number): number {
  const digits = Math.max(0, -Math.floor(Math.log10(step)) + 1);
  return Number(value.toFixed(Math.min(digits, 12)));
}

function formatLinear(value: number): string {
  if (value === 0) {
    return "0";
  }
  const magnitude = Math.abs(value);
  if (magnitude >= 1e5 || magnitude < 1e-3) {
    return value.toExponential(1).replace("e+", "e");
  }
  return String(Number(value.toPrecision(6)));
}
