/** Backend-independent chart description: a flat list of primitives. */

export interface LineItem {
  kind: "line";
  x1: number;
  y1: number;
  x2: number;
  y2: number;
  color: string;
  width: number;
}

export interface PolylineItem {
  kind: "polyline";
  points: Array<[number, number]>;
  color: string;
  width: number;
}

export interface CircleItem {
  kind: "circle";
  cx: number;
  cy: number;
  r: number;
  color: string;
}

export interface RectItem {
  kind: "rect";
  x: number;
  y: number;
  w: number;
  h: number;
  color: string;
}

export interface TextItem {
  kind: "text";
  x: number;
  y: number;
  text: string;
  color: string;
  size: number;
  anchor: "start" | "middle" | "end";
}

export type Item = LineItem | PolylineItem | CircleItem | RectItem | TextItem;

export interface Scene {
  width: number;
  height: number;
  background: string;
  items: Item[];
}

export type Scale = (value: number) => number;

export function linearScale(
  d0: number,
  d1: number,
  r0: number,
  r1: number,
): Scale {
  const span = d1 - d0 === 0 ? 1 : d1 - d0;
  return (v) => r0 + ((v - d0) / span) * (r1 - r0);
}

/** Round tick positions on a 1-2-5 ladder covering [min, max]. */
export function ticks(min: number, max: number, count = 5): number[] {
  if (!(max > min)) {
    return [min];
  }
  const raw = (max - min) / count;
  const mag = Math.pow(10, Math.floor(Math.log10(raw)));
  const candidates = [1, 2, 5, 10].map((m) => m * mag);
  const step = candidates.find((s) => s >= raw) ?? candidates[3];
  const start = Math.ceil(min / step) * step;
  const out: number[] = [];
  for (let v = start; v <= max + step * 1e-9; v += step) {
    out.push(Math.abs(v) < step * 1e-9 ? 0 : v);
  }
  return out;
}

/** Decade positions covering a positive range. */
export function decadeTicks(min: number, max: number): number[] {
  const lo = Math.ceil(Math.log10(min) - 1e-9);
  const hi = Math.floor(Math.log10(max) + 1e-9);
  const out: number[] = [];
  for (let e = lo; e <= hi; e++) {
    out.push(e);
  }
  if (out.length === 0) {
    out.push(Math.round(Math.log10(min)));
  }
  return out;
}

export function formatTick(value: number): string {
  if (value === 0) {
    return "0";
  }
  const abs = Math.abs(value);
  if (abs >= 1e4 || abs < 1e-3) {
    return value.toExponential(0).replace("+", "");
  }
  const text = value.toPrecision(4);
  return text.includes(".") ? text.replace(/\.?0+$/, "") : text;
}
