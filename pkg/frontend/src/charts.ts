/** Build chart scenes from the parsed report tables. */

import { Table, column } from "./csv.js";
import {
  Item,
  Scene,
  decadeTicks,
  formatTick,
  linearScale,
  ticks,
} from "./scene.js";

const WIDTH = 840;
const HEIGHT = 520;
const BG = "#ffffff";
const AXIS = "#404040";
const GRID = "#d8d8d8";
const SERIES = ["#1f6fb2", "#d1642d", "#3c8a4e", "#8458a8"];

interface Frame {
  left: number;
  right: number;
  top: number;
  bottom: number;
}

function frameBox(frame: Frame): Item[] {
  return [
    {
      kind: "rect",
      x: frame.left,
      y: frame.top,
      w: frame.right - frame.left,
      h: frame.bottom - frame.top,
      color: "none",
    },
    { kind: "line", x1: frame.left, y1: frame.bottom, x2: frame.right, y2: frame.bottom, color: AXIS, width: 1 },
    { kind: "line", x1: frame.left, y1: frame.top, x2: frame.left, y2: frame.bottom, color: AXIS, width: 1 },
  ];
}

function pad(min: number, max: number): [number, number] {
  if (min === max) {
    const eps = Math.abs(min) * 0.1 + 1;
    return [min - eps, max + eps];
  }
  const margin = (max - min) * 0.06;
  return [min - margin, max + margin];
}

function xAxis(
  frame: Frame,
  domain: [number, number],
  label: string,
  items: Item[],
): (v: number) => number {
  const scale = linearScale(domain[0], domain[1], frame.left, frame.right);
  for (const t of ticks(domain[0], domain[1], 6)) {
    const x = scale(t);
    items.push({ kind: "line", x1: x, y1: frame.top, x2: x, y2: frame.bottom, color: GRID, width: 1 });
    items.push({ kind: "line", x1: x, y1: frame.bottom, x2: x, y2: frame.bottom + 4, color: AXIS, width: 1 });
    items.push({
      kind: "text", x, y: frame.bottom + 16, text: formatTick(t),
      color: AXIS, size: 11, anchor: "middle",
    });
  }
  items.push({
    kind: "text", x: (frame.left + frame.right) / 2, y: frame.bottom + 32,
    text: label, color: AXIS, size: 12, anchor: "middle",
  });
  return scale;
}

function yAxis(
  frame: Frame,
  domain: [number, number],
  label: string,
  items: Item[],
): (v: number) => number {
  const scale = linearScale(domain[0], domain[1], frame.bottom, frame.top);
  for (const t of ticks(domain[0], domain[1], 5)) {
    const y = scale(t);
    items.push({ kind: "line", x1: frame.left, y1: y, x2: frame.right, y2: y, color: GRID, width: 1 });
    items.push({ kind: "line", x1: frame.left - 4, y1: y, x2: frame.left, y2: y, color: AXIS, width: 1 });
    items.push({
      kind: "text", x: frame.left - 8, y: y + 4, text: formatTick(t),
      color: AXIS, size: 11, anchor: "end",
    });
  }
  items.push({
    kind: "text", x: frame.left, y: frame.top - 10, text: label,
    color: AXIS, size: 12, anchor: "start",
  });
  return scale;
}

/** Eigenvalue scatter with the continuum edge marked when known. */
export function eigenvalueChart(table: Table, edge: number | null): Scene {
  const idx = column(table, "index");
  const lam = column(table, "lambda");
  const items: Item[] = [];
  const frame: Frame = { left: 80, right: WIDTH - 30, top: 40, bottom: HEIGHT - 60 };
  const yValues = edge === null ? lam : lam.concat([edge]);
  const sx = xAxis(frame, pad(Math.min(...idx), Math.max(...idx)), "index", items);
  const sy = yAxis(
    frame, pad(Math.min(...yValues), Math.max(...yValues)), "lambda", items,
  );
  items.push(...frameBox(frame));
  if (edge !== null) {
    const y = sy(edge);
    items.push({ kind: "line", x1: frame.left, y1: y, x2: frame.right, y2: y, color: SERIES[1], width: 2 });
    items.push({
      kind: "text", x: frame.right - 6, y: y - 6, text: `edge = ${formatTick(edge)}`,
      color: SERIES[1], size: 11, anchor: "end",
    });
  }
  for (let i = 0; i < idx.length; i++) {
    items.push({ kind: "circle", cx: sx(idx[i]), cy: sy(lam[i]), r: 4, color: SERIES[0] });
  }
  items.push({
    kind: "text", x: WIDTH / 2, y: 22, text: "operator spectrum: lowest eigenvalues",
    color: AXIS, size: 13, anchor: "middle",
  });
  return { width: WIDTH, height: HEIGHT, background: BG, items };
}

/** Log-scale error-norm history on top, fitted shift tracks below. */
export function errorSeriesChart(table: Table): Scene {
  const t = column(table, "t");
  const z = column(table, "z_h2");
  const x1 = column(table, "x1");
  const x2 = column(table, "x2");
  const items: Item[] = [];
  const tDomain = pad(Math.min(...t), Math.max(...t));

  const top: Frame = { left: 80, right: WIDTH - 30, top: 40, bottom: 250 };
  const logZ = z.map((v) => Math.log10(Math.max(v, 1e-300)));
  const positive = z.filter((v) => v > 0);
  const zLo = positive.length ? Math.min(...positive) : 1e-16;
  const zHi = positive.length ? Math.max(...positive) : 1;
  const domain: [number, number] = [
    Math.log10(zLo) - 0.2,
    Math.log10(zHi) + 0.2,
  ];
  const sxTop = linearScale(tDomain[0], tDomain[1], top.left, top.right);
  const syTop = linearScale(domain[0], domain[1], top.bottom, top.top);
  for (const e of decadeTicks(Math.pow(10, domain[0]), Math.pow(10, domain[1]))) {
    const y = syTop(e);
    items.push({ kind: "line", x1: top.left, y1: y, x2: top.right, y2: y, color: GRID, width: 1 });
    items.push({
      kind: "text", x: top.left - 8, y: y + 4, text: `1e${e}`,
      color: AXIS, size: 11, anchor: "end",
    });
  }
  items.push(...frameBox(top));
  items.push({
    kind: "polyline",
    points: t.map((tv, i) => [sxTop(tv), syTop(logZ[i])] as [number, number]),
    color: SERIES[0],
    width: 2,
  });
  items.push({
    kind: "text", x: top.left, y: top.top - 10, text: "error norm (log scale)",
    color: AXIS, size: 12, anchor: "start",
  });

  const bottom: Frame = { left: 80, right: WIDTH - 30, top: 310, bottom: HEIGHT - 60 };
  const shifts = x1.concat(x2);
  const sxBot = xAxis(bottom, tDomain, "t", items);
  const syBot = yAxis(
    bottom, pad(Math.min(...shifts), Math.max(...shifts)), "fitted shifts", items,
  );
  items.push(...frameBox(bottom));
  const tracks: Array<[string, number[]]> = [
    ["x1", x1],
    ["x2", x2],
  ];
  tracks.forEach(([label, values], series) => {
    items.push({
      kind: "polyline",
      points: t.map((tv, i) => [sxBot(tv), syBot(values[i])] as [number, number]),
      color: SERIES[series],
      width: 2,
    });
    items.push({
      kind: "text", x: bottom.right - 6 - 40 * series, y: bottom.top + 14,
      text: label, color: SERIES[series], size: 11, anchor: "end",
    });
  });
  items.push({
    kind: "text", x: WIDTH / 2, y: 22, text: "stability run: error norm and shift tracks",
    color: AXIS, size: 13, anchor: "middle",
  });
  return { width: WIDTH, height: HEIGHT, background: BG, items };
}

/** Space-time waterfall: one offset profile per snapshot time. */
export function waterfallChart(table: Table): Scene {
  const t = column(table, "t");
  const x = column(table, "x");
  const u = column(table, "u");
  const items: Item[] = [];

  // group rows by time, preserving file order
  const times: number[] = [];
  const curves = new Map<number, Array<[number, number]>>();
  for (let i = 0; i < t.length; i++) {
    if (!curves.has(t[i])) {
      curves.set(t[i], []);
      times.push(t[i]);
    }
    curves.get(t[i])!.push([x[i], u[i]]);
  }
  const frame: Frame = { left: 80, right: WIDTH - 30, top: 50, bottom: HEIGHT - 60 };
  const sx = xAxis(frame, pad(Math.min(...x), Math.max(...x)), "x", items);
  items.push(...frameBox(frame));
  const amp = Math.max(...u.map(Math.abs), 1e-300);
  const n = times.length;
  const slot = (frame.bottom - frame.top) / (n + 1);
  const gain = (slot * 1.6) / amp;
  for (let j = n - 1; j >= 0; j--) {
    const base = frame.bottom - slot * (j + 0.5);
    const pts = curves
      .get(times[j])!
      .map(([xv, uv]) => [sx(xv), base - uv * gain] as [number, number]);
    items.push({ kind: "polyline", points: pts, color: SERIES[j % SERIES.length], width: 1.5 });
    items.push({
      kind: "text", x: frame.left - 8, y: base + 4, text: `t=${formatTick(times[j])}`,
      color: AXIS, size: 10, anchor: "end",
    });
  }
  items.push({
    kind: "text", x: WIDTH / 2, y: 22, text: "snapshots: u(t, x) waterfall",
    color: AXIS, size: 13, anchor: "middle",
  });
  return { width: WIDTH, height: HEIGHT, background: BG, items };
}
