/** Rasterize a scene and encode it as PNG without external dependencies.
 *
 * Drawing is deliberately simple (hard edges, 1px grid): the images are
 * regeneration artifacts, and determinism matters more than anti-aliasing.
 */

import { deflateSync } from "node:zlib";

import { GLYPH_HEIGHT, GLYPH_WIDTH, glyphRows } from "./font.js";
import { Item, Scene } from "./scene.js";

class Canvas {
  readonly width: number;
  readonly height: number;
  readonly data: Uint8Array; // RGB, row-major

  constructor(width: number, height: number, background: [number, number, number]) {
    this.width = width;
    this.height = height;
    this.data = new Uint8Array(width * height * 3);
    for (let i = 0; i < width * height; i++) {
      this.data.set(background, i * 3);
    }
  }

  set(x: number, y: number, rgb: [number, number, number]): void {
    const xi = Math.round(x);
    const yi = Math.round(y);
    if (xi < 0 || yi < 0 || xi >= this.width || yi >= this.height) {
      return;
    }
    this.data.set(rgb, (yi * this.width + xi) * 3);
  }

  fillRect(x: number, y: number, w: number, h: number, rgb: [number, number, number]): void {
    for (let yy = Math.round(y); yy < Math.round(y + h); yy++) {
      for (let xx = Math.round(x); xx < Math.round(x + w); xx++) {
        this.set(xx, yy, rgb);
      }
    }
  }

  line(
    x1: number, y1: number, x2: number, y2: number,
    rgb: [number, number, number], width: number,
  ): void {
    const steps = Math.max(Math.abs(x2 - x1), Math.abs(y2 - y1), 1) * 2;
    const thick = Math.max(1, Math.round(width));
    for (let s = 0; s <= steps; s++) {
      const x = x1 + ((x2 - x1) * s) / steps;
      const y = y1 + ((y2 - y1) * s) / steps;
      if (thick === 1) {
        this.set(x, y, rgb);
      } else {
        const off = (thick - 1) / 2;
        this.fillRect(x - off, y - off, thick, thick, rgb);
      }
    }
  }

  circle(cx: number, cy: number, r: number, rgb: [number, number, number]): void {
    for (let y = -r; y <= r; y++) {
      for (let x = -r; x <= r; x++) {
        if (x * x + y * y <= r * r) {
          this.set(cx + x, cy + y, rgb);
        }
      }
    }
  }

  text(
    x: number, y: number, text: string, rgb: [number, number, number],
    size: number, anchor: "start" | "middle" | "end",
  ): void {
    const scale = Math.max(1, Math.round(size / GLYPH_HEIGHT));
    const advance = (GLYPH_WIDTH + 1) * scale;
    const total = text.length * advance;
    let left = x;
    if (anchor === "middle") {
      left = x - total / 2;
    } else if (anchor === "end") {
      left = x - total;
    }
    const top = y - GLYPH_HEIGHT * scale; // the scene y is the text baseline
    for (const ch of text) {
      const rows = glyphRows(ch);
      if (rows) {
        for (let ry = 0; ry < GLYPH_HEIGHT; ry++) {
          for (let rx = 0; rx < GLYPH_WIDTH; rx++) {
            if (rows[ry][rx] === "1") {
              this.fillRect(left + rx * scale, top + ry * scale, scale, scale, rgb);
            }
          }
        }
      }
      left += advance;
    }
  }
}

function parseColor(color: string): [number, number, number] {
  const hex = color.replace("#", "");
  return [
    parseInt(hex.slice(0, 2), 16),
    parseInt(hex.slice(2, 4), 16),
    parseInt(hex.slice(4, 6), 16),
  ];
}

function draw(canvas: Canvas, item: Item): void {
  switch (item.kind) {
    case "line":
      canvas.line(item.x1, item.y1, item.x2, item.y2, parseColor(item.color), item.width);
      break;
    case "polyline": {
      const rgb = parseColor(item.color);
      for (let i = 1; i < item.points.length; i++) {
        const [x1, y1] = item.points[i - 1];
        const [x2, y2] = item.points[i];
        canvas.line(x1, y1, x2, y2, rgb, item.width);
      }
      break;
    }
    case "circle":
      canvas.circle(item.cx, item.cy, Math.round(item.r), parseColor(item.color));
      break;
    case "rect":
      if (item.color !== "none") {
        canvas.fillRect(item.x, item.y, item.w, item.h, parseColor(item.color));
      }
      break;
    case "text":
      canvas.text(item.x, item.y, item.text, parseColor(item.color), item.size, item.anchor);
      break;
  }
}

// --- PNG encoding ----------------------------------------------------------

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

function crc32(buf: Uint8Array): number {
  let c = 0xffffffff;
  for (const byte of buf) {
    c = CRC_TABLE[(c ^ byte) & 0xff] ^ (c >>> 8);
  }
  return (c ^ 0xffffffff) >>> 0;
}

function chunk(type: string, payload: Uint8Array): Uint8Array {
  const out = new Uint8Array(12 + payload.length);
  const view = new DataView(out.buffer);
  view.setUint32(0, payload.length);
  for (let i = 0; i < 4; i++) {
    out[4 + i] = type.charCodeAt(i);
  }
  out.set(payload, 8);
  view.setUint32(8 + payload.length, crc32(out.subarray(4, 8 + payload.length)));
  return out;
}

export function encodePng(width: number, height: number, rgb: Uint8Array): Buffer {
  const header = new Uint8Array(13);
  const view = new DataView(header.buffer);
  view.setUint32(0, width);
  view.setUint32(4, height);
  header[8] = 8; // bit depth
  header[9] = 2; // color type: truecolor
  // scanlines with filter byte 0
  const raw = new Uint8Array(height * (1 + width * 3));
  for (let y = 0; y < height; y++) {
    raw.set(rgb.subarray(y * width * 3, (y + 1) * width * 3), y * (1 + width * 3) + 1);
  }
  const idat = deflateSync(raw, { level: 9 });
  return Buffer.concat([
    Uint8Array.from([0x89, 0x50, 0x4e, 0x47, 0x0d, 0x0a, 0x1a, 0x0a]),
    chunk("IHDR", header),
    chunk("IDAT", idat),
    chunk("IEND", new Uint8Array(0)),
  ]);
}

export function sceneToPng(scene: Scene): Buffer {
  const canvas = new Canvas(scene.width, scene.height, parseColor(scene.background));
  for (const item of scene.items) {
    draw(canvas, item);
  }
  return encodePng(scene.width, scene.height, canvas.data);
}
