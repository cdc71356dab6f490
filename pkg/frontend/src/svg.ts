/** Serialize a scene as standalone SVG markup. */

import { Item, Scene } from "./scene.js";

function esc(text: string): string {
  return text
    .replaceAll("&", "&amp;")
    .replaceAll("<", "&lt;")
    .replaceAll(">", "&gt;");
}

function num(v: number): string {
  return Number(v.toFixed(2)).toString();
}

function render(item: Item): string {
  switch (item.kind) {
    case "line":
      return `<line x1="${num(item.x1)}" y1="${num(item.y1)}" x2="${num(item.x2)}" y2="${num(item.y2)}" stroke="${item.color}" stroke-width="${item.width}"/>`;
    case "polyline": {
      const pts = item.points.map(([x, y]) => `${num(x)},${num(y)}`).join(" ");
      return `<polyline points="${pts}" fill="none" stroke="${item.color}" stroke-width="${item.width}"/>`;
    }
    case "circle":
      return `<circle cx="${num(item.cx)}" cy="${num(item.cy)}" r="${num(item.r)}" fill="${item.color}"/>`;
    case "rect":
      if (item.color === "none") {
        return "";
      }
      return `<rect x="${num(item.x)}" y="${num(item.y)}" width="${num(item.w)}" height="${num(item.h)}" fill="${item.color}"/>`;
    case "text": {
      const anchor = { start: "start", middle: "middle", end: "end" }[item.anchor];
      return `<text x="${num(item.x)}" y="${num(item.y)}" font-family="monospace" font-size="${item.size}" fill="${item.color}" text-anchor="${anchor}">${esc(item.text)}</text>`;
    }
  }
}

export function sceneToSvg(scene: Scene): string {
  const body = scene.items.map(render).filter((s) => s.length > 0);
  return [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${scene.width}" height="${scene.height}" viewBox="0 0 ${scene.width} ${scene.height}">`,
    `<rect width="${scene.width}" height="${scene.height}" fill="${scene.background}"/>`,
    ...body,
    "</svg>",
    "",
  ].join("\n");
}
