/** Turn one breather-bench output directory into figures. */

import { existsSync, mkdirSync, readFileSync, writeFileSync } from "node:fs";
import { join } from "node:path";

import { eigenvalueChart, errorSeriesChart, waterfallChart } from "./charts.js";
import { InputError, Table, parseNumericCsv } from "./csv.js";
import { Scene } from "./scene.js";
import { sceneToPng } from "./raster.js";
import { sceneToSvg } from "./svg.js";

export type Format = "png" | "svg";

export interface PlotJob {
  inputDir: string;
  outputDir: string;
  formats: Format[];
}

interface Recognized {
  file: string;
  header: string[];
  build: (table: Table, edge: number | null) => Scene;
}

const RECOGNIZED: Recognized[] = [
  {
    file: "eigenvalues.csv",
    header: ["index", "lambda"],
    build: (table, edge) => eigenvalueChart(table, edge),
  },
  {
    file: "error_series.csv",
    header: ["t", "z_h2", "x1", "x2", "M", "E", "F", "H"],
    build: (table) => errorSeriesChart(table),
  },
  {
    file: "snapshots.csv",
    header: ["t", "x", "u"],
    build: (table) => waterfallChart(table),
  },
];

/** results.essential_edge_theory from report.json, when present and numeric. */
function readEdge(inputDir: string): number | null {
  const path = join(inputDir, "report.json");
  if (!existsSync(path)) {
    return null;
  }
  try {
    const payload = JSON.parse(readFileSync(path, "utf8"));
    const value = payload?.results?.essential_edge_theory;
    return typeof value === "number" && Number.isFinite(value) ? value : null;
  } catch {
    return null;
  }
}

/**
 * Render every recognized CSV in the input directory; returns the written
 * image paths. All inputs are validated before anything is written, so a
 * malformed file never leaves partial output behind. Throws InputError
 * listing every problem when the directory has no usable input.
 */
export function renderReport(job: PlotJob): string[] {
  if (job.formats.length === 0) {
    throw new InputError("no output formats requested");
  }
  const problems: string[] = [];
  const scenes: Array<{ name: string; scene: Scene }> = [];
  const edge = readEdge(job.inputDir);
  for (const spec of RECOGNIZED) {
    const path = join(job.inputDir, spec.file);
    if (!existsSync(path)) {
      continue;
    }
    try {
      const table = parseNumericCsv(spec.file, readFileSync(path, "utf8"), spec.header);
      scenes.push({ name: spec.file.replace(".csv", ""), scene: spec.build(table, edge) });
    } catch (err) {
      problems.push(err instanceof Error ? err.message : String(err));
    }
  }
  if (problems.length > 0) {
    throw new InputError(problems.join("; "));
  }
  if (scenes.length === 0) {
    throw new InputError(
      `${job.inputDir}: no recognized CSV files ` +
      `(looked for ${RECOGNIZED.map((r) => r.file).join(", ")})`,
    );
  }
  mkdirSync(job.outputDir, { recursive: true });
  const written: string[] = [];
  for (const { name, scene } of scenes) {
    for (const format of job.formats) {
      const path = join(job.outputDir, `${name}.${format}`);
      if (format === "svg") {
        writeFileSync(path, sceneToSvg(scene));
      } else {
        writeFileSync(path, sceneToPng(scene));
      }
      written.push(path);
    }
  }
  return written;
}
