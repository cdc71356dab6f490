#!/usr/bin/env node
/** breather-plots --in <dir> --out <dir> [--formats png,svg] */

import { pathToFileURL } from "node:url";

import { InputError } from "./csv.js";
import { Format, renderReport } from "./render.js";

const USAGE = "usage: breather-plots --in <dir> --out <dir> [--formats png,svg]";

export function run(argv: string[]): number {
  let inputDir: string | null = null;
  let outputDir: string | null = null;
  let formats: Format[] = ["svg"];
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--in" && i + 1 < argv.length) {
      inputDir = argv[++i];
    } else if (arg === "--out" && i + 1 < argv.length) {
      outputDir = argv[++i];
    } else if (arg === "--formats" && i + 1 < argv.length) {
      const parts = argv[++i].split(",").map((p) => p.trim()).filter(Boolean);
      if (parts.length === 0 || parts.some((p) => p !== "png" && p !== "svg")) {
        console.error(`unknown format in "${argv[i]}" (supported: png, svg)`);
        return 2;
      }
      formats = [...new Set(parts)] as Format[];
    } else if (arg === "--help" || arg === "-h") {
      console.log(USAGE);
      return 0;
    } else {
      console.error(`unexpected argument: ${arg}\n${USAGE}`);
      return 2;
    }
  }
  if (!inputDir || !outputDir) {
    console.error(USAGE);
    return 2;
  }
  try {
    const written = renderReport({ inputDir, outputDir, formats });
    for (const path of written) {
      console.log(path);
    }
    return 0;
  } catch (err) {
    if (err instanceof InputError) {
      console.error(`input error: ${err.message}`);
      return 1;
    }
    console.error(`error: ${err instanceof Error ? err.message : String(err)}`);
    return 1;
  }
}

const isMain =
  process.argv[1] !== undefined &&
  import.meta.url === pathToFileURL(process.argv[1]).href;
if (isMain) {
  process.exit(run(process.argv.slice(2)));
}
