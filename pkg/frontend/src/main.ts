#!/usr/bin/env node
/**
 * render_figures <figure_id> --data <dir> --out <dir>
 *
 * Reads the simulator's CSV output from the data directory and writes one SVG
 * per invocation into the output directory.
 */

import { mkdirSync, writeFileSync } from "fs";
import { join } from "path";
import { CsvError } from "./csv";
import { FIGURE_IDS, FigureId, RECIPES } from "./recipes";

export function run(argv: string[]): number {
  const positional: string[] = [];
  const options = new Map<string, string>();
  for (let i = 0; i < argv.length; i++) {
    const arg = argv[i];
    if (arg === "--data" || arg === "--out") {
      const value = argv[++i];
      if (value === undefined) {
        console.error(`missing value for ${arg}`);
        return 1;
      }
      options.set(arg, value);
    } else if (arg.startsWith("--")) {
      console.error(`unknown option ${arg}`);
      return 1;
    } else {
      positional.push(arg);
    }
  }

  if (positional.length !== 1) {
    console.error(`usage: render_figures <${FIGURE_IDS.join("|")}> --data <dir> --out <dir>`);
    return 1;
  }
  const figureId = positional[0] as FigureId;
  const recipe = RECIPES[figureId];
  if (!recipe) {
    console.error(`unknown figure id "${positional[0]}"; expected one of ${FIGURE_IDS.join(", ")}`);
    return 1;
  }
  const dataDir = options.get("--data") ?? ".";
  const outDir = options.get("--out") ?? ".";

  let svg: string;
  try {
    svg = recipe.build(dataDir);
  } catch (error) {
    if (error instanceof CsvError) {
      console.error(error.message);
      return 1;
    }
    throw error;
  }
  mkdirSync(outDir, { recursive: true });
  const outPath = join(outDir, `${figureId.toLowerCase()}.svg`);
  writeFileSync(outPath, svg, "utf8");
  console.log(`wrote ${outPath}`);
  return 0;
}

if (require.main === module) {
  process.exit(run(process.argv.slice(2)));
}
