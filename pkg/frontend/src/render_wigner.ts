#!/usr/bin/env node
/** Usage: render_wigner <grid.csv> <out.svg> */

import * as fs from "fs";
import * as path from "path";
import { SchemaError } from "./csv";
import { readWignerGrid, renderWigner } from "./wigner";

export function main(argv: string[]): number {
  if (argv.length !== 2) {
    process.stderr.write("usage: render_wigner <grid.csv> <out.svg>\n");
    return 2;
  }
  const [input, output] = argv;
  try {
    const text = fs.readFileSync(input, "utf-8");
    const grid = readWignerGrid(text, input);
    const image = renderWigner(grid, path.basename(input));
    fs.writeFileSync(output, image);
  } catch (err) {
    if (err instanceof SchemaError) {
      process.stderr.write(`error: ${err.message}\n`);
      return 1;
    }
    throw err;
  }
  return 0;
}

if (typeof require !== "undefined" && typeof module !== "undefined" && require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
