#!/usr/bin/env node
/** Usage: render_curves <curve.csv> [more.csv ...] <out.svg> */

import * as fs from "fs";
import * as path from "path";
import { SchemaError } from "./csv";
import { Curve, readCurve, renderCurves } from "./curves";

export function main(argv: string[]): number {
  if (argv.length < 2) {
    process.stderr.write("usage: render_curves <curve.csv> [more.csv ...] <out.svg>\n");
    return 2;
  }
  const inputs = argv.slice(0, -1);
  const output = argv[argv.length - 1];
  try {
    const curves: Curve[] = inputs.map((input) =>
      readCurve(fs.readFileSync(input, "utf-8"), path.basename(input, ".csv"), input),
    );
    const image = renderCurves(curves, "readout probability");
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
