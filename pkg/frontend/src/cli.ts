#!/usr/bin/env node
/**
 * plotkit: render benchmark figures.
 *
 *   plot <curves|bars|violin|budget-compare> --in <csv|json> --out <svg>
 *
 * Schema violations exit with code 2, print "schema_mismatch: ..." naming
 * the offending column/field, and write nothing.
 */

import * as fs from "fs";

import {
  renderBars, renderBudgetCompare, renderCurves, renderViolin,
} from "./figures";
import {
  SchemaError, distinctAlgorithms, parseCurvesJson, parsePairedJson,
  parseResultsCsv,
} from "./schema";

const KINDS = ["curves", "bars", "violin", "budget-compare"];

function usage(): never {
  process.stderr.write(
    `usage: plot <${KINDS.join("|")}> --in <csv|json> --out <svg>\n`);
  process.exit(1);
}

export function main(argv: string[]): number {
  if (argv.length === 0 || argv[0] !== "plot") {
    usage();
  }
  const kind = argv[1];
  if (!KINDS.includes(kind)) {
    usage();
  }
  let input = "";
  let output = "";
  for (let i = 2; i < argv.length; i += 2) {
    if (argv[i] === "--in") {
      input = argv[i + 1];
    } else if (argv[i] === "--out") {
      output = argv[i + 1];
    } else {
      usage();
    }
  }
  if (!input || !output) {
    usage();
  }
  let body: string;
  let count: number;
  try {
    const text = fs.readFileSync(input, "utf8");
    if (kind === "curves") {
      const curves = parseCurvesJson(text);
      body = renderCurves(curves);
      count = distinctAlgorithms(curves).length;
    } else if (kind === "budget-compare") {
      const paired = parsePairedJson(text);
      body = renderBudgetCompare(paired);
      count = distinctAlgorithms(paired).length;
    } else {
      const rows = parseResultsCsv(text);
      body = kind === "bars" ? renderBars(rows) : renderViolin(rows);
      count = distinctAlgorithms(rows).length;
    }
  } catch (error) {
    if (error instanceof SchemaError) {
      process.stderr.write(`schema_mismatch: ${error.message}\n`);
      return 2;
    }
    throw error;
  }
  fs.writeFileSync(output, body);
  process.stdout.write(JSON.stringify({ out: output, series: count }) + "\n");
  return 0;
}

if (require.main === module) {
  process.exit(main(process.argv.slice(2)));
}
