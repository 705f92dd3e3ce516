#!/usr/bin/env node
/**
 * Batch figure renderer for simulator CSV output.
 *
 * Usage:
 *   node dist/index.js --kind throughput --input sweep.csv[,more.csv] --out fig.svg
 *
 * Kinds: throughput | asymmetry | bler | latency | rmse.
 * Inputs are read-only; on schema mismatch the tool exits nonzero and
 * writes no partial file.
 */

import { readFileSync, writeFileSync } from "node:fs";
import { buildChartSpec, FIGURE_KINDS, FigureKind } from "./figures.js";
import { SchemaError } from "./csv.js";
import { renderChart } from "./svg.js";

export function renderFigure(kind: FigureKind, inputPaths: string[], outPath: string): void {
  const inputs = inputPaths.map((path) => ({ path, text: readFileSync(path, "utf-8") }));
  const svg = renderChart(buildChartSpec({ kind, inputs }));
  writeFileSync(outPath, svg);
}

function parseArgs(argv: string[]): { kind: FigureKind; inputs: string[]; out: string } {
  const opts = new Map<string, string>();
  for (let i = 0; i < argv.length; i += 2) {
    const key = argv[i];
    const val = argv[i + 1];
    if (!key?.startsWith("--") || val === undefined) throw new Error(`bad arguments near '${key}'`);
    opts.set(key.slice(2), val);
  }
  const kind = opts.get("kind") as FigureKind;
  if (!FIGURE_KINDS.includes(kind)) {
    throw new Error(`--kind must be one of ${FIGURE_KINDS.join(", ")}`);
  }
  const input = opts.get("input");
  const out = opts.get("out");
  if (!input || !out) throw new Error("--input and --out are required");
  return { kind, inputs: input.split(","), out };
}

function main(): void {
  try {
    const { kind, inputs, out } = parseArgs(process.argv.slice(2));
    renderFigure(kind, inputs, out);
    console.log(out);
  } catch (err) {
    const prefix = err instanceof SchemaError ? "schema error" : "error";
    console.error(`${prefix}: ${(err as Error).message}`);
    process.exit(err instanceof SchemaError ? 2 : 1);
  }
}

const isDirectRun = process.argv[1]?.endsWith("index.js");
if (isDirectRun) main();
