/**
 * The five figure kinds, mapping simulator CSV rows onto chart specs.
 * Curves are keyed by scheme (throughput, latency), by standard (BLER,
 * RMSE), or by feedback offset (asymmetry).
 */

import { parseRmseCsv, parseSweepCsv, SchemaError, SweepRow } from "./csv.js";
import { ChartSpec, Series } from "./svg.js";

export const FIGURE_KINDS = ["throughput", "asymmetry", "bler", "latency", "rmse"] as const;
export type FigureKind = (typeof FIGURE_KINDS)[number];

export interface FigureSpec {
  kind: FigureKind;
  inputs: Array<{ path: string; text: string }>;
}

function groupSeries(
  rows: SweepRow[],
  key: (r: SweepRow) => string,
  value: (r: SweepRow) => number,
): Series[] {
  const groups = new Map<string, Array<[number, number]>>();
  for (const r of rows) {
    const k = key(r);
    if (!groups.has(k)) groups.set(k, []);
    groups.get(k)!.push([r.dl_sinr_db, value(r)]);
  }
  return [...groups.entries()].map(([label, points]) => ({ label, points }));
}

function sweepRows(spec: FigureSpec, needed: string[]): SweepRow[] {
  const rows = spec.inputs.flatMap(({ path, text }) => parseSweepCsv(text, path, needed));
  if (rows.length === 0) throw new SchemaError("no rows in inputs");
  return rows;
}

function offsetLabel(r: SweepRow): string {
  if (r.standard === "perfect") return "perfect ACK/NACK";
  const offset = r.dl_sinr_db - r.ul_sinr_db;
  const rounded = Math.round(offset * 10) / 10;
  return rounded === 0 ? `${r.standard}, equal UL/DL` : `${r.standard}, UL ${rounded} dB lower`;
}

export function buildChartSpec(spec: FigureSpec): ChartSpec {
  switch (spec.kind) {
    case "throughput": {
      const rows = sweepRows(spec, ["dl_sinr_db", "scheme", "mcs", "throughput_ratio_pct"]);
      const manyMcs = new Set(rows.map((r) => r.mcs)).size > 1;
      return {
        title: "DL throughput vs SINR",
        xLabel: "DL SINR (dB)",
        yLabel: "Throughput ratio (%)",
        yMin: 0,
        yMax: 100,
        series: groupSeries(
          rows,
          (r) => (manyMcs ? `${r.scheme} (MCS${r.mcs})` : r.scheme),
          (r) => r.throughput_ratio_pct,
        ),
      };
    }
    case "asymmetry": {
      const rows = sweepRows(spec, ["dl_sinr_db", "ul_sinr_db", "standard", "throughput_ratio_pct"]);
      return {
        title: "DL throughput with UL/DL SINR asymmetry",
        xLabel: "DL SINR (dB)",
        yLabel: "Throughput ratio (%)",
        yMin: 0,
        yMax: 100,
        series: groupSeries(rows, offsetLabel, (r) => r.throughput_ratio_pct),
      };
    }
    case "bler": {
      const rows = sweepRows(spec, ["dl_sinr_db", "standard", "bler"]);
      return {
        title: "Block error rate vs SINR",
        xLabel: "SINR (dB)",
        yLabel: "BLER",
        logY: true,
        series: groupSeries(rows, (r) => r.standard, (r) => r.bler),
      };
    }
    case "latency": {
      const rows = sweepRows(spec, ["dl_sinr_db", "scheme", "avg_latency_ms"]);
      return {
        title: "Average latency vs SINR",
        xLabel: "DL SINR (dB)",
        yLabel: "Average latency (ms)",
        series: groupSeries(rows, (r) => r.scheme, (r) => r.avg_latency_ms),
      };
    }
    case "rmse": {
      const rows = spec.inputs.flatMap(({ path, text }) => parseRmseCsv(text, path));
      if (rows.length === 0) throw new SchemaError("no rows in inputs");
      const groups = new Map<string, Array<[number, number]>>();
      for (const r of rows) {
        if (!groups.has(r.standard)) groups.set(r.standard, []);
        groups.get(r.standard)!.push([r.dl_sinr_db, r.rmse]);
      }
      return {
        title: "Channel estimation error vs SINR",
        xLabel: "SINR (dB)",
        yLabel: "RMSE",
        logY: true,
        series: [...groups.entries()].map(([label, points]) => ({ label, points })),
      };
    }
    default:
      throw new SchemaError(`unknown figure kind '${(spec as FigureSpec).kind}'`);
  }
}
