/**
 * CSV readers for the simulator's two output schemas.
 *
 * Sweep-style experiments share the fixed header
 *   dl_sinr_db,ul_sinr_db,scheme,mcs,standard,throughput_bps,
 *   throughput_ratio_pct,bler,avg_latency_ms,attempts_mean,seed
 * and the channel-estimation experiment emits
 *   dl_sinr_db,standard,rmse,n_trials,seed
 */

export interface SweepRow {
  dl_sinr_db: number;
  ul_sinr_db: number;
  scheme: string;
  mcs: string;
  standard: string;
  throughput_bps: number;
  throughput_ratio_pct: number;
  bler: number;
  avg_latency_ms: number;
  attempts_mean: number;
  seed: number;
}

export interface RmseRow {
  dl_sinr_db: number;
  standard: string;
  rmse: number;
  n_trials: number;
  seed: number;
}

export class SchemaError extends Error {}

function splitHeader(text: string): { header: string[]; lines: string[] } {
  const lines = text.trim().split(/\r?\n/);
  if (lines.length < 2) throw new SchemaError("CSV has no data rows");
  return { header: lines[0].split(","), lines: lines.slice(1) };
}

function requireColumns(header: string[], needed: string[], path: string): Map<string, number> {
  const index = new Map(header.map((name, i) => [name, i] as const));
  for (const col of needed) {
    if (!index.has(col)) throw new SchemaError(`${path}: missing required column '${col}'`);
  }
  return index;
}

const SWEEP_COLUMNS = [
  "dl_sinr_db",
  "ul_sinr_db",
  "scheme",
  "mcs",
  "standard",
  "throughput_bps",
  "throughput_ratio_pct",
  "bler",
  "avg_latency_ms",
  "attempts_mean",
  "seed",
];

export function parseSweepCsv(text: string, path: string, needed: string[] = SWEEP_COLUMNS): SweepRow[] {
  const { header, lines } = splitHeader(text);
  const idx = requireColumns(header, needed, path);
  const get = (cells: string[], col: string): string => {
    const i = idx.get(col);
    return i === undefined ? "" : cells[i] ?? "";
  };
  return lines.map((line) => {
    const cells = line.split(",");
    return {
      dl_sinr_db: Number(get(cells, "dl_sinr_db")),
      ul_sinr_db: Number(get(cells, "ul_sinr_db")),
      scheme: get(cells, "scheme"),
      mcs: get(cells, "mcs"),
      standard: get(cells, "standard"),
      throughput_bps: Number(get(cells, "throughput_bps")),
      throughput_ratio_pct: Number(get(cells, "throughput_ratio_pct")),
      bler: Number(get(cells, "bler")),
      avg_latency_ms: Number(get(cells, "avg_latency_ms")),
      attempts_mean: Number(get(cells, "attempts_mean")),
      seed: Number(get(cells, "seed")),
    };
  });
}

export function parseRmseCsv(text: string, path: string): RmseRow[] {
  const { header, lines } = splitHeader(text);
  const idx = requireColumns(header, ["dl_sinr_db", "standard", "rmse"], path);
  return lines.map((line) => {
    const cells = line.split(",");
    const at = (col: string) => cells[idx.get(col)!] ?? "";
    return {
      dl_sinr_db: Number(at("dl_sinr_db")),
      standard: at("standard"),
      rmse: Number(at("rmse")),
      n_trials: Number(idx.has("n_trials") ? at("n_trials") : "0"),
      seed: Number(idx.has("seed") ? at("seed") : "0"),
    };
  });
}
