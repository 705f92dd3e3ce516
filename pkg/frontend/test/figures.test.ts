import { execFileSync } from "node:child_process";
import { mkdtempSync, readFileSync, existsSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join, dirname } from "node:path";
import { fileURLToPath } from "node:url";
import { describe, expect, it } from "vitest";

import { SchemaError } from "../src/csv.js";
import { buildChartSpec, FIGURE_KINDS, FigureKind } from "../src/figures.js";
import { renderChart } from "../src/svg.js";

const here = dirname(fileURLToPath(import.meta.url));
const SAMPLES = join(here, "..", "samples");

const SAMPLE_FOR: Record<FigureKind, string> = {
  throughput: "sweep_schemes_awgn.csv",
  latency: "sweep_schemes_awgn.csv",
  asymmetry: "asymmetry_lte_awgn.csv",
  bler: "bler_awgn.csv",
  rmse: "rmse_awgn.csv",
};

function load(kind: FigureKind) {
  const path = join(SAMPLES, SAMPLE_FOR[kind]);
  return { kind, inputs: [{ path, text: readFileSync(path, "utf-8") }] };
}

describe("figure kinds", () => {
  it("renders all five kinds from the shipped samples", () => {
    for (const kind of FIGURE_KINDS) {
      const svg = renderChart(buildChartSpec(load(kind)));
      expect(svg.startsWith("<svg")).toBe(true);
      expect(svg).toContain("</svg>");
    }
  });

  it("labels axes with units", () => {
    expect(renderChart(buildChartSpec(load("throughput")))).toContain("Throughput ratio (%)");
    expect(renderChart(buildChartSpec(load("throughput")))).toContain("DL SINR (dB)");
    expect(renderChart(buildChartSpec(load("latency")))).toContain("Average latency (ms)");
    expect(renderChart(buildChartSpec(load("bler")))).toContain("BLER");
    expect(renderChart(buildChartSpec(load("rmse")))).toContain("RMSE");
  });

  it("names curves by scheme / standard / offset", () => {
    const throughput = renderChart(buildChartSpec(load("throughput")));
    for (const scheme of ["type1-nc", "type1-cc", "type3-ir", "burst-cc"]) {
      expect(throughput).toContain(scheme);
    }
    const bler = renderChart(buildChartSpec(load("bler")));
    for (const curve of ["lte-pdsch", "lte-pucch", "nr-pucch", "wifi-data", "wifi-ack"]) {
      expect(bler).toContain(curve);
    }
    const asym = renderChart(buildChartSpec(load("asymmetry")));
    expect(asym).toContain("perfect ACK/NACK");
    expect(asym).toContain("lte, UL 10 dB lower");
    expect(asym).toContain("lte, UL 15 dB lower");
    const rmse = renderChart(buildChartSpec(load("rmse")));
    expect(rmse).toContain("lte");
    expect(rmse).toContain("nr");
  });

  it("rejects a CSV missing the required columns", () => {
    const rmseText = readFileSync(join(SAMPLES, SAMPLE_FOR.rmse), "utf-8");
    expect(() =>
      buildChartSpec({ kind: "bler", inputs: [{ path: "rmse.csv", text: rmseText }] }),
    ).toThrow(SchemaError);
  });

  it("is deterministic", () => {
    const a = renderChart(buildChartSpec(load("asymmetry")));
    const b = renderChart(buildChartSpec(load("asymmetry")));
    expect(a).toBe(b);
  });
});

describe("command line", () => {
  const cli = join(here, "..", "dist", "index.js");

  it("writes an SVG and exits zero", () => {
    const out = join(mkdtempSync(join(tmpdir(), "figs-")), "bler.svg");
    execFileSync("node", [cli, "--kind", "bler", "--input", join(SAMPLES, "bler_awgn.csv"), "--out", out]);
    expect(readFileSync(out, "utf-8")).toContain("</svg>");
  });

  it("exits 2 on schema mismatch and writes nothing", () => {
    const dir = mkdtempSync(join(tmpdir(), "figs-"));
    const badInput = join(dir, "notbler.csv");
    writeFileSync(badInput, "a,b\n1,2\n");
    const out = join(dir, "fig.svg");
    let code = 0;
    try {
      execFileSync("node", [cli, "--kind", "bler", "--input", badInput, "--out", out], { stdio: "pipe" });
    } catch (err) {
      code = (err as { status: number }).status;
    }
    expect(code).toBe(2);
    expect(existsSync(out)).toBe(false);
  });

  it("exits nonzero on unknown kind", () => {
    let code = 0;
    try {
      execFileSync("node", [cli, "--kind", "pie", "--input", "x.csv", "--out", "y.svg"], { stdio: "pipe" });
    } catch (err) {
      code = (err as { status: number }).status;
    }
    expect(code).not.toBe(0);
  });
});
