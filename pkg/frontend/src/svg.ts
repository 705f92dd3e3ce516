/**
 * Minimal self-contained SVG line charts: linear or log10 y-axis, nice
 * ticks, per-series markers, legend. No DOM, no dependencies.
 */

export interface Series {
  label: string;
  points: Array<[number, number]>; // x, y
  color?: string;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  series: Series[];
  logY?: boolean;
  yMin?: number;
  yMax?: number;
}

const WIDTH = 760;
const HEIGHT = 480;
const MARGIN = { left: 72, right: 24, top: 44, bottom: 52 };

const PALETTE = [
  "#1f77b4",
  "#d62728",
  "#2ca02c",
  "#9467bd",
  "#ff7f0e",
  "#8c564b",
  "#17becf",
  "#7f7f7f",
  "#bcbd22",
  "#e377c2",
];

const MARKERS = ["circle", "square", "diamond", "triangle", "cross"] as const;

export function esc(s: string): string {
  return s.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;").replace(/"/g, "&quot;");
}

function niceTicks(min: number, max: number, count = 6): number[] {
  const range = max - min || 1;
  const rough = range / count;
  const mag = Math.pow(10, Math.floor(Math.log10(rough)));
  const step = [1, 2, 2.5, 5, 10].map((m) => m * mag).find((s) => s >= rough) ?? rough;
  const start = Math.ceil(min / step) * step;
  const ticks: number[] = [];
  for (let v = start; v <= max + step * 1e-9; v += step) ticks.push(Number(v.toFixed(10)));
  return ticks;
}

function decadeTicks(min: number, max: number): number[] {
  const ticks: number[] = [];
  for (let e = Math.floor(Math.log10(min)); e <= Math.ceil(Math.log10(max)); e++) {
    ticks.push(Math.pow(10, e));
  }
  return ticks;
}

function marker(kind: (typeof MARKERS)[number], x: number, y: number, color: string): string {
  const r = 3.2;
  switch (kind) {
    case "circle":
      return `<circle cx="${x}" cy="${y}" r="${r}" fill="${color}"/>`;
    case "square":
      return `<rect x="${x - r}" y="${y - r}" width="${2 * r}" height="${2 * r}" fill="${color}"/>`;
    case "diamond":
      return `<path d="M ${x} ${y - r - 1} L ${x + r + 1} ${y} L ${x} ${y + r + 1} L ${x - r - 1} ${y} Z" fill="${color}"/>`;
    case "triangle":
      return `<path d="M ${x} ${y - r - 1} L ${x + r + 1} ${y + r} L ${x - r - 1} ${y + r} Z" fill="${color}"/>`;
    case "cross":
      return `<path d="M ${x - r} ${y - r} L ${x + r} ${y + r} M ${x - r} ${y + r} L ${x + r} ${y - r}" stroke="${color}" stroke-width="1.6"/>`;
  }
}

export function renderChart(spec: ChartSpec): string {
  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;

  const xs = spec.series.flatMap((s) => s.points.map((p) => p[0]));
  const rawYs = spec.series.flatMap((s) => s.points.map((p) => p[1]));
  const ys = rawYs.filter((y) => Number.isFinite(y) && (!spec.logY || y > 0));
  if (xs.length === 0 || ys.length === 0) throw new Error("nothing to plot");

  const xMin = Math.min(...xs);
  const xMax = Math.max(...xs);
  let yMin = spec.yMin ?? Math.min(...ys);
  let yMax = spec.yMax ?? Math.max(...ys);
  if (yMin === yMax) {
    yMin -= 1;
    yMax += 1;
  }

  const sx = (x: number) => MARGIN.left + ((x - xMin) / (xMax - xMin || 1)) * plotW;
  const sy = (y: number) => {
    const t = spec.logY
      ? (Math.log10(y) - Math.log10(yMin)) / (Math.log10(yMax) - Math.log10(yMin) || 1)
      : (y - yMin) / (yMax - yMin || 1);
    return MARGIN.top + plotH - t * plotH;
  };

  const parts: string[] = [];
  parts.push(
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="Helvetica, Arial, sans-serif">`,
  );
  parts.push(`<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`);
  parts.push(
    `<text x="${WIDTH / 2}" y="24" text-anchor="middle" font-size="15" font-weight="bold">${esc(spec.title)}</text>`,
  );

  // gridlines + ticks
  const yTicks = spec.logY ? decadeTicks(yMin, yMax) : niceTicks(yMin, yMax);
  for (const t of yTicks) {
    if (t < yMin - 1e-12 || t > yMax * (spec.logY ? 1.0000001 : 1) + 1e-12) continue;
    const y = sy(t);
    parts.push(
      `<line x1="${MARGIN.left}" y1="${y}" x2="${WIDTH - MARGIN.right}" y2="${y}" stroke="#ddd" stroke-dasharray="3,3"/>`,
    );
    const label = spec.logY ? `1e${Math.round(Math.log10(t))}` : `${t}`;
    parts.push(`<text x="${MARGIN.left - 8}" y="${y + 4}" text-anchor="end" font-size="11">${label}</text>`);
  }
  for (const t of niceTicks(xMin, xMax, 8)) {
    const x = sx(t);
    parts.push(
      `<line x1="${x}" y1="${MARGIN.top}" x2="${x}" y2="${HEIGHT - MARGIN.bottom}" stroke="#eee"/>`,
    );
    parts.push(
      `<text x="${x}" y="${HEIGHT - MARGIN.bottom + 18}" text-anchor="middle" font-size="11">${t}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333"/>`,
  );

  // axis labels
  parts.push(
    `<text x="${MARGIN.left + plotW / 2}" y="${HEIGHT - 12}" text-anchor="middle" font-size="13">${esc(spec.xLabel)}</text>`,
  );
  parts.push(
    `<text x="18" y="${MARGIN.top + plotH / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 18 ${MARGIN.top + plotH / 2})">${esc(spec.yLabel)}</text>`,
  );

  // series
  spec.series.forEach((series, i) => {
    const color = series.color ?? PALETTE[i % PALETTE.length];
    const mk = MARKERS[i % MARKERS.length];
    const pts = series.points
      .filter(([, y]) => Number.isFinite(y) && (!spec.logY || y > 0))
      .sort((a, b) => a[0] - b[0]);
    if (pts.length === 0) return;
    const path = pts.map(([x, y], j) => `${j ? "L" : "M"} ${sx(x).toFixed(2)} ${sy(y).toFixed(2)}`).join(" ");
    parts.push(`<path d="${path}" fill="none" stroke="${color}" stroke-width="1.8"/>`);
    for (const [x, y] of pts) parts.push(marker(mk, sx(x), sy(y), color));
  });

  // legend
  const legendX = MARGIN.left + 12;
  spec.series.forEach((series, i) => {
    const color = series.color ?? PALETTE[i % PALETTE.length];
    const y = MARGIN.top + 14 + i * 18;
    parts.push(`<line x1="${legendX}" y1="${y}" x2="${legendX + 26}" y2="${y}" stroke="${color}" stroke-width="2"/>`);
    parts.push(marker(MARKERS[i % MARKERS.length], legendX + 13, y, color));
    parts.push(`<text x="${legendX + 32}" y="${y + 4}" font-size="12">${esc(series.label)}</text>`);
  });

  parts.push("</svg>");
  return parts.join("\n");
}
