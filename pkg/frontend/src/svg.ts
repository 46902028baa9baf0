/**
 * Minimal deterministic SVG line/scatter chart builder. Identical inputs
 * always produce the identical byte stream: no timestamps, no randomness,
 * fixed-precision coordinates.
 */

export const WIDTH = 640;
export const HEIGHT = 420;
const MARGIN = { top: 36, right: 24, bottom: 48, left: 64 };

export type Scale = "linear" | "log";

export interface Series {
  label: string;
  x: number[];
  y: number[];
  color: string;
  dashed?: boolean;
  markers?: boolean;
}

export interface ChartSpec {
  title: string;
  xLabel: string;
  yLabel: string;
  xScale?: Scale;
  yScale?: Scale;
  series: Series[];
  /** extra raw SVG elements drawn under the series (e.g. region shading) */
  underlay?: (mapX: (v: number) => number, mapY: (v: number) => number) => string[];
}

const fmt = (v: number): string => v.toFixed(2);

function esc(text: string): string {
  return text.replace(/&/g, "&amp;").replace(/</g, "&lt;").replace(/>/g, "&gt;");
}

function transform(scale: Scale, v: number): number {
  return scale === "log" ? Math.log10(v) : v;
}

function ticks(scale: Scale, lo: number, hi: number): number[] {
  if (scale === "log") {
    const out: number[] = [];
    for (let e = Math.ceil(lo); e <= Math.floor(hi); e += 1) out.push(e);
    if (out.length < 2) return [lo, hi];
    return out;
  }
  const span = hi - lo;
  const step = Math.pow(10, Math.floor(Math.log10(span / 4)));
  const mult = span / step > 8 ? 2 : 1;
  const out: number[] = [];
  for (let t = Math.ceil(lo / (step * mult)) * step * mult; t <= hi + 1e-12; t += step * mult) {
    out.push(t);
  }
  return out;
}

function tickLabel(scale: Scale, t: number): string {
  if (scale === "log") return `1e${t}`;
  if (t !== 0 && (Math.abs(t) >= 1e4 || Math.abs(t) < 1e-3)) return t.toExponential(0);
  return String(Number(t.toPrecision(6)));
}

export function renderChart(spec: ChartSpec): string {
  const xScale = spec.xScale ?? "linear";
  const yScale = spec.yScale ?? "linear";

  const xs: number[] = [];
  const ys: number[] = [];
  for (const s of spec.series) {
    for (let i = 0; i < s.x.length; i += 1) {
      if (xScale === "log" && s.x[i] <= 0) continue;
      if (yScale === "log" && s.y[i] <= 0) continue;
      xs.push(transform(xScale, s.x[i]));
      ys.push(transform(yScale, s.y[i]));
    }
  }
  if (xs.length === 0) throw new Error("no drawable points");

  let xLo = Math.min(...xs);
  let xHi = Math.max(...xs);
  let yLo = Math.min(...ys);
  let yHi = Math.max(...ys);
  if (xHi === xLo) {
    xLo -= 1;
    xHi += 1;
  }
  if (yHi === yLo) {
    yLo -= 1;
    yHi += 1;
  }
  const yPad = 0.05 * (yHi - yLo);
  yLo -= yPad;
  yHi += yPad;

  const plotW = WIDTH - MARGIN.left - MARGIN.right;
  const plotH = HEIGHT - MARGIN.top - MARGIN.bottom;
  const mapX = (v: number): number =>
    MARGIN.left + ((transform(xScale, v) - xLo) / (xHi - xLo)) * plotW;
  const mapY = (v: number): number =>
    MARGIN.top + plotH - ((transform(yScale, v) - yLo) / (yHi - yLo)) * plotH;

  const parts: string[] = [
    `<svg xmlns="http://www.w3.org/2000/svg" width="${WIDTH}" height="${HEIGHT}" viewBox="0 0 ${WIDTH} ${HEIGHT}" font-family="sans-serif">`,
    `<rect width="${WIDTH}" height="${HEIGHT}" fill="white"/>`,
    `<text x="${WIDTH / 2}" y="22" text-anchor="middle" font-size="15">${esc(spec.title)}</text>`,
  ];

  if (spec.underlay) parts.push(...spec.underlay(mapX, mapY));

  for (const t of ticks(xScale, xLo, xHi)) {
    const px = MARGIN.left + ((t - xLo) / (xHi - xLo)) * plotW;
    parts.push(
      `<line x1="${fmt(px)}" y1="${MARGIN.top}" x2="${fmt(px)}" y2="${MARGIN.top + plotH}" stroke="#dddddd"/>`,
      `<text x="${fmt(px)}" y="${MARGIN.top + plotH + 18}" text-anchor="middle" font-size="11">${esc(tickLabel(xScale, t))}</text>`,
    );
  }
  for (const t of ticks(yScale, yLo, yHi)) {
    const py = MARGIN.top + plotH - ((t - yLo) / (yHi - yLo)) * plotH;
    parts.push(
      `<line x1="${MARGIN.left}" y1="${fmt(py)}" x2="${MARGIN.left + plotW}" y2="${fmt(py)}" stroke="#dddddd"/>`,
      `<text x="${MARGIN.left - 8}" y="${fmt(py + 4)}" text-anchor="end" font-size="11">${esc(tickLabel(yScale, t))}</text>`,
    );
  }
  parts.push(
    `<rect x="${MARGIN.left}" y="${MARGIN.top}" width="${plotW}" height="${plotH}" fill="none" stroke="#333333"/>`,
    `<text x="${WIDTH / 2}" y="${HEIGHT - 10}" text-anchor="middle" font-size="13">${esc(spec.xLabel)}</text>`,
    `<text x="18" y="${HEIGHT / 2}" text-anchor="middle" font-size="13" transform="rotate(-90 18 ${HEIGHT / 2})">${esc(spec.yLabel)}</text>`,
  );

  for (const s of spec.series) {
    const pts: string[] = [];
    for (let i = 0; i < s.x.length; i += 1) {
      if (xScale === "log" && s.x[i] <= 0) continue;
      if (yScale === "log" && s.y[i] <= 0) continue;
      pts.push(`${fmt(mapX(s.x[i]))},${fmt(mapY(s.y[i]))}`);
    }
    const dash = s.dashed ? ' stroke-dasharray="6 4"' : "";
    if (pts.length > 1 && !s.markers) {
      parts.push(
        `<polyline data-series="${esc(s.label)}" points="${pts.join(" ")}" fill="none" stroke="${s.color}" stroke-width="1.5"${dash}/>`,
      );
    } else {
      for (const p of pts) {
        const [cx, cy] = p.split(",");
        parts.push(
          `<circle data-series="${esc(s.label)}" cx="${cx}" cy="${cy}" r="4" fill="${s.color}"/>`,
        );
      }
    }
  }

  spec.series.forEach((s, i) => {
    const ly = MARGIN.top + 14 + 16 * i;
    const lx = MARGIN.left + plotW - 150;
    parts.push(
      `<line x1="${lx}" y1="${ly - 4}" x2="${lx + 22}" y2="${ly - 4}" stroke="${s.color}" stroke-width="1.5"${s.dashed ? ' stroke-dasharray="6 4"' : ""}/>`,
      `<text x="${lx + 28}" y="${ly}" font-size="11">${esc(s.label)}</text>`,
    );
  });

  parts.push("</svg>");
  return parts.join("\n") + "\n";
}
