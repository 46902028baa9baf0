import { CsvSchemaError, numericColumn, readCsv, readManifestStats } from "./csv.js";
import { renderChart } from "./svg.js";

export type FigureKind = "pdf" | "fades" | "ber" | "plane";

export interface FigureSpec {
  kind: FigureKind;
  inputs: string[];
  title?: string;
}

/** Fading-factor density with an optional Gaussian overlay taken from the
 * run manifest's recorded sample mean/variance (never recomputed here). */
export function renderPdfFigure(csvPath: string, manifestPath?: string, title?: string): string {
  const rows = readCsv(csvPath, ["bin_center", "density"]);
  const centers = numericColumn(rows, "bin_center", csvPath);
  const density = numericColumn(rows, "density", csvPath);
  const series = [
    { label: "empirical Re(g)", x: centers, y: density, color: "#1f4e9c" },
  ];
  if (manifestPath !== undefined) {
    const stats = readManifestStats(manifestPath);
    const mean = Number(stats.re_mean);
    const variance = Number(stats.re_variance);
    if (!Number.isFinite(mean) || !(variance > 0)) {
      throw new CsvSchemaError("stats.re_mean/re_variance missing or invalid", manifestPath);
    }
    const norm = 1 / Math.sqrt(2 * Math.PI * variance);
    series.push({
      label: "Gaussian reference",
      x: centers,
      y: centers.map((c) => norm * Math.exp(-((c - mean) ** 2) / (2 * variance))),
      color: "#c02020",
      dashed: true,
    } as (typeof series)[0]);
  }
  return renderChart({
    title: title ?? "Fading factor density",
    xLabel: "Re(g)",
    yLabel: "density",
    series,
  });
}

export function renderFadesFigure(csvPath: string, title?: string): string {
  const rows = readCsv(csvPath, ["epsilon", "empirical", "rayleigh_baseline"]);
  const eps = numericColumn(rows, "epsilon", csvPath);
  return renderChart({
    title: title ?? "Deep-fade probability",
    xLabel: "threshold epsilon",
    yLabel: "P(|g|^2 / E|g|^2 < eps)",
    xScale: "log",
    yScale: "log",
    series: [
      {
        label: "empirical",
        x: eps,
        y: numericColumn(rows, "empirical", csvPath),
        color: "#1f4e9c",
      },
      {
        label: "Rayleigh baseline",
        x: eps,
        y: numericColumn(rows, "rayleigh_baseline", csvPath),
        color: "#c02020",
        dashed: true,
      },
    ],
  });
}

export function renderBerFigure(csvPaths: string[], title?: string): string {
  const series = csvPaths.map((path, i) => {
    const rows = readCsv(path, ["snr_db", "ber", "trials"]);
    return {
      label: csvPaths.length > 1 ? `curve ${i + 1}` : "uncoded BER",
      x: numericColumn(rows, "snr_db", path),
      y: numericColumn(rows, "ber", path),
      color: ["#1f4e9c", "#c02020", "#20803c"][i % 3],
    };
  });
  return renderChart({
    title: title ?? "BER vs SNR",
    xLabel: "SNR [dB]",
    yLabel: "bit error rate",
    yScale: "log",
    series,
  });
}

const BAND_COLORS: Record<string, string> = {
  broadband: "#c02020",
  mediumband: "#1f4e9c",
  narrowband: "#20803c",
};

/** Operating points on the (T_m, T_s) plane with the regime boundaries
 * T_s = T_m and T_s = 10 T_m. */
export function renderPlaneFigure(csvPath: string, title?: string): string {
  const rows = readCsv(csvPath, ["label", "t_m_s", "t_s_s", "pds_percent", "band"]);
  const tm = numericColumn(rows, "t_m_s", csvPath);
  const ts = numericColumn(rows, "t_s_s", csvPath);
  const positives = tm.concat(ts).filter((v) => v > 0);
  if (positives.length === 0) {
    throw new CsvSchemaError("plane figure needs positive delays", csvPath);
  }
  const lo = Math.min(...positives) / 3;
  const hi = Math.max(...positives) * 3;
  const boundary = [lo, hi];
  const series = [
    {
      label: "T_s = T_m",
      x: boundary,
      y: boundary,
      color: "#888888",
    },
    {
      label: "T_s = 10 T_m",
      x: boundary,
      y: boundary.map((v) => 10 * v),
      color: "#888888",
      dashed: true,
    },
  ];
  const bands = [...new Set(rows.map((r) => String(r.band)))].sort();
  for (const band of bands) {
    const idx = rows.flatMap((r, i) => (String(r.band) === band ? [i] : []));
    series.push({
      label: band,
      x: idx.map((i) => tm[i]),
      y: idx.map((i) => ts[i]),
      color: BAND_COLORS[band] ?? "#333333",
      markers: true,
    } as (typeof series)[0]);
  }
  return renderChart({
    title: title ?? "Operating points on the T_m/T_s plane",
    xLabel: "T_m [s]",
    yLabel: "T_s [s]",
    xScale: "log",
    yScale: "log",
    series,
  });
}

export function renderFigure(spec: FigureSpec): string {
  if (spec.inputs.length === 0) throw new Error("no input files given");
  switch (spec.kind) {
    case "pdf":
      return renderPdfFigure(spec.inputs[0], spec.inputs[1], spec.title);
    case "fades":
      return renderFadesFigure(spec.inputs[0], spec.title);
    case "ber":
      return renderBerFigure(spec.inputs, spec.title);
    case "plane":
      return renderPlaneFigure(spec.inputs[0], spec.title);
  }
}
