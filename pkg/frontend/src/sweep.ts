import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { numberCell, parseCsv, requireColumns, SchemaError } from "./csv.js";
import { Frame, SvgDocument, xPixel, yPixel } from "./svg.js";

export const SWEEP_COLUMNS = [
  "lambda_p_nm", "lambda_s_nm", "lambda_i_nm", "grating_um",
  "pump_fwhm_opt_nm", "lambda0", "purity", "theta_deg", "eq4_residual",
  "status",
];

const SERIES_COLORS = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"];

export interface SweepRow {
  lambdaPumpNm: number;
  lambdaSignalNm: number;
  lambdaIdlerNm: number;
  lambda0: number;
  status: string;
}

export interface SweepSeries {
  label: string;
  rows: SweepRow[];
  skipped: number;
}

export interface SweepRenderResult {
  outPath: string;
  series: { label: string; points: number }[];
  skippedTotal: number;
}

export function parseSweepCsv(text: string, context: string): SweepSeries {
  const parsed = parseCsv(text, context);
  requireColumns(parsed, SWEEP_COLUMNS, context);
  const rows: SweepRow[] = [];
  let skipped = 0;
  for (const raw of parsed.rows) {
    if (raw.status !== "ok") {
      skipped += 1;
      continue;
    }
    rows.push({
      lambdaPumpNm: numberCell(raw, "lambda_p_nm", context),
      lambdaSignalNm: numberCell(raw, "lambda_s_nm", context),
      lambdaIdlerNm: numberCell(raw, "lambda_i_nm", context),
      lambda0: numberCell(raw, "lambda0", context),
      status: raw.status,
    });
  }
  const label = basename(context)
    .replace(/^sweep_(degenerate|tuning)_/, "")
    .replace(/\.(csv|json)$/, "");
  return { label, rows, skipped };
}

function frameFor(
  x: number, y: number, width: number, height: number,
  xs: number[], ys: number[], pad = 0.05,
): Frame {
  const lo = (v: number[]) => Math.min(...v);
  const hi = (v: number[]) => Math.max(...v);
  const xSpan = hi(xs) - lo(xs) || 1;
  const ySpan = hi(ys) - lo(ys) || 1;
  return {
    x, y, width, height,
    xRange: [lo(xs) - pad * xSpan, hi(xs) + pad * xSpan],
    yRange: [lo(ys) - pad * ySpan, hi(ys) + pad * ySpan],
  };
}

function polyline(
  doc: SvgDocument, frame: Frame, xs: number[], ys: number[], color: string,
): void {
  doc.polyline(
    xs.map((x, i) => [xPixel(frame, x), yPixel(frame, ys[i])] as [number, number]),
    color,
  );
}

/** Leading-coefficient curve per material over the degeneracy wavelength. */
function renderDegenerate(doc: SvgDocument, series: SweepSeries[]): void {
  const xs = series.flatMap((s) => s.rows.map((r) => r.lambdaSignalNm));
  const ys = series.flatMap((s) => s.rows.map((r) => r.lambda0));
  const frame = frameFor(80, 48, 520, 300, xs, ys);
  series.forEach((s, idx) => {
    const color = SERIES_COLORS[idx % SERIES_COLORS.length];
    polyline(doc, frame, s.rows.map((r) => r.lambdaSignalNm),
             s.rows.map((r) => r.lambda0), color);
    doc.text(frame.x + frame.width + 8, frame.y + 16 + 16 * idx, s.label, {
      anchor: "start", size: 12,
    });
    doc.line(frame.x + frame.width + 8, frame.y + 20 + 16 * idx - 10,
             frame.x + frame.width + 2, frame.y + 20 + 16 * idx - 10, color, 2);
  });
  doc.axes(frame, "degeneracy wavelength (nm)", "leading Schmidt coefficient");
  doc.text(frame.x + frame.width / 2, 24, "Degenerate-source separability", {
    size: 14,
  });
}

/** Tuning view: separability plus signal/idler centers against the pump. */
function renderTuning(doc: SvgDocument, series: SweepSeries[]): void {
  const pumps = series.flatMap((s) => s.rows.map((r) => r.lambdaPumpNm));
  const lambda0s = series.flatMap((s) => s.rows.map((r) => r.lambda0));
  const top = frameFor(80, 48, 520, 170, pumps, lambda0s);
  series.forEach((s, idx) => {
    polyline(doc, top, s.rows.map((r) => r.lambdaPumpNm),
             s.rows.map((r) => r.lambda0),
             SERIES_COLORS[idx % SERIES_COLORS.length]);
  });
  doc.axes(top, "", "leading coefficient");
  doc.text(top.x + top.width / 2, 24, "Pump tuning at fixed grating", { size: 14 });

  const wavelengths = series.flatMap((s) =>
    s.rows.flatMap((r) => [r.lambdaSignalNm, r.lambdaIdlerNm]),
  );
  const bottom = frameFor(80, 290, 520, 170, pumps, wavelengths);
  series.forEach((s, idx) => {
    const base = SERIES_COLORS[idx % SERIES_COLORS.length];
    polyline(doc, bottom, s.rows.map((r) => r.lambdaPumpNm),
             s.rows.map((r) => r.lambdaSignalNm), base);
    polyline(doc, bottom, s.rows.map((r) => r.lambdaPumpNm),
             s.rows.map((r) => r.lambdaIdlerNm), "#777777");
    doc.text(bottom.x + bottom.width + 8, bottom.y + 16 + 32 * idx,
             `${s.label} signal`, { anchor: "start", size: 12 });
    doc.text(bottom.x + bottom.width + 8, bottom.y + 32 + 32 * idx,
             `${s.label} idler`, { anchor: "start", size: 12 });
  });
  doc.axes(bottom, "pump wavelength (nm)", "photon wavelength (nm)");
}

export function renderSweep(
  inputs: string[],
  outPath: string,
  mode: "degenerate" | "tuning",
): SweepRenderResult {
  const series = inputs.map((path) =>
    parseSweepCsv(readFileSync(path, "utf8"), basename(path)),
  );
  const skippedTotal = series.reduce((acc, s) => acc + s.skipped, 0);
  if (skippedTotal > 0) {
    console.warn(`skipped ${skippedTotal} failed sweep row(s)`);
  }
  if (series.every((s) => s.rows.length === 0)) {
    throw new SchemaError("no usable sweep rows in any input");
  }
  const doc = new SvgDocument(700, mode === "tuning" ? 520 : 420);
  if (mode === "degenerate") {
    renderDegenerate(doc, series);
  } else {
    renderTuning(doc, series);
  }
  writeFileSync(outPath, doc.render());
  return {
    outPath,
    series: series.map((s) => ({ label: s.label, points: s.rows.length })),
    skippedTotal,
  };
}
