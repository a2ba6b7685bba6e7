import { readFileSync, writeFileSync } from "node:fs";
import { basename } from "node:path";

import { viridis, divergent } from "./colormap.js";
import { SchemaError } from "./csv.js";
import {
  AxisSpanNm,
  GridData,
  MarginalData,
  axisSpanNm,
  omegaToNm,
  parseGridCsv,
  parseMarginalCsv,
} from "./grid.js";
import { encodePng } from "./png.js";
import { Frame, SvgDocument, xPixel, yPixel } from "./svg.js";

const PANEL = { width: 240, height: 240, top: 48, left: 72, gap: 84 };

export interface JsaPanelsResult {
  outPath: string;
  panelTitles: string[];
  signalAxisNm: AxisSpanNm;
  idlerAxisNm: AxisSpanNm;
  marginalsDrawn: number;
}

interface ClassifiedInputs {
  grids: { title: string; data: GridData }[];
  marginals: { title: string; data: MarginalData }[];
}

const GRID_TITLES: [RegExp, string, number][] = [
  [/pump/i, "Pump envelope", 0],
  [/phasematch/i, "Phasematching", 1],
  [/jsa|joint/i, "Joint amplitude", 2],
];

function classify(paths: string[]): ClassifiedInputs {
  const grids: { title: string; data: GridData; order: number }[] = [];
  const marginals: { title: string; data: MarginalData }[] = [];
  for (const path of paths) {
    const text = readFileSync(path, "utf8");
    const name = basename(path);
    const header = text.slice(0, text.indexOf("\n")).trim();
    if (header.startsWith("omega_s_rad_s")) {
      const match = GRID_TITLES.find(([pattern]) => pattern.test(name));
      grids.push({
        title: match ? match[1] : name,
        order: match ? match[2] : GRID_TITLES.length,
        data: parseGridCsv(text, name),
      });
    } else if (header.startsWith("wavelength_nm")) {
      marginals.push({ title: name, data: parseMarginalCsv(text, name) });
    } else {
      throw new SchemaError(
        `${name}: unrecognized header "${header}"; expected a grid or marginal CSV`,
      );
    }
  }
  grids.sort((a, b) => a.order - b.order);
  return { grids, marginals };
}

function rasterize(
  grid: GridData,
  values: Float64Array,
  palette: (t: number) => [number, number, number],
): string {
  // pixel rows run top-to-bottom = descending idler
  const nS = grid.omegaSignal.length;
  const nI = grid.omegaIdler.length;
  const rgba = new Uint8Array(nS * nI * 4);
  let max = 0;
  for (const v of values) max = Math.max(max, Math.abs(v));
  if (max === 0) max = 1;
  for (let j = 0; j < nI; j++) {
    for (let i = 0; i < nS; i++) {
      const value = values[i * nI + j] / max;
      const [r, g, b] = palette(palette === divergent ? 0.5 + value / 2 : value);
      const pixel = ((nI - 1 - j) * nS + i) * 4;
      rgba[pixel] = r;
      rgba[pixel + 1] = g;
      rgba[pixel + 2] = b;
      rgba[pixel + 3] = 255;
    }
  }
  return encodePng(nS, nI, rgba).toString("base64");
}

function drawMarginalStrip(
  doc: SvgDocument,
  frame: Frame,
  marginal: MarginalData,
  horizontal: boolean,
): void {
  const peak = Math.max(...marginal.intensity);
  const points: [number, number][] = marginal.wavelengthNm.map((nm, idx) => {
    const fraction = marginal.intensity[idx] / peak;
    if (horizontal) {
      return [xPixel(frame, nm), frame.y + frame.height + 26 - 22 * fraction];
    }
    return [frame.x + frame.width + 4 + 22 * fraction, yPixel(frame, nm)];
  });
  doc.polyline(points, "#555", 1.0);
}

/** Three aligned heatmap panels (pump, phasematching, joint amplitude). */
export function renderJsaPanels(
  inputs: string[],
  outPath: string,
  showPhase = false,
): JsaPanelsResult {
  const { grids, marginals } = classify(inputs);
  if (grids.length !== 3) {
    throw new SchemaError(
      `need exactly 3 grid CSVs (pump envelope, phasematching, joint amplitude), ` +
        `got ${grids.length}`,
    );
  }
  const reference = grids[grids.length - 1].data;
  const signalAxis = axisSpanNm(reference.omegaSignal);
  const idlerAxis = axisSpanNm(reference.omegaIdler);

  const panelCount = showPhase ? 4 : 3;
  const width = PANEL.left + panelCount * (PANEL.width + PANEL.gap);
  const height = PANEL.top + PANEL.height + 96;
  const doc = new SvgDocument(width, height);

  const panels = grids.map(({ title, data }) => ({
    title,
    data,
    values: data.magnitude,
    palette: viridis,
  }));
  if (showPhase) {
    const jsa = grids[grids.length - 1];
    panels.push({
      title: "Phase",
      data: jsa.data,
      values: Float64Array.from(jsa.data.phase, (p) => p / Math.PI),
      palette: divergent,
    });
  }

  panels.forEach((panel, index) => {
    const frame: Frame = {
      x: PANEL.left + index * (PANEL.width + PANEL.gap),
      y: PANEL.top,
      width: PANEL.width,
      height: PANEL.height,
      xRange: [
        axisSpanNm(panel.data.omegaSignal).min,
        axisSpanNm(panel.data.omegaSignal).max,
      ],
      yRange: [
        axisSpanNm(panel.data.omegaIdler).min,
        axisSpanNm(panel.data.omegaIdler).max,
      ],
    };
    doc.image(frame, rasterize(panel.data, panel.values, panel.palette));
    doc.axes(frame, "signal wavelength (nm)", "idler wavelength (nm)");
    doc.text(frame.x + frame.width / 2, PANEL.top - 12, panel.title, { size: 14 });
    if (panel.title === "Joint amplitude") {
      for (const marginal of marginals) {
        // the forward marginal is the one spanning like the signal axis
        const nm = marginal.data.wavelengthNm;
        const span = Math.max(...nm) - Math.min(...nm);
        const isSignal =
          Math.abs(span - signalAxis.span) < Math.abs(span - idlerAxis.span);
        drawMarginalStrip(doc, frame, marginal.data, isSignal);
      }
    }
  });

  writeFileSync(outPath, doc.render());
  return {
    outPath,
    panelTitles: panels.map((p) => p.title),
    signalAxisNm: signalAxis,
    idlerAxisNm: idlerAxis,
    marginalsDrawn: marginals.length,
  };
}
