import { numberCell, parseCsv, requireColumns, SchemaError } from "./csv.js";

const SPEED_OF_LIGHT_M_S = 299792458;

export const GRID_COLUMNS = ["omega_s_rad_s", "omega_i_rad_s", "re", "im"];
export const MARGINAL_COLUMNS = ["wavelength_nm", "intensity"];

/** Complex grid magnitude |f| indexed as values[iSignal * nIdler + iIdler]. */
export interface GridData {
  omegaSignal: number[];
  omegaIdler: number[];
  magnitude: Float64Array;
  phase: Float64Array;
}

export interface MarginalData {
  wavelengthNm: number[];
  intensity: number[];
}

export function omegaToNm(omega: number): number {
  return ((2 * Math.PI * SPEED_OF_LIGHT_M_S) / omega) * 1e9;
}

/** Long-format grid CSV (omega_s, omega_i, re, im) to a dense magnitude grid. */
export function parseGridCsv(text: string, context: string): GridData {
  const parsed = parseCsv(text, context);
  requireColumns(parsed, GRID_COLUMNS, context);

  const signalSet: number[] = [];
  const idlerSet: number[] = [];
  const seenSignal = new Map<number, number>();
  const seenIdler = new Map<number, number>();
  for (const row of parsed.rows) {
    const omegaS = numberCell(row, "omega_s_rad_s", context);
    const omegaI = numberCell(row, "omega_i_rad_s", context);
    if (!seenSignal.has(omegaS)) {
      seenSignal.set(omegaS, signalSet.length);
      signalSet.push(omegaS);
    }
    if (!seenIdler.has(omegaI)) {
      seenIdler.set(omegaI, idlerSet.length);
      idlerSet.push(omegaI);
    }
  }
  if (signalSet.length < 2 || idlerSet.length < 2) {
    throw new SchemaError(`${context}: grid too small to plot`);
  }
  if (parsed.rows.length !== signalSet.length * idlerSet.length) {
    throw new SchemaError(
      `${context}: expected a complete ${signalSet.length} x ${idlerSet.length} ` +
        `grid, got ${parsed.rows.length} rows`,
    );
  }
  const nIdler = idlerSet.length;
  const magnitude = new Float64Array(signalSet.length * nIdler);
  const phase = new Float64Array(signalSet.length * nIdler);
  for (const row of parsed.rows) {
    const i = seenSignal.get(numberCell(row, "omega_s_rad_s", context))!;
    const j = seenIdler.get(numberCell(row, "omega_i_rad_s", context))!;
    const re = numberCell(row, "re", context);
    const im = numberCell(row, "im", context);
    magnitude[i * nIdler + j] = Math.hypot(re, im);
    phase[i * nIdler + j] = Math.atan2(im, re);
  }
  return { omegaSignal: signalSet, omegaIdler: idlerSet, magnitude, phase };
}

export function parseMarginalCsv(text: string, context: string): MarginalData {
  const parsed = parseCsv(text, context);
  requireColumns(parsed, MARGINAL_COLUMNS, context);
  const wavelengthNm: number[] = [];
  const intensity: number[] = [];
  for (const row of parsed.rows) {
    wavelengthNm.push(numberCell(row, "wavelength_nm", context));
    intensity.push(numberCell(row, "intensity", context));
  }
  return { wavelengthNm, intensity };
}

export interface AxisSpanNm {
  min: number;
  max: number;
  span: number;
}

/** Wavelength span of a frequency axis (nm, ascending). */
export function axisSpanNm(omegas: number[]): AxisSpanNm {
  const nm = omegas.map(omegaToNm);
  const min = Math.min(...nm);
  const max = Math.max(...nm);
  return { min, max, span: max - min };
}
