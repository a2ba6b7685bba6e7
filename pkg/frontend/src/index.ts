export { SchemaError, parseCsv, requireColumns } from "./csv.js";
export {
  GRID_COLUMNS,
  MARGINAL_COLUMNS,
  axisSpanNm,
  omegaToNm,
  parseGridCsv,
  parseMarginalCsv,
} from "./grid.js";
export { encodePng } from "./png.js";
export { renderJsaPanels } from "./jsaPanels.js";
export { SWEEP_COLUMNS, parseSweepCsv, renderSweep } from "./sweep.js";
export { run } from "./cli.js";
