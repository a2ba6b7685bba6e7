import { existsSync, mkdtempSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { describe, expect, it } from "vitest";

import { renderJsaPanels } from "../src/jsaPanels.js";
import { SchemaError } from "../src/csv.js";

const FIXTURES = join(__dirname, "fixtures", "jsa");

const PANEL_INPUTS = [
  join(FIXTURES, "jsa.csv"),
  join(FIXTURES, "pump_envelope.csv"),
  join(FIXTURES, "phasematching.csv"),
  join(FIXTURES, "marginal_signal.csv"),
  join(FIXTURES, "marginal_idler.csv"),
];

function scratchDir(): string {
  return mkdtempSync(join(tmpdir(), "render-"));
}

describe("joint-spectrum panels", () => {
  it("renders three aligned panels with a much narrower idler axis", () => {
    const out = join(scratchDir(), "jsa.svg");
    const result = renderJsaPanels(PANEL_INPUTS, out);
    expect(existsSync(out)).toBe(true);
    expect(result.panelTitles).toEqual([
      "Pump envelope", "Phasematching", "Joint amplitude",
    ]);
    expect(result.idlerAxisNm.span).toBeLessThanOrEqual(result.signalAxisNm.span / 5);
    expect(result.marginalsDrawn).toBe(2);
  });

  it("adds a phase panel on request", () => {
    const out = join(scratchDir(), "jsa_phase.svg");
    const result = renderJsaPanels(PANEL_INPUTS, out, true);
    expect(result.panelTitles).toContain("Phase");
    expect(result.panelTitles).toHaveLength(4);
  });

  it("rejects a single-point grid", () => {
    const dir = scratchDir();
    const lonely = join(dir, "jsa.csv");
    writeFileSync(lonely, "omega_s_rad_s,omega_i_rad_s,re,im\n1.0,2.0,1.0,0.0\n");
    const out = join(dir, "out.svg");
    expect(() => renderJsaPanels([lonely], out)).toThrow(/grid too small to plot/);
    expect(existsSync(out)).toBe(false);
  });

  it("rejects empty input without writing a file", () => {
    const dir = scratchDir();
    const empty = join(dir, "jsa.csv");
    writeFileSync(empty, "");
    const out = join(dir, "out.svg");
    expect(() => renderJsaPanels([empty], out)).toThrow(SchemaError);
    expect(existsSync(out)).toBe(false);
  });

  it("requires exactly three grid inputs", () => {
    const out = join(scratchDir(), "out.svg");
    expect(() => renderJsaPanels(PANEL_INPUTS.slice(0, 2), out)).toThrow(
      /need exactly 3 grid CSVs/,
    );
    expect(existsSync(out)).toBe(false);
  });

  it("names unrecognized headers", () => {
    const dir = scratchDir();
    const odd = join(dir, "odd.csv");
    writeFileSync(odd, "frequency,amplitude\n1,2\n");
    expect(() => renderJsaPanels([odd], join(dir, "out.svg"))).toThrow(
      /unrecognized header/,
    );
  });
});
