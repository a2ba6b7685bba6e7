import { existsSync, mkdtempSync, readFileSync, writeFileSync } from "node:fs";
import { tmpdir } from "node:os";
import { join } from "node:path";

import { afterEach, describe, expect, it, vi } from "vitest";

import { parseSweepCsv, renderSweep, SWEEP_COLUMNS } from "../src/sweep.js";

const FIXTURES = join(__dirname, "fixtures", "sweep");
const DEGENERATE = [
  join(FIXTURES, "sweep_degenerate_LN_e.csv"),
  join(FIXTURES, "sweep_degenerate_KTP_z.csv"),
];

function scratchDir(): string {
  return mkdtempSync(join(tmpdir(), "render-"));
}

afterEach(() => {
  vi.restoreAllMocks();
});

describe("sweep rendering", () => {
  it("draws one series per material with the fixture row counts", () => {
    const out = join(scratchDir(), "sweep.svg");
    const result = renderSweep(DEGENERATE, out, "degenerate");
    expect(existsSync(out)).toBe(true);
    expect(result.series).toEqual([
      { label: "LN_e", points: 5 },
      { label: "KTP_z", points: 5 },
    ]);
    expect(result.skippedTotal).toBe(0);
  });

  it("renders the tuning view with pinned idler and shifting signal", () => {
    const path = join(FIXTURES, "sweep_tuning_LN_e.csv");
    const series = parseSweepCsv(readFileSync(path, "utf8"), path);
    const idlers = series.rows.map((r) => r.lambdaIdlerNm);
    const signals = series.rows.map((r) => r.lambdaSignalNm);
    expect(Math.max(...idlers) - Math.min(...idlers)).toBeLessThan(2.0);
    expect(Math.max(...signals) - Math.min(...signals)).toBeGreaterThan(10.0);

    const out = join(scratchDir(), "tuning.svg");
    const result = renderSweep([path], out, "tuning");
    expect(result.series[0].points).toBe(5);
    expect(readFileSync(out, "utf8")).toContain("pump wavelength (nm)");
  });

  it("skips failed rows with a console warning", () => {
    const warn = vi.spyOn(console, "warn").mockImplementation(() => {});
    const dir = scratchDir();
    const path = join(dir, "sweep_degenerate_LN_e.csv");
    const good = readFileSync(DEGENERATE[0], "utf8").trimEnd().split("\n");
    const failed = good[1].replace(/,ok$/, ",failed: no convergence");
    writeFileSync(path, [good[0], failed, ...good.slice(2)].join("\n") + "\n");
    const out = join(dir, "sweep.svg");
    const result = renderSweep([path], out, "degenerate");
    expect(result.series[0].points).toBe(4);
    expect(result.skippedTotal).toBe(1);
    expect(warn).toHaveBeenCalledWith("skipped 1 failed sweep row(s)");
  });

  it("names a missing column", () => {
    const dir = scratchDir();
    const path = join(dir, "sweep.csv");
    const header = SWEEP_COLUMNS.filter((c) => c !== "lambda0").join(",");
    writeFileSync(path, `${header}\n775,1550,1550,0.35,0.16,1,-1,2,ok\n`);
    expect(() => renderSweep([path], join(dir, "out.svg"), "degenerate")).toThrow(
      /missing required column "lambda0"/,
    );
  });

  it("fails cleanly when every row is unusable", () => {
    const dir = scratchDir();
    const path = join(dir, "sweep.csv");
    writeFileSync(
      path,
      SWEEP_COLUMNS.join(",") +
        "\n775,nan,nan,nan,nan,nan,nan,nan,nan,failed: solver\n",
    );
    const out = join(dir, "out.svg");
    expect(() => renderSweep([path], out, "degenerate")).toThrow(
      /no usable sweep rows/,
    );
    expect(existsSync(out)).toBe(false);
  });
});
