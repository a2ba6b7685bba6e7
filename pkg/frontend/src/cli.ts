#!/usr/bin/env node
import yargs from "yargs";
import { hideBin } from "yargs/helpers";

import { SchemaError } from "./csv.js";
import { renderJsaPanels } from "./jsaPanels.js";
import { renderSweep } from "./sweep.js";

export async function run(argv: string[]): Promise<number> {
  const args = await yargs(argv)
    .scriptName("render")
    .option("kind", {
      choices: ["jsa", "sweep"] as const,
      demandOption: true,
      describe: "figure type",
    })
    .option("in", {
      type: "string",
      array: true,
      demandOption: true,
      describe: "input CSV file(s)",
    })
    .option("out", {
      type: "string",
      demandOption: true,
      describe: "output image path (SVG)",
    })
    .option("mode", {
      choices: ["degenerate", "tuning"] as const,
      default: "degenerate" as const,
      describe: "sweep flavor (sweep kind only)",
    })
    .option("show-phase", {
      type: "boolean",
      default: false,
      describe: "add a phase panel to the joint-spectrum figure",
    })
    .strict()
    .fail((message, error) => {
      throw error ?? new Error(message);
    })
    .parse();

  try {
    if (args.kind === "jsa") {
      const result = renderJsaPanels(args.in, args.out, args["show-phase"]);
      console.log(
        `wrote ${result.outPath}: ${result.panelTitles.length} panels, ` +
          `signal axis ${result.signalAxisNm.span.toFixed(3)} nm, ` +
          `idler axis ${result.idlerAxisNm.span.toFixed(3)} nm`,
      );
    } else {
      const result = renderSweep(args.in, args.out, args.mode);
      const summary = result.series
        .map((s) => `${s.label}: ${s.points} rows`)
        .join(", ");
      console.log(`wrote ${result.outPath}: ${summary}`);
    }
    return 0;
  } catch (error) {
    if (error instanceof SchemaError) {
      console.error(`schema error: ${error.message}`);
      return 1;
    }
    if (error instanceof Error && "code" in error && error.code === "ENOENT") {
      console.error(`input error: ${error.message}`);
      return 1;
    }
    throw error;
  }
}

const invokedDirectly =
  process.argv[1] !== undefined &&
  import.meta.url === new URL(`file://${process.argv[1]}`).href;
if (invokedDirectly) {
  run(hideBin(process.argv)).then((code) => {
    process.exitCode = code;
  });
}
