import Papa from "papaparse";

/** Raised whenever an input file does not match its documented schema. */
export class SchemaError extends Error {}

export interface ParsedCsv {
  fields: string[];
  rows: Record<string, string>[];
}

/** Parse CSV text with a header row; trims header whitespace. */
export function parseCsv(text: string, context: string): ParsedCsv {
  const result = Papa.parse<Record<string, string>>(text.trim(), {
    header: true,
    skipEmptyLines: true,
    transformHeader: (h) => h.trim(),
  });
  if (result.errors.length > 0) {
    const first = result.errors[0];
    throw new SchemaError(`${context}: CSV parse error: ${first.message}`);
  }
  const fields = result.meta.fields ?? [];
  if (fields.length === 0 || result.data.length === 0) {
    throw new SchemaError(`${context}: empty CSV (no data rows)`);
  }
  return { fields, rows: result.data };
}

/** Require every named column, reporting the first missing one. */
export function requireColumns(
  parsed: ParsedCsv,
  required: string[],
  context: string,
): void {
  for (const column of required) {
    if (!parsed.fields.includes(column)) {
      throw new SchemaError(`${context}: missing required column "${column}"`);
    }
  }
}

/** Numeric cell with a named-column error on garbage. */
export function numberCell(
  row: Record<string, string>,
  column: string,
  context: string,
): number {
  const raw = row[column];
  if (raw === undefined || raw === "") {
    throw new SchemaError(`${context}: empty value in column "${column}"`);
  }
  if (raw === "nan") {
    return NaN;
  }
  const value = Number(raw);
  if (!Number.isFinite(value)) {
    throw new SchemaError(
      `${context}: non-numeric value "${raw}" in column "${column}"`,
    );
  }
  return value;
}
