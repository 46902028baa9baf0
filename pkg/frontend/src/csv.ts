import { readFileSync } from "node:fs";
import Papa from "papaparse";

export class CsvSchemaError extends Error {
  constructor(
    message: string,
    readonly path: string,
  ) {
    super(`${path}: ${message}`);
    this.name = "CsvSchemaError";
  }
}

export type Row = Record<string, number | string>;

/**
 * Read a CSV artifact and check that it carries exactly the expected columns
 * (order included — the upstream writer is deterministic) and at least one
 * data row. Numeric columns are parsed to numbers.
 */
export function readCsv(path: string, expectedColumns: string[]): Row[] {
  const text = readFileSync(path, "utf8");
  const parsed = Papa.parse<Row>(text.trim(), {
    header: true,
    dynamicTyping: true,
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    throw new CsvSchemaError(parsed.errors[0].message, path);
  }
  const columns = parsed.meta.fields ?? [];
  if (JSON.stringify(columns) !== JSON.stringify(expectedColumns)) {
    throw new CsvSchemaError(
      `expected columns [${expectedColumns.join(", ")}], got [${columns.join(", ")}]`,
      path,
    );
  }
  if (parsed.data.length === 0) {
    throw new CsvSchemaError("no data rows", path);
  }
  return parsed.data;
}

export function numericColumn(rows: Row[], name: string, path: string): number[] {
  return rows.map((row) => {
    const value = row[name];
    if (typeof value !== "number" || !Number.isFinite(value)) {
      throw new CsvSchemaError(`column ${name} has non-numeric value ${value}`, path);
    }
    return value;
  });
}

export function readManifestStats(path: string): Record<string, unknown> {
  const doc = JSON.parse(readFileSync(path, "utf8"));
  if (typeof doc !== "object" || doc === null || typeof doc.stats !== "object") {
    throw new CsvSchemaError("manifest has no stats object", path);
  }
  return doc.stats as Record<string, unknown>;
}
