/**
 * Strict parser for simulator objective-surface CSV files.
 *
 * Contract (fixed by the simulator's report writer): UTF-8, LF line endings,
 * exact header `grid_value,obj_original,obj_nsp_best,obj_nsp_worst`, numeric
 * cells printed with 12 significant digits, literal `nan` for grid points a
 * case never produced a finite value at, and a strictly increasing grid
 * column.
 */

import Papa from "papaparse";

export const CASE_COLUMNS = ["obj_original", "obj_nsp_best", "obj_nsp_worst"] as const;
export type CaseColumn = (typeof CASE_COLUMNS)[number];

export const EXPECTED_HEADER: readonly string[] = ["grid_value", ...CASE_COLUMNS];

export interface SurfaceTable {
  /** Swept parameter values, strictly increasing (degrees / seconds / Hz). */
  gridValues: number[];
  /** Objective values per case; NaN where the CSV holds `nan`. */
  series: Record<CaseColumn, number[]>;
}

export class CsvSchemaError extends Error {
  constructor(source: string, detail: string) {
    super(`${source}: ${detail}`);
    this.name = "CsvSchemaError";
  }
}

function parseCell(raw: string, row: number, column: string, source: string): number {
  const cell = raw.trim();
  if (cell.toLowerCase() === "nan") {
    return Number.NaN;
  }
  if (cell === "") {
    throw new CsvSchemaError(source, `row ${row}: empty ${column} cell`);
  }
  const value = Number(cell);
  if (!Number.isFinite(value)) {
    throw new CsvSchemaError(source, `row ${row}: ${column} cell ${JSON.stringify(cell)} is not a number`);
  }
  return value;
}

/** Parse one surface CSV, rejecting anything that deviates from the schema. */
export function parseSurfaceCsv(text: string, source = "<csv>"): SurfaceTable {
  const parsed = Papa.parse<string[]>(text, {
    delimiter: ",",
    skipEmptyLines: true,
  });
  if (parsed.errors.length > 0) {
    const first = parsed.errors[0]!;
    throw new CsvSchemaError(source, `malformed CSV: ${first.message}`);
  }
  const rows = parsed.data;
  if (rows.length === 0) {
    throw new CsvSchemaError(source, "file is empty");
  }

  const header = rows[0]!.map((h) => h.trim());
  const missing = EXPECTED_HEADER.filter((name) => !header.includes(name));
  const unexpected = header.filter((name) => !EXPECTED_HEADER.includes(name));
  if (missing.length > 0 || unexpected.length > 0) {
    const parts: string[] = [];
    if (missing.length > 0) parts.push(`missing column(s): ${missing.join(", ")}`);
    if (unexpected.length > 0) parts.push(`unexpected column(s): ${unexpected.join(", ")}`);
    throw new CsvSchemaError(source, `bad header — ${parts.join("; ")}`);
  }
  if (header.join(",") !== EXPECTED_HEADER.join(",")) {
    throw new CsvSchemaError(
      source,
      `bad header — columns out of order: expected ${EXPECTED_HEADER.join(",")}, got ${header.join(",")}`,
    );
  }

  if (rows.length === 1) {
    throw new CsvSchemaError(source, "no data rows");
  }

  const gridValues: number[] = [];
  const series: Record<CaseColumn, number[]> = {
    obj_original: [],
    obj_nsp_best: [],
    obj_nsp_worst: [],
  };
  for (let i = 1; i < rows.length; i++) {
    const row = rows[i]!;
    if (row.length !== EXPECTED_HEADER.length) {
      throw new CsvSchemaError(source, `row ${i}: expected ${EXPECTED_HEADER.length} cells, got ${row.length}`);
    }
    const grid = parseCell(row[0]!, i, "grid_value", source);
    if (Number.isNaN(grid)) {
      throw new CsvSchemaError(source, `row ${i}: grid_value must be finite, got nan`);
    }
    const prev = gridValues[gridValues.length - 1];
    if (prev !== undefined && grid <= prev) {
      throw new CsvSchemaError(source, `row ${i}: grid_value ${grid} does not increase past ${prev}`);
    }
    gridValues.push(grid);
    CASE_COLUMNS.forEach((column, c) => {
      series[column].push(parseCell(row[c + 1]!, i, column, source));
    });
  }
  return { gridValues, series };
}
