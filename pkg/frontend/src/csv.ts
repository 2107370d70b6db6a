/**
 * CSV loading for the simulator's output schemas.
 *
 * Every file starts with a `# schema: <name> <version>` comment followed by a
 * header row; loaders verify both before touching the data, so a renderer can
 * never silently misread columns.
 */

import { readFileSync } from "fs";

export class CsvError extends Error {}

export interface TimeseriesRow {
  t: number;
  population: number;
  xi2: number | null;
  zeta2: number | null;
}

export interface SweepRow {
  delta: number;
  steadyPopulation: number;
  zeta2Inf: number;
  boundState: boolean;
}

interface RawTable {
  schema: string;
  header: string[];
  rows: string[][];
}

function readTable(path: string): RawTable {
  let text: string;
  try {
    text = readFileSync(path, "utf8");
  } catch {
    throw new CsvError(`cannot read CSV file: ${path}`);
  }
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new CsvError(`empty CSV file: ${path}`);
  }
  const schemaMatch = /^#\s*schema:\s*(.+)$/.exec(lines[0]);
  if (!schemaMatch) {
    throw new CsvError(`missing schema declaration in ${path}`);
  }
  if (lines.length < 2) {
    throw new CsvError(`missing header row in ${path}`);
  }
  return {
    schema: schemaMatch[1].trim(),
    header: lines[1].split(","),
    rows: lines.slice(2).map((line) => line.split(",")),
  };
}

function expectSchema(table: RawTable, schema: string, header: string, path: string): void {
  if (table.schema !== schema) {
    throw new CsvError(`expected schema "${schema}" but found "${table.schema}" in ${path}`);
  }
  if (table.header.join(",") !== header) {
    throw new CsvError(`unexpected header "${table.header.join(",")}" in ${path}`);
  }
  if (table.rows.length === 0) {
    throw new CsvError(`no data rows in ${path}`);
  }
}

function num(field: string, path: string): number {
  const value = Number(field);
  if (field === "" || Number.isNaN(value)) {
    throw new CsvError(`non-numeric field "${field}" in ${path}`);
  }
  return value;
}

/** empty fields are the writer's undefined markers */
function numOrNull(field: string, path: string): number | null {
  return field === "" ? null : num(field, path);
}

export function loadTimeseries(path: string): TimeseriesRow[] {
  const table = readTable(path);
  expectSchema(table, "timeseries v1", "t,population,xi2,zeta2", path);
  return table.rows.map((row) => ({
    t: num(row[0], path),
    population: num(row[1], path),
    xi2: numOrNull(row[2], path),
    zeta2: numOrNull(row[3], path),
  }));
}

export function loadSweep(path: string): SweepRow[] {
  const table = readTable(path);
  expectSchema(table, "sweep v1", "delta,steady_population,zeta2_inf,bound_state", path);
  return table.rows.map((row) => {
    if (row[3] !== "true" && row[3] !== "false") {
      throw new CsvError(`bound_state must be true/false, got "${row[3]}" in ${path}`);
    }
    return {
      delta: num(row[0], path),
      steadyPopulation: num(row[1], path),
      zeta2Inf: num(row[2], path),
      boundState: row[3] === "true",
    };
  });
}
