/**
 * Input schemas: the benchmark harness's results CSV and curve JSON files.
 * Parsing is strict; anything off-schema raises SchemaError naming the
 * offending column or field, and no figure is written.
 */

export class SchemaError extends Error {}

export const CSV_HEADER = [
  "instance_id", "seed", "algorithm", "env", "status", "nodes_total",
  "nodes_high_level", "solution_len", "subgoals_on_path", "wall_ms",
  "dead_end_fraction",
];

export interface ResultRow {
  instanceId: number;
  seed: string;
  algorithm: string;
  env: string;
  status: string;
  nodesTotal: number;
  nodesHighLevel: number;
  solutionLen: number | null;
  subgoalsOnPath: number | null;
  wallMs: number;
  deadEndFraction: number | null;
}

function intCell(value: string, column: string, line: number): number {
  const parsed = Number(value);
  if (!Number.isFinite(parsed) || !Number.isInteger(parsed)) {
    throw new SchemaError(`line ${line}: column ${column} must be an integer, got "${value}"`);
  }
  return parsed;
}

function optionalInt(value: string, column: string, line: number): number | null {
  return value === "" ? null : intCell(value, column, line);
}

export function parseResultsCsv(text: string): ResultRow[] {
  const lines = text.split(/\r?\n/).filter((line) => line.length > 0);
  if (lines.length === 0) {
    throw new SchemaError("empty file: no header row");
  }
  const header = lines[0].split(",");
  for (let i = 0; i < CSV_HEADER.length; i++) {
    if (header[i] !== CSV_HEADER[i]) {
      throw new SchemaError(
        `header column ${i + 1} must be "${CSV_HEADER[i]}", got "${header[i] ?? ""}"`);
    }
  }
  if (header.length !== CSV_HEADER.length) {
    throw new SchemaError(`unexpected extra column "${header[CSV_HEADER.length]}"`);
  }
  const rows: ResultRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const cells = lines[i].split(",");
    if (cells.length !== CSV_HEADER.length) {
      throw new SchemaError(`line ${i + 1}: expected ${CSV_HEADER.length} cells, got ${cells.length}`);
    }
    rows.push({
      instanceId: intCell(cells[0], "instance_id", i + 1),
      seed: cells[1],
      algorithm: cells[2],
      env: cells[3],
      status: cells[4],
      nodesTotal: intCell(cells[5], "nodes_total", i + 1),
      nodesHighLevel: intCell(cells[6], "nodes_high_level", i + 1),
      solutionLen: optionalInt(cells[7], "solution_len", i + 1),
      subgoalsOnPath: optionalInt(cells[8], "subgoals_on_path", i + 1),
      wallMs: intCell(cells[9], "wall_ms", i + 1),
      deadEndFraction: cells[10] === "" ? null : Number(cells[10]),
    });
  }
  if (rows.length === 0) {
    throw new SchemaError("no result rows");
  }
  return rows;
}

export interface Curve {
  algorithm: string;
  budgets: number[];
  rates: number[];
}

export interface PairedCurve {
  algorithm: string;
  budgets: number[];
  ratesTotal: number[];
  ratesHighLevelOnly: number[];
}

function checkRates(rates: unknown, budgets: number[], field: string, algorithm: string): number[] {
  if (!Array.isArray(rates) || rates.length !== budgets.length) {
    throw new SchemaError(`${algorithm}: field ${field} must align with budgets`);
  }
  for (let i = 0; i < rates.length; i++) {
    const rate = rates[i];
    if (typeof rate !== "number" || rate < 0 || rate > 1) {
      throw new SchemaError(`${algorithm}: field ${field}[${i}] must be in [0, 1]`);
    }
    if (i > 0 && rate < (rates[i - 1] as number)) {
      throw new SchemaError(`${algorithm}: field ${field} must be non-decreasing`);
    }
  }
  return rates as number[];
}

function checkBudgets(budgets: unknown, algorithm: string): number[] {
  if (!Array.isArray(budgets) || budgets.length === 0 ||
      budgets.some((b) => typeof b !== "number")) {
    throw new SchemaError(`${algorithm}: field budgets must be a number list`);
  }
  for (let i = 1; i < budgets.length; i++) {
    if ((budgets[i] as number) < (budgets[i - 1] as number)) {
      throw new SchemaError(`${algorithm}: field budgets must be ascending`);
    }
  }
  return budgets as number[];
}

export function parseCurvesJson(text: string): Curve[] {
  const data = JSON.parse(text);
  if (!Array.isArray(data) || data.length === 0) {
    throw new SchemaError("curves file must be a non-empty list");
  }
  return data.map((entry) => {
    const algorithm = entry.algorithm;
    if (typeof algorithm !== "string") {
      throw new SchemaError("field algorithm missing from a curve entry");
    }
    const budgets = checkBudgets(entry.budgets, algorithm);
    return { algorithm, budgets, rates: checkRates(entry.rates, budgets, "rates", algorithm) };
  });
}

export function parsePairedJson(text: string): PairedCurve[] {
  const data = JSON.parse(text);
  if (!Array.isArray(data) || data.length === 0) {
    throw new SchemaError("paired-curves file must be a non-empty list");
  }
  return data.map((entry) => {
    const algorithm = entry.algorithm;
    if (typeof algorithm !== "string") {
      throw new SchemaError("field algorithm missing from a paired entry");
    }
    const budgets = checkBudgets(entry.budgets, algorithm);
    return {
      algorithm,
      budgets,
      ratesTotal: checkRates(entry.rates_total, budgets, "rates_total", algorithm),
      ratesHighLevelOnly: checkRates(
        entry.rates_high_level_only, budgets, "rates_high_level_only", algorithm),
    };
  });
}

export function distinctAlgorithms(rows: { algorithm: string }[]): string[] {
  return [...new Set(rows.map((row) => row.algorithm))].sort();
}
