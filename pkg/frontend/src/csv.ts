/**
 * Strict reader for the solver-trace CSV schema.
 *
 * The harness writes `problem,algorithm,trial,iter,error,residual,lambda,
 * theta,elapsed_ms` with plain unquoted cells; a failed run is terminated by
 * a marker row whose error cell is the literal `failed` (parsed as NaN here).
 */

export const CSV_HEADER = [
  "problem",
  "algorithm",
  "trial",
  "iter",
  "error",
  "residual",
  "lambda",
  "theta",
  "elapsed_ms",
] as const;

export const FAILED_SENTINEL = "failed";

export interface ResultRow {
  problem: string;
  algorithm: string;
  trial: number;
  iter: number;
  error: number; // NaN marks the failed-run sentinel
  residual: number;
  lambda: number;
  theta: number;
  elapsedMs: number;
}

export class CsvFormatError extends Error {}

function parseFloatCell(cell: string, line: number, field: string): number {
  if (cell === "nan" || cell === "-nan") {
    return NaN;
  }
  const value = Number(cell);
  // Number("") is 0 and Number("abc") is NaN; insist on real numerals
  if (cell.trim() === "" || Number.isNaN(value)) {
    throw new CsvFormatError(`line ${line}: ${field} is not a number: ${JSON.stringify(cell)}`);
  }
  return value;
}

function parseIntCell(cell: string, line: number, field: string): number {
  if (!/^-?\d+$/.test(cell)) {
    throw new CsvFormatError(`line ${line}: ${field} is not an integer: ${JSON.stringify(cell)}`);
  }
  return Number(cell);
}

export function parseResultsCsv(text: string): ResultRow[] {
  const lines = text.split("\n");
  while (lines.length > 0 && lines[lines.length - 1] === "") {
    lines.pop();
  }
  if (lines.length === 0) {
    throw new CsvFormatError(`empty file; expected header ${CSV_HEADER.join(",")}`);
  }
  const header = lines[0].replace(/\r$/, "");
  if (header !== CSV_HEADER.join(",")) {
    throw new CsvFormatError(
      `wrong header ${JSON.stringify(header)}; expected ${JSON.stringify(CSV_HEADER.join(","))}`,
    );
  }
  const rows: ResultRow[] = [];
  for (let i = 1; i < lines.length; i++) {
    const lineNo = i + 1;
    const cells = lines[i].replace(/\r$/, "").split(",");
    if (cells.length !== CSV_HEADER.length) {
      throw new CsvFormatError(
        `line ${lineNo}: expected ${CSV_HEADER.length} fields, got ${cells.length}`,
      );
    }
    rows.push({
      problem: cells[0],
      algorithm: cells[1],
      trial: parseIntCell(cells[2], lineNo, "trial"),
      iter: parseIntCell(cells[3], lineNo, "iter"),
      error: cells[4] === FAILED_SENTINEL ? NaN : parseFloatCell(cells[4], lineNo, "error"),
      residual: parseFloatCell(cells[5], lineNo, "residual"),
      lambda: parseFloatCell(cells[6], lineNo, "lambda"),
      theta: parseFloatCell(cells[7], lineNo, "theta"),
      elapsedMs: parseFloatCell(cells[8], lineNo, "elapsed_ms"),
    });
  }
  return rows;
}
